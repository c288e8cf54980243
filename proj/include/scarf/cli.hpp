// Copyright 2026 The scarf-rotor Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "io.hpp"
#include "model.hpp"
#include "verify.hpp"

namespace scarf::cli {

using io::json;

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kInvalidParameters = 2,
};

struct Options {
    std::optional<int> t;
    int m = 0;
    std::vector<double> b{0.0};
    double b_rot = 1.0;
    double planck_scale = 1.0;
    std::optional<int> t_max;
    int levels = 5;
    int basis_size = 64;
    int order = 0;
    std::string convention = "paper";
    int ntheta = 181;
    int nphi = 72;
    std::string format = "json";
    std::string out;
    std::string edm_measure = "absorbed";
    std::string quantity = "psi";
    double tol_residual = 1e-10;
    double tol_eigen = 1e-6;
    double tol_ortho = 1e-10;
    double tol_similarity = 1e-10;
};

/// One tolerance comparison inside a verify report.
struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline json to_json(const Check &c) {
    return {{"name", c.name},
            {"value", c.value},
            {"tolerance", c.tolerance},
            {"pass", c.pass}};
}

namespace detail {

inline std::string join_doubles(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + io::format_double(v[i]);
    }
    return s;
}

inline std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline int require_t(const Options &o, const char *cmd) {
    if (!o.t) {
        throw CLI::RequiredError(std::string("--t (needed by ") + cmd + ")");
    }
    return *o.t;
}

inline Check below(std::string name, double value, double tol) {
    return {std::move(name), value, tol, value < tol};
}

class Emitter {
  public:
    Emitter(const Options &o, std::ostream &out) : opts_(o), out_(out) {}

    void json_data(json data, io::RunManifest m) const {
        if (!opts_.out.empty()) {
            data["manifest"] =
                std::filesystem::path(io::manifest_path(opts_.out)).filename().string();
        }
        text(io::dump(data), std::move(m));
    }

    void text(const std::string &data, io::RunManifest m) const {
        if (opts_.out.empty()) {
            out_ << data;
            return;
        }
        write_file(opts_.out, data);
        m.timestamp = io::iso8601_now();
        write_file(io::manifest_path(opts_.out), io::dump(io::to_json(m)));
    }

  private:
    static void write_file(const std::string &path, const std::string &data) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write '" + path + "'");
        }
        f << data;
    }

    const Options &opts_;
    std::ostream &out_;
};

inline io::RunManifest manifest(const std::string &command, const Options &o,
                                int order) {
    io::RunManifest m;
    m.command = command;
    if (o.t) {
        m.parameters["t"] = std::to_string(*o.t);
    }
    m.parameters["m"] = std::to_string(o.m);
    m.parameters["b"] = join_doubles(o.b);
    m.parameters["format"] = o.format;
    m.quadrature_order = order;
    m.convention = o.convention;
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int cmd_spectrum(const Options &o, std::ostream &out) {
    const auto cfg = model::RotorConfig::make(o.b_rot, o.planck_scale);
    const int t_max = o.t_max.value_or(5);
    const auto rows = io::spectrum_table(t_max, cfg);
    auto m = detail::manifest("spectrum", o, 0);
    m.parameters["b_rot"] = io::format_double(o.b_rot);
    m.parameters["planck_scale"] = io::format_double(o.planck_scale);
    m.parameters["t_max"] = std::to_string(t_max);
    const detail::Emitter e(o, out);
    if (o.format == "csv") {
        e.text(io::spectrum_csv(rows), m);
    } else {
        e.json_data(io::spectrum_json(rows, cfg), m);
    }
    return kOk;
}

inline int cmd_state(const Options &o, std::ostream &out) {
    const model::StateLabel s(detail::require_t(o, "state"), o.m);
    const double b = o.b.front();
    const model::ScarfParams p{o.m, b};
    model::require_valid(p);
    const auto cfg = model::RotorConfig::make(o.b_rot, o.planck_scale);
    const model::ScarfState st(s, b, o.order);
    json j{{"t", s.t()},
           {"m", s.m_quantum()},
           {"n", s.n()},
           {"b", b},
           {"epsilon", s.epsilon()},
           {"energy", model::energy(s.t(), cfg)},
           {"a", p.a()},
           {"jacobi_alpha", p.jacobi_alpha()},
           {"jacobi_beta", p.jacobi_beta()},
           {"norm_constant", st.norm()},
           {"dirichlet_compatible", verify::dirichlet_compatible(p)}};
    detail::Emitter(o, out).json_data(j, detail::manifest("state", o, st.order()));
    return kOk;
}

inline int cmd_decompose(const Options &o, std::ostream &out) {
    const model::StateLabel s(detail::require_t(o, "decompose"), o.m);
    const auto d = analysis::decompose(s, o.b.front(),
                                       model::convention_from_string(o.convention),
                                       o.order);
    detail::Emitter(o, out).json_data(io::to_json(d),
                                      detail::manifest("decompose", o, d.quadrature_order));
    return kOk;
}

inline int cmd_parity(const Options &o, std::ostream &out) {
    const model::StateLabel s(detail::require_t(o, "parity"), o.m);
    const double b = o.b.front();
    const auto r = analysis::parity_mixing(s, b, o.order);
    json j{{"t", s.t()}, {"m", s.m_quantum()}, {"b", b}};
    j.update(io::to_json(r));
    const int q = o.order > 0 ? o.order : specfun::default_order(s.t());
    detail::Emitter(o, out).json_data(j, detail::manifest("parity", o, q));
    return kOk;
}

inline int cmd_dipole(const Options &o, std::ostream &out) {
    const model::StateLabel s(detail::require_t(o, "dipole"), o.m);
    const double b = o.b.front();
    const auto measure = analysis::dipole_measure_from_string(o.edm_measure);
    const double d = analysis::dipole_moment(s, b, measure, o.order);
    json j{{"t", s.t()},
           {"m", s.m_quantum()},
           {"b", b},
           {"measure", std::string(analysis::to_string(measure))},
           {"d_e", d}};
    const int q = o.order > 0 ? o.order : specfun::default_order(s.t());
    auto m = detail::manifest("dipole", o, q);
    m.parameters["edm_measure"] = o.edm_measure;
    detail::Emitter(o, out).json_data(j, m);
    return kOk;
}

inline int cmd_density(const Options &o, std::ostream &out) {
    const model::StateLabel s(detail::require_t(o, "density"), o.m);
    const auto quantity = analysis::density_quantity_from_string(o.quantity);
    const auto g = analysis::density_map(s, o.b.front(), o.ntheta, o.nphi,
                                         quantity, o.order);
    const int q = o.order > 0 ? o.order : specfun::default_order(s.t());
    auto m = detail::manifest("density", o, q);
    m.parameters["ntheta"] = std::to_string(o.ntheta);
    m.parameters["nphi"] = std::to_string(o.nphi);
    m.parameters["quantity"] = o.quantity;
    const detail::Emitter e(o, out);
    if (o.format == "csv") {
        m.extra = io::to_json(g.metadata);
        e.text(io::density_csv(g), m);
    } else {
        e.json_data(io::density_json(g), m);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOutcome {
    json report;
    std::vector<Check> checks;
    int order = 0;
};

inline VerifyOutcome verify_residual(const Options &o) {
    VerifyOutcome v;
    v.order = o.order > 0 ? o.order : 64;
    json rows = json::array();
    json skipped = json::array();
    for (double b : o.b) {
        std::vector<model::StateLabel> states;
        if (o.t) {
            states.emplace_back(*o.t, o.m);
        } else {
            const int t_max = o.t_max.value_or(5);
            for (int t = 0; t <= t_max; ++t) {
                for (int M = -t; M <= t; ++M) {
                    states.emplace_back(t, M);
                }
            }
        }
        for (const auto &s : states) {
            const model::ScarfParams p{s.m_quantum(), b};
            if (!o.t && !model::validate_params(p)) {
                skipped.push_back({{"t", s.t()}, {"m", s.m_quantum()}, {"b", b}});
                continue;
            }
            const auto r = verify::hamiltonian_residual(s, b, v.order);
            rows.push_back(io::to_json(r));
            v.checks.push_back(detail::below(
                "residual[t=" + std::to_string(s.t()) + ",m=" +
                    std::to_string(s.m_quantum()) + ",b=" + detail::short_double(b) + "]",
                r.residual_per_norm, o.tol_residual));
        }
    }
    v.report = {{"subtask", "residual"}, {"states", rows}, {"skipped", skipped}};
    return v;
}

inline VerifyOutcome verify_eigen(const Options &o) {
    VerifyOutcome v;
    json rows = json::array();
    for (double b : o.b) {
        const auto r = verify::solve_eigen_galerkin(o.m, b, o.basis_size, o.levels, o.order);
        v.order = r.quadrature_order;
        rows.push_back(io::to_json(r));
        const std::string tag = "[b=" + detail::short_double(b) + "]";
        const int m = std::abs(o.m);
        for (int k = 0; k < o.levels; ++k) {
            const double tk = m + k;
            const double level = tk * (tk + 1.0);
            v.checks.push_back(detail::below(
                "rel_error" + tag + "[level " + std::to_string(k) + "]",
                r.deviations[k] / (level > 0.0 ? level : 1.0), o.tol_eigen));
        }
        v.checks.push_back(
            detail::below("convergence_shift" + tag, r.convergence_shift, 1e-8));
    }
    v.report = {{"subtask", "eigen"}, {"reports", rows}};
    return v;
}

inline VerifyOutcome verify_ortho(const Options &o) {
    VerifyOutcome v;
    json rows = json::array();
    const int t_max = o.t_max.value_or(8);
    for (double b : o.b) {
        const auto r = verify::orthogonality_check(o.m, b, t_max, o.order);
        v.order = r.quadrature_order;
        rows.push_back(io::to_json(r));
        v.checks.push_back(detail::below("gram_deviation[b=" + io::format_double(b) + "]",
                                         r.max_deviation, o.tol_ortho));
    }
    v.report = {{"subtask", "ortho"}, {"reports", rows}};
    return v;
}

inline VerifyOutcome verify_isospectral(const Options &o) {
    VerifyOutcome v;
    const auto r = verify::isospectrality_report(o.m, o.b, o.levels, o.basis_size,
                                                 o.order, o.tol_eigen);
    v.order = r.per_b.front().quadrature_order;
    for (int k = 0; k < o.levels; ++k) {
        const std::string lv = "[level " + std::to_string(k) + "]";
        v.checks.push_back(detail::below("spread" + lv, r.spread[k], o.tol_eigen));
        v.checks.push_back(
            detail::below("rel_error" + lv, r.max_rel_error[k], o.tol_eigen));
    }
    v.report = io::to_json(r);
    v.report["subtask"] = "isospectral";
    return v;
}

inline VerifyOutcome verify_similarity(const Options &o) {
    VerifyOutcome v;
    json rows = json::array();
    const int J = o.t.value_or(std::abs(o.m));
    for (double b : o.b) {
        const auto r = verify::similarity_check(J, o.m, b, o.order);
        v.order = r.quadrature_order;
        rows.push_back(io::to_json(r));
        const std::string tag = "[b=" + detail::short_double(b) + "]";
        v.checks.push_back(
            detail::below("casimir_residual" + tag, r.residual, o.tol_similarity));
        if (r.hamiltonian_residual) {
            v.checks.push_back(detail::below("hamiltonian_residual" + tag,
                                             *r.hamiltonian_residual,
                                             o.tol_similarity));
        }
    }
    v.report = {{"subtask", "similarity"}, {"reports", rows}};
    return v;
}

inline int cmd_verify(const std::string &subtask, const Options &o,
                      std::ostream &out, std::ostream &err) {
    VerifyOutcome v;
    if (subtask == "residual") {
        v = verify_residual(o);
    } else if (subtask == "eigen") {
        v = verify_eigen(o);
    } else if (subtask == "ortho") {
        v = verify_ortho(o);
    } else if (subtask == "isospectral") {
        v = verify_isospectral(o);
    } else {
        v = verify_similarity(o);
    }
    const bool pass = std::all_of(v.checks.begin(), v.checks.end(),
                                  [](const Check &c) { return c.pass; });
    json checks = json::array();
    for (const auto &c : v.checks) {
        checks.push_back(to_json(c));
    }
    v.report["checks"] = checks;
    v.report["pass"] = pass;
    auto m = detail::manifest("verify " + subtask, o, v.order);
    m.parameters["levels"] = std::to_string(o.levels);
    m.parameters["basis_size"] = std::to_string(o.basis_size);
    detail::Emitter(o, out).json_data(v.report, m);
    for (const auto &c : v.checks) {
        if (!c.pass) {
            err << "FAIL " << c.name << ": value " << io::format_double(c.value)
                << " >= tolerance " << io::format_double(c.tolerance) << " (excess "
                << io::format_double(c.value - c.tolerance) << ")\n";
        }
    }
    return pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
    CLI::App app{"Scarf-I perturbed rigid rotator: spectra, states and checks",
                 "scarf-rotor"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file; command-line flags override it");
    app.set_version_flag("--version", io::kVersion);

    Options o;
    auto t_opt = app.add_option("--t", "quantum number t (or J)");
    app.add_option("--m", o.m, "magnetic quantum number M");
    app.add_option("--b", o.b, "perturbation strength(s), comma separated")
        ->delimiter(',')
        ->expected(1, -1);
    app.add_option("--b-rot", o.b_rot, "rotational constant");
    app.add_option("--planck-scale", o.planck_scale, "Planck constant scale");
    auto tmax_opt = app.add_option("--t-max", "largest t");
    app.add_option("--levels", o.levels, "number of Galerkin levels")
        ->check(CLI::PositiveNumber);
    app.add_option("--basis-size", o.basis_size, "Galerkin basis size")
        ->check(CLI::PositiveNumber);
    app.add_option("--order", o.order, "quadrature order (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--convention", o.convention, "coefficient convention")
        ->check(CLI::IsMember({"paper", "normalized"}));
    app.add_option("--ntheta", o.ntheta, "theta samples")->check(CLI::Range(2, 1 << 20));
    app.add_option("--nphi", o.nphi, "phi samples")->check(CLI::Range(2, 1 << 20));
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out, "output path (a manifest is written next to it)");
    app.add_option("--edm-measure", o.edm_measure, "dipole integration measure")
        ->check(CLI::IsMember({"absorbed", "literal"}));
    app.add_option("--quantity", o.quantity, "density quantity")
        ->check(CLI::IsMember({"psi", "phi", "free"}));
    app.add_option("--tol-residual", o.tol_residual);
    app.add_option("--tol-eigen", o.tol_eigen);
    app.add_option("--tol-ortho", o.tol_ortho);
    app.add_option("--tol-similarity", o.tol_similarity);

    auto *spectrum = app.add_subcommand("spectrum", "level and frequency table");
    auto *state = app.add_subcommand("state", "quantum numbers and normalization of a state");
    auto *decompose = app.add_subcommand("decompose", "expansion over rescaled harmonics");
    auto *parity = app.add_subcommand("parity", "even/odd split of a state");
    auto *dipole = app.add_subcommand("dipole", "electric dipole expectation value");
    auto *density = app.add_subcommand("density", "probability density grid");
    auto *verify_cmd = app.add_subcommand("verify", "numerical checks; exit 1 on failure");
    verify_cmd->require_subcommand(1);
    std::vector<CLI::App *> verify_subs;
    for (const char *name : {"residual", "eigen", "ortho", "isospectral", "similarity"}) {
        verify_subs.push_back(verify_cmd->add_subcommand(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        int v = 0;
        if (t_opt->count() > 0) {
            o.t = t_opt->as<int>();
        }
        if (tmax_opt->count() > 0) {
            o.t_max = tmax_opt->as<int>();
        }
        if (*spectrum) {
            return cmd_spectrum(o, out);
        }
        if (*state) {
            return cmd_state(o, out);
        }
        if (*decompose) {
            return cmd_decompose(o, out);
        }
        if (*parity) {
            return cmd_parity(o, out);
        }
        if (*dipole) {
            return cmd_dipole(o, out);
        }
        if (*density) {
            return cmd_density(o, out);
        }
        for (auto *sub : verify_subs) {
            if (*sub) {
                v = cmd_verify(sub->get_name(), o, out, err);
            }
        }
        return v;
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kInvalidParameters;
    }
}

} // namespace scarf::cli

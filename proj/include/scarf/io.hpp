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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "model.hpp"
#include "verify.hpp"

/**
 * @file io.hpp
 * Structured records for the command-line layer: JSON objects for every
 * report, the density CSV schema and run manifests.
 */
namespace scarf::io {

using json = nlohmann::ordered_json;

inline constexpr const char *kVersion = "0.1.0";

/// 17 significant digits, lossless for IEEE doubles.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Run manifest

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string version = kVersion;
    int quadrature_order = 0;
    std::string convention;
    std::string timestamp;
    json extra = json::object();
};

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json to_json(const RunManifest &m) {
    json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["version"] = m.version;
    j["quadrature_order"] = m.quadrature_order;
    j["convention"] = m.convention;
    j["timestamp"] = m.timestamp;
    if (!m.extra.empty()) {
        j["metadata"] = m.extra;
    }
    return j;
}

inline RunManifest manifest_from_json(const json &j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.version = j.at("version").get<std::string>();
    m.quadrature_order = j.at("quadrature_order").get<int>();
    m.convention = j.at("convention").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    if (j.contains("metadata")) {
        m.extra = j.at("metadata");
    }
    return m;
}

/// Sidecar manifest path for a data file.
inline std::string manifest_path(const std::string &data_path) {
    return data_path + ".manifest.json";
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const model::ValidityReport &r) {
    return {{"valid", r.valid}, {"violations", r.violations}};
}

inline json coefficient_json(const std::complex<double> &c) {
    if (c.imag() == 0.0) {
        return c.real();
    }
    return json{{"re", c.real()}, {"im", c.imag()}};
}

inline json to_json(const analysis::DecompositionResult &d) {
    json coeffs = json::object();
    for (const auto &[J, c] : d.coefficients) {
        coeffs[std::to_string(J)] = coefficient_json(c);
    }
    return {{"t", d.t},
            {"m", d.m_quantum},
            {"b", d.b},
            {"convention", std::string(model::to_string(d.convention))},
            {"coefficients", coeffs},
            {"residual", d.residual},
            {"guard_band_max", d.guard_band_max},
            {"quadrature_order", d.quadrature_order}};
}

inline analysis::DecompositionResult decomposition_from_json(const json &j) {
    analysis::DecompositionResult d;
    d.t = j.at("t").get<int>();
    d.m_quantum = j.at("m").get<int>();
    d.b = j.at("b").get<double>();
    d.convention = model::convention_from_string(j.at("convention").get<std::string>());
    for (const auto &[k, v] : j.at("coefficients").items()) {
        std::complex<double> c;
        if (v.is_object()) {
            c = {v.at("re").get<double>(), v.at("im").get<double>()};
        } else {
            c = v.get<double>();
        }
        d.coefficients[std::stoi(k)] = c;
    }
    d.residual = j.at("residual").get<double>();
    d.guard_band_max = j.at("guard_band_max").get<double>();
    d.quadrature_order = j.at("quadrature_order").get<int>();
    return d;
}

inline json to_json(const analysis::ParityReport &p) {
    return {{"even_fraction", p.even_fraction},
            {"odd_fraction", p.odd_fraction},
            {"reflection_overlap", p.reflection_overlap},
            {"basis", p.basis}};
}

inline json to_json(const verify::ResidualReport &r) {
    return {{"t", r.state.t()},
            {"m", r.state.m_quantum()},
            {"b", r.b},
            {"residual", r.residual},
            {"residual_per_norm", r.residual_per_norm},
            {"quadrature_order", r.quadrature_order}};
}

inline json to_json(const verify::EigReport &r) {
    return {{"m", r.m_quantum},
            {"b", r.b},
            {"basis_size", r.basis_size},
            {"eigenvalues", r.eigenvalues},
            {"deviations", r.deviations},
            {"max_offdiag_overlap", r.max_offdiag_overlap},
            {"quadrature_order", r.quadrature_order},
            {"symmetry_error", r.symmetry_error},
            {"relative_symmetry_error", r.relative_symmetry_error},
            {"endpoint_exponents", {r.endpoint_exponent_plus, r.endpoint_exponent_minus}},
            {"converged", r.converged},
            {"convergence_shift", r.convergence_shift}};
}

inline json to_json(const verify::OrthogonalityReport &r) {
    return {{"m", r.m_quantum},
            {"b", r.b},
            {"t_max", r.t_max},
            {"max_deviation", r.max_deviation},
            {"quadrature_order", r.quadrature_order}};
}

inline json to_json(const verify::SimilarityReport &r) {
    json j{{"J", r.J},
           {"m", r.m_quantum},
           {"b", r.b},
           {"eigenvalue", r.eigenvalue},
           {"rayleigh_quotient", r.rayleigh_quotient},
           {"residual", r.residual},
           {"quadrature_order", r.quadrature_order}};
    j["hamiltonian_residual"] =
        r.hamiltonian_residual ? json(*r.hamiltonian_residual) : json(nullptr);
    return j;
}

inline json to_json(const verify::IsospectralityReport &r) {
    json rows = json::array();
    for (const auto &e : r.per_b) {
        rows.push_back(to_json(e));
    }
    return {{"m", r.m_quantum},
            {"levels", r.n_levels},
            {"basis_size", r.basis_size},
            {"tolerance", r.tolerance},
            {"per_b", rows},
            {"spread", r.spread},
            {"max_rel_error", r.max_rel_error},
            {"pass", r.pass}};
}

// ---------------------------------------------------------------------------
// Spectrum table

struct SpectrumRow {
    int t = 0;
    double energy = 0.0;
    int degeneracy = 1;
    std::optional<double> frequency;
};

inline std::vector<SpectrumRow> spectrum_table(int t_max,
                                               const model::RotorConfig &cfg) {
    if (t_max < 0) {
        throw model::ParameterError("spectrum: t_max must be non-negative");
    }
    std::vector<SpectrumRow> rows;
    for (int t = 0; t <= t_max; ++t) {
        SpectrumRow r{t, model::energy(t, cfg), 2 * t + 1, std::nullopt};
        if (t >= 1) {
            r.frequency = model::transition_frequency(t, cfg);
        }
        rows.push_back(r);
    }
    return rows;
}

inline std::string spectrum_csv(const std::vector<SpectrumRow> &rows) {
    std::string out = "t,energy,degeneracy,frequency\n";
    for (const auto &r : rows) {
        out += std::to_string(r.t) + "," + format_double(r.energy) + "," +
               std::to_string(r.degeneracy) + "," +
               (r.frequency ? format_double(*r.frequency) : std::string()) + "\n";
    }
    return out;
}

inline json spectrum_json(const std::vector<SpectrumRow> &rows,
                          const model::RotorConfig &cfg) {
    json levels = json::array();
    for (const auto &r : rows) {
        levels.push_back({{"t", r.t},
                          {"energy", r.energy},
                          {"degeneracy", r.degeneracy},
                          {"frequency", r.frequency ? json(*r.frequency) : json(nullptr)}});
    }
    return {{"rotational_constant", cfg.rotational_constant},
            {"planck_scale", cfg.planck_scale},
            {"levels", levels}};
}

// ---------------------------------------------------------------------------
// Density grids

inline json to_json(const analysis::DensityMetadata &m) {
    return {{"t", m.t},
            {"m", m.m_quantum},
            {"b", m.b},
            {"convention", std::string(model::to_string(m.convention))},
            {"quantity", std::string(analysis::to_string(m.quantity))},
            {"asymmetry", m.asymmetry}};
}

inline analysis::DensityMetadata density_metadata_from_json(const json &j) {
    analysis::DensityMetadata m;
    m.t = j.at("t").get<int>();
    m.m_quantum = j.at("m").get<int>();
    m.b = j.at("b").get<double>();
    m.convention = model::convention_from_string(j.at("convention").get<std::string>());
    m.quantity = analysis::density_quantity_from_string(j.at("quantity").get<std::string>());
    m.asymmetry = j.at("asymmetry").get<double>();
    return m;
}

/// CSV schema: header `theta,phi,density`, radians, row-major over theta then phi.
inline std::string density_csv(const analysis::DensityGrid &g) {
    std::string out = "theta,phi,density\n";
    for (std::size_t i = 0; i < g.theta.size(); ++i) {
        for (std::size_t j = 0; j < g.phi.size(); ++j) {
            out += format_double(g.theta[i]);
            out += ',';
            out += format_double(g.phi[j]);
            out += ',';
            out += format_double(g.at(i, j));
            out += '\n';
        }
    }
    return out;
}

/// Parses the density CSV; metadata is not part of this schema.
inline analysis::DensityGrid parse_density_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "theta,phi,density") {
        throw std::runtime_error("density CSV: bad header");
    }
    std::vector<std::array<double, 3>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::array<double, 3> r{};
        std::size_t pos = 0;
        for (int k = 0; k < 3; ++k) {
            const auto next = line.find(',', pos);
            if ((k < 2) != (next != std::string::npos)) {
                throw std::runtime_error("density CSV: expected 3 columns");
            }
            r[k] = std::stod(line.substr(pos, next - pos));
            pos = next + 1;
        }
        rows.push_back(r);
    }
    analysis::DensityGrid g;
    for (const auto &r : rows) {
        if (g.theta.empty() || g.theta.back() != r[0]) {
            g.theta.push_back(r[0]);
        }
        if (g.theta.size() == 1) {
            g.phi.push_back(r[1]);
        }
        g.values.push_back(r[2]);
    }
    if (g.theta.size() * g.phi.size() != g.values.size()) {
        throw std::runtime_error("density CSV: grid is not rectangular");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][1] != g.phi[i % g.phi.size()]) {
            throw std::runtime_error("density CSV: inconsistent phi grid");
        }
    }
    return g;
}

inline json density_json(const analysis::DensityGrid &g) {
    json values = json::array();
    for (std::size_t i = 0; i < g.theta.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < g.phi.size(); ++j) {
            row.push_back(g.at(i, j));
        }
        values.push_back(std::move(row));
    }
    return {{"metadata", to_json(g.metadata)},
            {"theta", g.theta},
            {"phi", g.phi},
            {"values", values}};
}

inline analysis::DensityGrid parse_density_json(const json &j) {
    analysis::DensityGrid g;
    g.metadata = density_metadata_from_json(j.at("metadata"));
    g.theta = j.at("theta").get<std::vector<double>>();
    g.phi = j.at("phi").get<std::vector<double>>();
    for (const auto &row : j.at("values")) {
        if (row.size() != g.phi.size()) {
            throw std::runtime_error("density JSON: ragged values");
        }
        for (const auto &v : row) {
            g.values.push_back(v.get<double>());
        }
    }
    if (g.values.size() != g.theta.size() * g.phi.size()) {
        throw std::runtime_error("density JSON: shape mismatch");
    }
    return g;
}

} // namespace scarf::io

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
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <scarf/analysis.hpp>
#include <scarf/specfun.hpp>
#include <scarf/verify.hpp>

using namespace scarf;
using model::Convention;
using model::StateLabel;

namespace {

int failures = 0;

void report(int id, const char *title, bool pass, const std::string &detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
    failures += pass ? 0 : 1;
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

bool isospectral(double *max_rel, double *max_spread, double *seconds) {
    const auto start = std::chrono::steady_clock::now();
    const auto rep = verify::isospectrality_report(1, {0.0, 0.2, 0.45, 0.7}, 5, 64, 96, 1e-6);
    *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *max_rel = 0.0;
    *max_spread = 0.0;
    for (int k = 0; k < 5; ++k) {
        *max_rel = std::max(*max_rel, rep.max_rel_error[k]);
        *max_spread = std::max(*max_spread, rep.spread[k]);
    }
    return *max_rel < 1e-6 && *max_spread < 1e-6 && *seconds < 5.0;
}

} // namespace

int main() {
    double rel = 0.0;
    double spread = 0.0;
    double secs = 0.0;
    const bool c1 = isospectral(&rel, &spread, &secs);
    report(1, "Galerkin isospectrality at M=1", c1,
           fmt("max rel error %.3g, max spread %.3g, %.2f s", rel, spread, secs));

    {
        double worst = 0.0;
        for (double b : {0.0, 0.45}) {
            for (int t = 0; t <= 5; ++t) {
                for (int M = -t; M <= t; ++M) {
                    if (!model::validate_params({M, b})) {
                        continue;
                    }
                    worst = std::max(worst, verify::hamiltonian_residual(StateLabel(t, M), b, 64)
                                                .residual_per_norm);
                }
            }
        }
        report(2, "Closed-form Hamiltonian residuals", worst < 1e-10,
               fmt("max residual %.3g (order 64)", worst));
    }

    {
        double worst_c = 0.0;
        double worst_r = 0.0;
        for (double b : {0.1, 0.45, 0.9}) {
            const auto d = analysis::decompose(StateLabel(2, 1), b, Convention::paper);
            worst_c = std::max({worst_c, std::abs(d.coefficients.at(1) + b),
                                std::abs(d.coefficients.at(2) - 2.0 / 3.0)});
            worst_r = std::max(worst_r, d.residual);
        }
        report(3, "t=2, M=1 coefficients -b and 2/3", worst_c < 1e-10 && worst_r < 1e-9,
               fmt("max coefficient error %.3g, max residual %.3g", worst_c, worst_r));
    }

    {
        double worst = 0.0;
        const int n = 1001;
        for (int t = 0; t <= 5; ++t) {
            for (int M = -t; M <= t; ++M) {
                const double ratio = specfun::jacobi_form_ratio(t, M);
                for (int i = 0; i < n; ++i) {
                    const double th = -0.5 * std::numbers::pi + (i + 1) * std::numbers::pi / (n + 1);
                    const double u = model::wavefunction_u(StateLabel(t, M), 0.0, th);
                    const double ref = ratio * specfun::assoc_legendre(t, M, std::sin(th));
                    worst = std::max(worst, std::abs(u / std::sqrt(std::cos(th)) - ref));
                }
            }
        }
        report(4, "b=0 reduction to associated Legendre", worst < 1e-12,
               fmt("max pointwise error %.3g on 1001 points", worst));
    }

    {
        // Beta-function oracle: mean of x under (1-x)^a (1+x)^c is 2B(a+1,c+2)/B(a+1,c+1) - 1.
        auto beta_mean = [](double a, double c) {
            return 2.0 * specfun::beta(a + 1.0, c + 2.0) / specfun::beta(a + 1.0, c + 1.0) - 1.0;
        };
        double oracle_err = 0.0;
        double quad_err = 0.0;
        for (double b : {0.1, 0.45, 0.9}) {
            oracle_err = std::max({oracle_err, std::abs(beta_mean(-b, b) - b),
                                   std::abs(beta_mean(1.0 - b, 1.0 + b) - 0.5 * b)});
            quad_err = std::max(
                {quad_err, std::abs(analysis::dipole_moment(StateLabel(0, 0), b) - b),
                 std::abs(analysis::dipole_moment(StateLabel(1, 1), b) - 0.5 * b)});
        }
        double zero = 0.0;
        double smallest = 1e300;
        for (int t = 0; t <= 3; ++t) {
            for (int M = -t; M <= t; ++M) {
                zero = std::max(zero, std::abs(analysis::dipole_moment(StateLabel(t, M), 0.0)));
                if (t == 0 || M != 0) {
                    smallest = std::min(smallest,
                                        std::abs(analysis::dipole_moment(StateLabel(t, M), 0.45)));
                }
            }
        }
        const bool pass = oracle_err < 1e-12 && quad_err < 1e-10 && zero < 1e-12 && smallest > 1e-3;
        report(5, "Dipole moments", pass,
               fmt("oracle %.3g, quadrature %.3g, ", oracle_err, quad_err) +
                   fmt("max |d_e(b=0)| %.3g, min |d_e(b=0.45)| %.4g over t<=3 with M!=0 or t=0",
                       zero, smallest));
    }

    {
        double lo = 1.0;
        double pure = 1.0;
        for (int t = 0; t <= 3; ++t) {
            for (int M = -t; M <= t; ++M) {
                const auto m = analysis::parity_mixing(StateLabel(t, M), 0.45);
                lo = std::min({lo, m.even_fraction, m.odd_fraction});
                const auto z = analysis::parity_mixing(StateLabel(t, M), 0.0);
                pure = std::min(pure, std::abs(std::max(z.even_fraction, z.odd_fraction) - 1.0) < 1e-10
                                          ? 1.0
                                          : 0.0);
            }
        }
        report(6, "Parity loss", lo > 0.001 && pure == 1.0,
               fmt("smallest fraction at b=0.45 %.4g, b=0 pure: ", lo) +
                   (pure == 1.0 ? "yes" : "no"));
    }

    {
        bool ok = true;
        for (int t = 0; t <= 4; ++t) {
            for (int M : {t, -t}) {
                const auto d = analysis::decompose(StateLabel(t, M), 0.45, Convention::paper);
                int above = 0;
                for (const auto &[J, c] : d.coefficients) {
                    above += std::abs(c) > 1e-10 ? 1 : 0;
                }
                ok = ok && above == 1;
            }
        }
        report(7, "Maximal |M| states have one coefficient", ok, "t = |M| <= 4, b = 0.45");
    }

    {
        double worst = 0.0;
        for (auto [M, b] : {std::pair{0, 0.9}, {1, 0.45}, {2, 0.7}}) {
            worst = std::max(worst, verify::orthogonality_check(M, b, 8).max_deviation);
        }
        report(8, "Orthonormality audit", worst < 1e-10, fmt("max Gram deviation %.3g", worst));
    }

    {
        const double off = verify::max_offdiagonal(verify::potential_matrix_free_basis(1, 0.45, 16));
        report(9, "Potential not diagonal in the free basis", off > 1e-6 && c1,
               fmt("max off-diagonal %.4g; isospectrality check ", off) + (c1 ? "passes" : "fails"));
    }

    return failures == 0 ? 0 : 1;
}

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jet.hpp"
#include "model.hpp"
#include "specfun.hpp"

/**
 * @file verify.hpp
 * Checks of the perturbed rotator that do not rely on the closed-form
 * spectrum: Hamiltonian residuals of the exact states, a Galerkin
 * eigensolver, orthogonality audits and the similarity-transform check.
 */
namespace scarf::verify {

using model::ScarfParams;
using model::StateLabel;

struct ResidualReport {
    StateLabel state{0, 0};
    double b = 0.0;
    /// ||(H - eps) U|| / ||eps U||, or / ||U|| when eps = 0.
    double residual = 0.0;
    /// ||(H - eps) U|| / ||U||.
    double residual_per_norm = 0.0;
    int quadrature_order = 0;
};

struct EigReport {
    int m_quantum = 0;
    double b = 0.0;
    int basis_size = 0;
    std::vector<double> eigenvalues;
    /// |lambda_k - t_k (t_k + 1)| with t_k = |M| + k.
    std::vector<double> deviations;
    /// max |S_ij| / sqrt(S_ii S_jj), i != j, of the basis overlap.
    double max_offdiag_overlap = 0.0;
    int quadrature_order = 0;
    double symmetry_error = 0.0;          ///< max |H_ij - H_ji|
    double relative_symmetry_error = 0.0; ///< symmetry_error / max |H_ij|
    double endpoint_exponent_plus = 0.0;  ///< at theta = +pi/2
    double endpoint_exponent_minus = 0.0; ///< at theta = -pi/2
    bool converged = true;
    /// max eigenvalue shift when the basis is doubled (negative if not run).
    double convergence_shift = -1.0;
};

struct OrthogonalityReport {
    int m_quantum = 0;
    double b = 0.0;
    int t_max = 0;
    Eigen::MatrixXd gram;
    double max_deviation = 0.0;
    int quadrature_order = 0;
};

struct SimilarityReport {
    int J = 0;
    int m_quantum = 0;
    double b = 0.0;
    double eigenvalue = 0.0;       ///< J (J + 1)
    double rayleigh_quotient = 0.0; ///< <Y~, J~^2 Y~> / <Y~, Y~>
    double residual = 0.0;         ///< of (J~^2 - J(J+1)) Y~
    /// residual of (H - J(J+1)) Y~, only for |M| = J.
    std::optional<double> hamiltonian_residual;
    int quadrature_order = 0;
};

struct IsospectralityReport {
    int m_quantum = 0;
    int n_levels = 0;
    int basis_size = 0;
    double tolerance = 0.0;
    std::vector<EigReport> per_b;
    std::vector<double> spread;        ///< max - min over b, per level
    std::vector<double> max_rel_error; ///< max over b of deviation / level
    bool pass = false;
};

// ---------------------------------------------------------------------------
// Operators

/// (H U)(theta) for H = -d^2/dtheta^2 + V_ScI.
inline double apply_hamiltonian(const Jet &u, double theta,
                                const ScarfParams &p) {
    return -u.d2 + model::potential_scarf(theta, p) * u.v;
}

/**
 * Similarity-transformed Casimir J~^2 = F J^2 F^{-1}, F = sqrt(cos) W, with
 * J^2 = -(1/cos) d/dtheta cos d/dtheta + M^2 / cos^2 in the shifted
 * parametrization. Expanded with h = ln F:
 * J~^2 f = -f'' + 2h'f' - (h'^2 - h'')f + tan (f' - h'f) + M^2/cos^2 f.
 */
inline double apply_similarity_casimir(const Jet &f, double theta, int M,
                                       double b) {
    model::require_interior(theta, "apply_similarity_casimir");
    const double c = std::cos(theta);
    const double tn = std::tan(theta);
    const double sec = 1.0 / c;
    const double h1 = -0.5 * tn + b * sec;
    const double h2 = -0.5 * sec * sec + b * sec * tn;
    return -f.d2 + 2.0 * h1 * f.d1 - (h1 * h1 - h2) * f.v +
           tn * (f.d1 - h1 * f.v) + static_cast<double>(M) * M * sec * sec * f.v;
}

// ---------------------------------------------------------------------------
// Residuals

/**
 * Residual of the closed-form state in the 1D Schrodinger equation. The
 * second derivative comes from the chain rule through W, cos^{|M|+1/2}
 * and the Jacobi derivative identity.
 */
inline ResidualReport hamiltonian_residual(const StateLabel &state, double b,
                                           int order = 0) {
    const ScarfParams p{state.m_quantum(), b};
    model::require_valid(p);
    const int q = order > 0 ? order : std::max(64, specfun::default_order(state.t()));
    const auto rule = model::state_rule(p, q);
    const double eps = state.epsilon();
    double r2 = 0.0;
    double u2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double th = std::asin(x);
        const Jet u = model::wavefunction_u_jet(state, b, th);
        const double r = apply_hamiltonian(u, th, p) - eps * u.v;
        const double scale =
            rule.weights[i] / (std::sqrt((1.0 - x) * (1.0 + x)) * rule.weight(x));
        r2 += scale * r * r;
        u2 += scale * u.v * u.v;
    }
    ResidualReport rep{state, b, 0.0, 0.0, q};
    rep.residual_per_norm = std::sqrt(r2 / u2);
    rep.residual = eps > 0.0 ? rep.residual_per_norm / eps : rep.residual_per_norm;
    return rep;
}

/**
 * Residual of (J~^2 - J(J+1)) Y~_J^M, plus the Hamiltonian residual of
 * Y~_J^M when |M| = J.
 */
inline SimilarityReport similarity_check(int J, int M, double b,
                                         int order = 0) {
    if (J < 0 || std::abs(M) > J) {
        throw model::ParameterError("similarity_check: requires |M| <= J");
    }
    const ScarfParams p{M, b};
    model::require_valid(p);
    const int q = order > 0 ? order : std::max(64, specfun::default_order(J));
    const auto rule = model::state_rule(p, q);
    const double eig = static_cast<double>(J) * (J + 1);
    const bool max_m = std::abs(M) == J;

    double r2 = 0.0;
    double h2 = 0.0;
    double y2 = 0.0;
    double yjy = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double th = std::asin(x);
        const Jet y = model::rescaled_harmonic_jet(J, M, b, th,
                                                   model::Convention::paper);
        const double jy = apply_similarity_casimir(y, th, M, b);
        const double scale =
            rule.weights[i] / (std::sqrt((1.0 - x) * (1.0 + x)) * rule.weight(x));
        r2 += scale * (jy - eig * y.v) * (jy - eig * y.v);
        y2 += scale * y.v * y.v;
        yjy += scale * y.v * jy;
        if (max_m) {
            const double hy = apply_hamiltonian(y, th, p) - eig * y.v;
            h2 += scale * hy * hy;
        }
    }
    const double denom = eig > 0.0 ? eig : 1.0;
    SimilarityReport rep;
    rep.J = J;
    rep.m_quantum = M;
    rep.b = b;
    rep.eigenvalue = eig;
    rep.rayleigh_quotient = yjy / y2;
    rep.residual = std::sqrt(r2 / y2) / denom;
    if (max_m) {
        rep.hamiltonian_residual = std::sqrt(h2 / y2) / denom;
    }
    rep.quadrature_order = q;
    return rep;
}

/// Gram matrix of normalized U_t, t = |M| .. t_max, under dtheta.
inline OrthogonalityReport orthogonality_check(int M, double b, int t_max,
                                               int order = 0) {
    const ScarfParams p{M, b};
    model::require_valid(p);
    const int m = std::abs(M);
    if (t_max < m) {
        throw model::ParameterError("orthogonality_check: requires t_max >= |M|");
    }
    const int q = order > 0 ? order : specfun::default_order(t_max);
    const auto rule = model::state_rule(p, q);
    const int k = t_max - m + 1;

    Eigen::MatrixXd vals(k, static_cast<Eigen::Index>(rule.nodes.size()));
    for (int a = 0; a < k; ++a) {
        const StateLabel s(m + a, M);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            vals(a, static_cast<Eigen::Index>(i)) =
                model::wavefunction_u(s, b, std::asin(rule.nodes[i]));
        }
    }
    Eigen::VectorXd scale(static_cast<Eigen::Index>(rule.nodes.size()));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        scale(static_cast<Eigen::Index>(i)) =
            rule.weights[i] / (std::sqrt((1.0 - x) * (1.0 + x)) * rule.weight(x));
    }
    Eigen::MatrixXd g = vals * scale.asDiagonal() * vals.transpose();
    const Eigen::VectorXd inv = g.diagonal().cwiseSqrt().cwiseInverse();
    g = inv.asDiagonal() * g * inv.asDiagonal();

    OrthogonalityReport rep;
    rep.m_quantum = M;
    rep.b = b;
    rep.t_max = t_max;
    rep.max_deviation =
        (g - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    rep.gram = std::move(g);
    rep.quadrature_order = q;
    return rep;
}

// ---------------------------------------------------------------------------
// Galerkin eigensolver

/// Frobenius exponents rho with U ~ cos^rho near theta = +pi/2 and -pi/2.
struct EndpointExponents {
    double plus = 0.0;
    double minus = 0.0;
};

/**
 * Indicial roots at the two singular endpoints. Near theta = +-pi/2,
 * V_ScI ~ kappa_pm / cos^2 with kappa_pm = b^2 + a(a+1) -+ b(2a+1), and
 * the local solutions behave as cos^rho with rho(rho - 1) = kappa. Of the
 * two roots 1/2 +- sqrt(1/4 + kappa) we follow the branch continuous in b
 * from the regular b = 0 root |M| + 1/2; sqrt(1/4 + kappa) vanishes at
 * b = +-|M|, where that branch passes from the larger to the smaller root.
 */
inline EndpointExponents endpoint_exponents(const ScarfParams &p) {
    const double a = p.a();
    const double even = p.b * p.b + a * (a + 1.0);
    const double odd = p.b * (2.0 * a + 1.0);
    const double kappa_plus = even - odd;
    const double kappa_minus = even + odd;
    const double m = p.abs_m();
    auto root = [](double kappa, double branch_sign) {
        const double d = std::sqrt(std::max(0.0, 0.25 + kappa));
        return 0.5 + (branch_sign >= 0.0 ? d : -d);
    };
    return {root(kappa_plus, m - p.b), root(kappa_minus, m + p.b)};
}

/// Dirichlet-compatible range of the solver: |b| < |M| + 1/2.
inline bool dirichlet_compatible(const ScarfParams &p) {
    return std::abs(p.b) < p.abs_m() + 0.5;
}

struct GalerkinSystem {
    Eigen::MatrixXd hamiltonian; ///< symmetrized
    Eigen::MatrixXd overlap;
    double symmetry_error = 0.0;
    EndpointExponents exponents;
    int quadrature_order = 0;
};

/**
 * Assembles H_ij = integral u_i H u_j dtheta and S_ij = integral u_i u_j
 * dtheta for u_k = E p_k, where p_k are the Jacobi polynomials
 * P_k^{(|M|,|M|)}(sin theta) normalized under (1 - x^2)^{|M|} (the b = 0
 * eigenbasis) and E = (1 - x)^{rho+/2} (1 + x)^{rho-/2} is the endpoint
 * envelope. At b = 0 the basis is the free-rotator eigenbasis and S = 1.
 *
 * H u_j is evaluated pointwise through E^{-1} H E, whose coefficients only
 * involve (ln E)' and (ln E)'', and integrated with the Gauss-Jacobi rule
 * for the weight E^2 / cos.
 */
inline GalerkinSystem assemble_galerkin(int M, double b, int basis_size,
                                        int order) {
    const ScarfParams p{M, b};
    model::require_valid(p);
    if (!dirichlet_compatible(p)) {
        throw model::ParameterError(
            "Galerkin solver requires |b| < |M| + 1/2 (Dirichlet "
            "compatibility)");
    }
    if (basis_size < 1) {
        throw model::ParameterError("basis_size must be positive");
    }
    if (order < basis_size) {
        throw model::ParameterError(
            "quadrature order must be at least the basis size");
    }
    const int m = p.abs_m();
    const auto ex = endpoint_exponents(p);
    const auto rule = specfun::gauss_jacobi(order, ex.plus - 0.5, ex.minus - 0.5);
    const auto free_rule = specfun::gauss_jacobi(order, m, m);

    std::vector<double> inv_norm(basis_size);
    for (int k = 0; k < basis_size; ++k) {
        const double nn = free_rule.integrate([&](double x) {
            const double v = specfun::jacobi_poly(k, m, m, x);
            return v * v;
        });
        inv_norm[k] = 1.0 / std::sqrt(nn);
    }

    const auto nq = static_cast<Eigen::Index>(rule.nodes.size());
    Eigen::MatrixXd pv(basis_size, nq);
    Eigen::MatrixXd hv(basis_size, nq);
    Eigen::VectorXd w(nq);
    for (Eigen::Index i = 0; i < nq; ++i) {
        const double x = rule.nodes[static_cast<std::size_t>(i)];
        const double th = std::asin(x);
        const double c = std::sqrt((1.0 - x) * (1.0 + x));
        const double g = -0.5 * ex.plus / (1.0 - x) + 0.5 * ex.minus / (1.0 + x);
        const double dlog = c * g;
        const double d2log = -0.5 * ex.plus / (1.0 - x) - 0.5 * ex.minus / (1.0 + x);
        const double v = model::potential_scarf(th, p);
        w(i) = rule.weights[static_cast<std::size_t>(i)];
        for (int k = 0; k < basis_size; ++k) {
            const double pk = inv_norm[k] * specfun::jacobi_poly(k, m, m, x);
            const double dp = inv_norm[k] * specfun::jacobi_poly_derivative(k, m, m, x, 1);
            const double d2p = inv_norm[k] * specfun::jacobi_poly_derivative(k, m, m, x, 2);
            const double p_th = c * dp;
            const double p_thth = c * c * d2p - x * dp;
            pv(k, i) = pk;
            hv(k, i) = -((d2log + dlog * dlog) * pk + 2.0 * dlog * p_th + p_thth) +
                       v * pk;
        }
    }

    GalerkinSystem sys;
    sys.overlap = pv * w.asDiagonal() * pv.transpose();
    Eigen::MatrixXd h = pv * w.asDiagonal() * hv.transpose();
    sys.symmetry_error = (h - h.transpose()).cwiseAbs().maxCoeff();
    sys.hamiltonian = 0.5 * (h + h.transpose());
    sys.exponents = ex;
    sys.quadrature_order = order;
    return sys;
}

namespace detail {
inline std::vector<double> lowest_eigenvalues(const GalerkinSystem &sys,
                                              int n_levels) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        sys.hamiltonian, sys.overlap, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("Galerkin eigensolver failed (overlap not SPD?)");
    }
    const auto &ev = es.eigenvalues();
    return {ev.data(), ev.data() + n_levels};
}
} // namespace detail

/**
 * Lowest n_levels eigenvalues of H at fixed (M, b) from the Galerkin
 * system. With check_convergence the solve is repeated at twice the basis
 * size; a shift above 1e-8 in any reported level marks the report as not
 * converged.
 */
inline EigReport solve_eigen_galerkin(int M, double b, int basis_size,
                                      int n_levels, int order = 0,
                                      bool check_convergence = true) {
    if (n_levels < 1) {
        throw model::ParameterError("n_levels must be positive");
    }
    if (basis_size < n_levels + 8) {
        throw model::ParameterError(
            "basis_size must be at least n_levels + 8");
    }
    const int q = order > 0 ? order : (3 * basis_size) / 2;
    const auto sys = assemble_galerkin(M, b, basis_size, q);

    EigReport rep;
    rep.m_quantum = M;
    rep.b = b;
    rep.basis_size = basis_size;
    rep.quadrature_order = q;
    rep.eigenvalues = detail::lowest_eigenvalues(sys, n_levels);
    const int m = std::abs(M);
    for (int k = 0; k < n_levels; ++k) {
        const double tk = m + k;
        rep.deviations.push_back(std::abs(rep.eigenvalues[k] - tk * (tk + 1.0)));
    }
    double off = 0.0;
    for (int i = 0; i < basis_size; ++i) {
        for (int j = 0; j < basis_size; ++j) {
            if (i != j) {
                off = std::max(off, std::abs(sys.overlap(i, j)) /
                                        std::sqrt(sys.overlap(i, i) *
                                                  sys.overlap(j, j)));
            }
        }
    }
    rep.max_offdiag_overlap = off;
    rep.symmetry_error = sys.symmetry_error;
    rep.relative_symmetry_error =
        sys.symmetry_error / sys.hamiltonian.cwiseAbs().maxCoeff();
    rep.endpoint_exponent_plus = sys.exponents.plus;
    rep.endpoint_exponent_minus = sys.exponents.minus;

    if (check_convergence) {
        const auto big = assemble_galerkin(M, b, 2 * basis_size, 2 * q);
        const auto ev2 = detail::lowest_eigenvalues(big, n_levels);
        double shift = 0.0;
        for (int k = 0; k < n_levels; ++k) {
            shift = std::max(shift, std::abs(ev2[k] - rep.eigenvalues[k]));
        }
        rep.convergence_shift = shift;
        rep.converged = shift <= 1e-8;
    }
    return rep;
}

/**
 * Matrix of V_ScI in the orthonormal b = 0 eigenbasis
 * u_k = cos^{|M|+1/2} p_k(sin theta). For |M| >= 1 the integrand
 * (1 - x^2)^{|M|-1} p_i p_j (1 - x^2) V is polynomial and the
 * Gauss-Jacobi (|M|-1, |M|-1) rule is exact; at M = 0 the b^2 - 1/4
 * double pole makes the entries diverge.
 */
inline Eigen::MatrixXd potential_matrix_free_basis(int M, double b,
                                                   int basis_size,
                                                   int order = 0) {
    const ScarfParams p{M, b};
    model::require_valid(p);
    const int m = p.abs_m();
    if (m < 1) {
        throw model::ParameterError(
            "potential matrix in the free basis needs |M| >= 1");
    }
    const int q = order > 0 ? order : basis_size + 8;
    const auto rule = specfun::gauss_jacobi(q, m - 1.0, m - 1.0);
    const auto free_rule = specfun::gauss_jacobi(q, m, m);
    Eigen::MatrixXd pv(basis_size, q);
    Eigen::VectorXd w(q);
    for (int k = 0; k < basis_size; ++k) {
        const double nn = free_rule.integrate([&](double x) {
            const double v = specfun::jacobi_poly(k, m, m, x);
            return v * v;
        });
        for (int i = 0; i < q; ++i) {
            pv(k, i) = specfun::jacobi_poly(k, m, m, rule.nodes[i]) / std::sqrt(nn);
        }
    }
    for (int i = 0; i < q; ++i) {
        const double x = rule.nodes[i];
        w(i) = rule.weights[i] * (1.0 - x) * (1.0 + x) *
               model::potential_scarf(std::asin(x), p);
    }
    return pv * w.asDiagonal() * pv.transpose();
}

/// Largest off-diagonal magnitude of a square matrix.
inline double max_offdiagonal(const Eigen::MatrixXd &a) {
    double out = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j) {
                out = std::max(out, std::abs(a(i, j)));
            }
        }
    }
    return out;
}

/// Galerkin spectra at several b and the per-level spread across them.
inline IsospectralityReport isospectrality_report(
    int M, const std::vector<double> &b_values, int n_levels, int basis_size,
    int order = 0, double tolerance = 1e-6) {
    if (b_values.empty()) {
        throw model::ParameterError("isospectrality_report: no b values");
    }
    IsospectralityReport rep;
    rep.m_quantum = M;
    rep.n_levels = n_levels;
    rep.basis_size = basis_size;
    rep.tolerance = tolerance;
    for (double b : b_values) {
        rep.per_b.push_back(solve_eigen_galerkin(M, b, basis_size, n_levels, order));
    }
    rep.spread.assign(n_levels, 0.0);
    rep.max_rel_error.assign(n_levels, 0.0);
    const int m = std::abs(M);
    for (int k = 0; k < n_levels; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        const double tk = m + k;
        const double level = tk * (tk + 1.0);
        for (const auto &r : rep.per_b) {
            lo = std::min(lo, r.eigenvalues[k]);
            hi = std::max(hi, r.eigenvalues[k]);
            rep.max_rel_error[k] = std::max(
                rep.max_rel_error[k],
                r.deviations[k] / (level > 0.0 ? level : 1.0));
        }
        rep.spread[k] = hi - lo;
    }
    rep.pass = std::all_of(rep.spread.begin(), rep.spread.end(),
                           [&](double s) { return s < tolerance; }) &&
               std::all_of(rep.max_rel_error.begin(), rep.max_rel_error.end(),
                           [&](double e) { return e < tolerance; });
    return rep;
}

} // namespace scarf::verify

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
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "specfun.hpp"

namespace scarf::analysis {

using model::Convention;
using model::ScarfParams;
using model::StateLabel;

/**
 * Expansion psi_t^M = sum_J c_J Ytilde_J^M over rescaled harmonics.
 *
 * `paper` convention: psi = U e^{iM phi} with no rescaling, Ytilde built on
 * unnormalized P_J^{|M|}. Normalized convention: psi is scaled so that
 * psi / (sqrt(cos) W) has unit norm on the sphere and the Ytilde carry the
 * sphere normalization; then sum |c_J|^2 = 1.
 */
struct DecompositionResult {
    int m_quantum = 0;
    int t = 0;
    double b = 0.0;
    Convention convention = Convention::paper;
    std::map<int, std::complex<double>> coefficients; ///< J = |M| .. t
    double residual = 0.0;        ///< ||psi - sum c Ytilde|| / ||psi|| over dtheta
    double guard_band_max = 0.0;  ///< max |c_J| for J just above t
    int quadrature_order = 0;
};

struct ParityReport {
    double even_fraction = 0.0;
    double odd_fraction = 0.0;
    /// integral U(theta) U(-theta) dtheta / integral U^2 dtheta
    double reflection_overlap = 0.0;
    std::string basis = "N U(theta) under theta -> -theta, measure dtheta";
};

enum class DipoleMeasure { absorbed, literal };

inline std::string_view to_string(DipoleMeasure m) {
    return m == DipoleMeasure::absorbed ? "absorbed" : "literal";
}

inline DipoleMeasure dipole_measure_from_string(std::string_view s) {
    if (s == "absorbed") {
        return DipoleMeasure::absorbed;
    }
    if (s == "literal") {
        return DipoleMeasure::literal;
    }
    throw std::invalid_argument("unknown dipole measure '" + std::string(s) +
                                "' (expected absorbed|literal)");
}

/// What a density grid samples.
enum class DensityQuantity {
    psi,  ///< |N U e^{iM phi}|^2 / (2 pi)
    phi,  ///< |N U / sqrt(cos)|^2 / (2 pi)
    free, ///< sphere-normalized |Y_t^M|^2 of the free rotator
};

inline std::string_view to_string(DensityQuantity q) {
    switch (q) {
    case DensityQuantity::psi:
        return "psi";
    case DensityQuantity::phi:
        return "phi";
    case DensityQuantity::free:
        return "free";
    }
    return "psi";
}

inline DensityQuantity density_quantity_from_string(std::string_view s) {
    if (s == "psi") {
        return DensityQuantity::psi;
    }
    if (s == "phi") {
        return DensityQuantity::phi;
    }
    if (s == "free") {
        return DensityQuantity::free;
    }
    throw std::invalid_argument("unknown density quantity '" +
                                std::string(s) + "' (expected psi|phi|free)");
}

struct DensityMetadata {
    int t = 0;
    int m_quantum = 0;
    double b = 0.0;
    Convention convention = Convention::normalized;
    DensityQuantity quantity = DensityQuantity::psi;
    /// integral |rho(theta) - rho(-theta)| dtheta
    double asymmetry = 0.0;
};

struct DensityGrid {
    std::vector<double> theta;
    std::vector<double> phi;
    std::vector<double> values; ///< row-major, theta outer
    DensityMetadata metadata;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const {
        return values[i * phi.size() + j];
    }
};

namespace detail {

/// U / (sqrt(cos) W): cos^{|M|} P_n(x) as a function of x, via exact division.
inline double stripped(const StateLabel &state, double b, double x) {
    const double th = std::asin(x);
    return model::wavefunction_u(state, b, th) /
           (std::sqrt(std::cos(th)) * model::rescale_factor(th, b));
}

} // namespace detail

/**
 * Coefficients of the perturbed state over rescaled harmonics. The common
 * factor sqrt(cos) W is divided out of U and the remainder is projected on
 * P_J^{|M|}(sin theta) under cos dtheta = dx, which is exact under
 * Gauss-Legendre since every integrand is a polynomial in x.
 */
inline DecompositionResult decompose(const StateLabel &state, double b,
                                     Convention convention, int order = 0,
                                     int guard = 2) {
    const ScarfParams p{state.m_quantum(), b};
    model::require_valid(p);
    const int t = state.t();
    const int m = state.abs_m();
    const int M = state.m_quantum();
    const int q = order > 0 ? order : specfun::default_order(t + guard);
    const auto leg = specfun::gauss_legendre(q);

    std::vector<double> f(leg.nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = detail::stripped(state, b, leg.nodes[i]);
    }
    auto project = [&](int J) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double pj = specfun::assoc_legendre(J, m, leg.nodes[i]);
            num += leg.weights[i] * f[i] * pj;
            den += leg.weights[i] * pj * pj;
        }
        return num / den;
    };

    // Scale of psi relative to U in the chosen convention.
    double state_scale = 1.0;
    if (convention == Convention::normalized) {
        double ff = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            ff += leg.weights[i] * f[i] * f[i];
        }
        state_scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * ff);
    }

    DecompositionResult out;
    out.m_quantum = M;
    out.t = t;
    out.b = b;
    out.convention = convention;
    out.quadrature_order = q;
    for (int J = m; J <= t; ++J) {
        const double c = state_scale * project(J) /
                         model::harmonic_prefactor(J, M, convention);
        out.coefficients[J] = c;
    }
    for (int J = t + 1; J <= t + guard; ++J) {
        const double c = state_scale * project(J) /
                         model::harmonic_prefactor(J, M, convention);
        out.guard_band_max = std::max(out.guard_band_max, std::abs(c));
    }

    const auto rule = model::state_rule(p, q);
    double diff2 = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double th = std::asin(x);
        const double psi = state_scale * model::wavefunction_u(state, b, th);
        double rec = 0.0;
        for (const auto &[J, c] : out.coefficients) {
            rec += c.real() *
                   model::rescaled_harmonic(J, M, b, th, 0.0, convention).real();
        }
        const double scale =
            rule.weights[i] / (std::sqrt((1.0 - x) * (1.0 + x)) * rule.weight(x));
        diff2 += scale * (psi - rec) * (psi - rec);
        norm2 += scale * psi * psi;
    }
    out.residual = std::sqrt(diff2 / norm2);
    return out;
}

/**
 * Even/odd split of N U under theta -> -theta. The reflection overlap
 * integrand U(theta) U(-theta) / cos is (1 - x^2)^{|M|} P_n(x) P_n(-x)
 * since W(-theta) W(theta) = 1, so Gauss-Legendre is exact for it.
 */
inline ParityReport parity_mixing(const StateLabel &state, double b,
                                  int order = 0) {
    const ScarfParams p{state.m_quantum(), b};
    model::require_valid(p);
    const int q = order > 0 ? order : specfun::default_order(state.t());
    const auto leg = specfun::gauss_legendre(q);
    const double cross = model::integrate_dtheta(leg, [&](double th) {
        return model::wavefunction_u(state, b, th) *
               model::wavefunction_u(state, b, -th);
    });
    const double nn = model::integrate_dtheta(
        model::state_rule(p, q), [&](double th) {
            const double u = model::wavefunction_u(state, b, th);
            return u * u;
        });
    ParityReport r;
    r.reflection_overlap = cross / nn;
    r.even_fraction = 0.5 * (1.0 + r.reflection_overlap);
    r.odd_fraction = 0.5 * (1.0 - r.reflection_overlap);
    return r;
}

/**
 * Electric dipole expectation value d_e.
 *
 * absorbed: integral (N U)^2 sin(theta) dtheta; the reduction to U already
 * carries the sphere measure, and the phi integral is absorbed in the
 * normalization. literal: the printed double-sin form, integral
 * (N U)^2 sin^2(theta) dtheta.
 */
inline double dipole_moment(const StateLabel &state, double b,
                            DipoleMeasure measure = DipoleMeasure::absorbed,
                            int order = 0) {
    const model::ScarfState s(state, b, order);
    const auto rule = s.rule();
    const int power = measure == DipoleMeasure::absorbed ? 1 : 2;
    return model::integrate_dtheta(rule, [&](double th) {
        const double u = s.normalized_u(th);
        return u * u * std::pow(std::sin(th), power);
    });
}

/**
 * <Y_{J1}^{M1}| sin(theta) |Y_{J2}^{M2}> over the sphere with sphere-normalized
 * harmonics: Gauss-Legendre in x and the trapezoid rule in phi (exact for the
 * trigonometric polynomial e^{i(M2-M1) phi}).
 */
inline std::complex<double> dipole_matrix_element(int J1, int M1, int J2,
                                                  int M2, int order = 0) {
    const int q = order > 0 ? order : specfun::default_order(std::max(J1, J2));
    const auto leg = specfun::gauss_legendre(q);
    const int n_phi = 2 * (std::abs(M1) + std::abs(M2)) + 8;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < leg.nodes.size(); ++i) {
        const double th = std::asin(leg.nodes[i]);
        for (int k = 0; k < n_phi; ++k) {
            const double ph = 2.0 * std::numbers::pi * k / n_phi;
            const auto y1 = model::spherical_harmonic(J1, M1, th, ph,
                                                      Convention::normalized);
            const auto y2 = model::spherical_harmonic(J2, M2, th, ph,
                                                      Convention::normalized);
            acc += leg.weights[i] * (2.0 * std::numbers::pi / n_phi) *
                   std::conj(y1) * leg.nodes[i] * y2;
        }
    }
    return acc;
}

/// integral over theta of |rho(theta) - rho(-theta)|, composite Gauss-Legendre.
template <class Rho> double asymmetry_metric(Rho &&rho, int panels = 400) {
    const auto gl = specfun::gauss_legendre(8);
    const double h = 0.5 * std::numbers::pi / panels;
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = k * h;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double th = lo + 0.5 * h * (gl.nodes[i] + 1.0);
            acc += 0.5 * h * gl.weights[i] * std::abs(rho(th) - rho(-th));
        }
    }
    return 2.0 * acc;
}

/// |psi|^2 sampled on theta_i = -pi/2 + (i + 1/2) pi / n_theta, phi_j = 2 pi j / n_phi.
inline DensityGrid density_map(const StateLabel &state, double b, int n_theta,
                               int n_phi,
                               DensityQuantity quantity = DensityQuantity::psi,
                               int order = 0) {
    if (n_theta < 2 || n_phi < 2) {
        throw std::invalid_argument(
            "density_map: n_theta and n_phi must be >= 2");
    }
    const double b_eff = quantity == DensityQuantity::free ? 0.0 : b;
    const model::ScarfState s(state, b_eff, order);
    const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    const int t = state.t();
    const int M = state.m_quantum();

    auto rho = [&](double th) {
        switch (quantity) {
        case DensityQuantity::psi: {
            const double u = s.normalized_u(th);
            return u * u * inv2pi;
        }
        case DensityQuantity::phi: {
            const double u = s.normalized_u(th);
            return u * u * inv2pi / std::cos(th);
        }
        case DensityQuantity::free: {
            const double y = model::sphere_harmonic_norm(t, M) *
                             specfun::assoc_legendre(t, M, std::sin(th));
            return y * y;
        }
        }
        return 0.0;
    };

    DensityGrid g;
    g.theta.resize(n_theta);
    g.phi.resize(n_phi);
    for (int i = 0; i < n_theta; ++i) {
        g.theta[i] = -0.5 * std::numbers::pi + (i + 0.5) * std::numbers::pi / n_theta;
    }
    for (int j = 0; j < n_phi; ++j) {
        g.phi[j] = 2.0 * std::numbers::pi * j / n_phi;
    }
    g.values.resize(static_cast<std::size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        // |e^{iM phi}| = 1: one value per row.
        const double r = rho(g.theta[i]);
        std::fill_n(g.values.begin() + static_cast<std::ptrdiff_t>(i) * n_phi,
                    n_phi, r);
    }
    g.metadata.t = t;
    g.metadata.m_quantum = M;
    g.metadata.b = b_eff;
    g.metadata.convention = Convention::normalized;
    g.metadata.quantity = quantity;
    g.metadata.asymmetry = asymmetry_metric(rho);
    return g;
}

} // namespace scarf::analysis

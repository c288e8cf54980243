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

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jet.hpp"
#include "specfun.hpp"

/**
 * @file model.hpp
 * Free and Scarf-I perturbed rigid rotator: parameters, spectrum,
 * potentials, wave functions and rescaled harmonics.
 *
 * The polar angle theta is measured from the negative y-axis, so it runs
 * over (-pi/2, pi/2) and Legendre arguments are x = sin(theta). Parity is
 * the reflection theta -> -theta.
 */
namespace scarf::model {

/// Raised for parameter combinations outside the admissible range.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct RotorConfig {
    double rotational_constant = 1.0;
    double planck_scale = 1.0;

    static RotorConfig make(double rotational_constant,
                            double planck_scale = 1.0) {
        if (!(rotational_constant > 0.0) || !(planck_scale > 0.0)) {
            throw ParameterError(
                "RotorConfig: rotational constant and Planck scale must be "
                "positive");
        }
        return {rotational_constant, planck_scale};
    }
};

/// Perturbation strength b at magnetic quantum number M.
struct ScarfParams {
    int m_quantum = 0;
    double b = 0.0;

    [[nodiscard]] int abs_m() const { return std::abs(m_quantum); }
    /// Scarf parameter a = |M| - 1/2.
    [[nodiscard]] double a() const { return abs_m() - 0.5; }
    /// Jacobi exponents of the eigenfunctions: (|M| - b, |M| + b).
    [[nodiscard]] double jacobi_alpha() const { return abs_m() - b; }
    [[nodiscard]] double jacobi_beta() const { return abs_m() + b; }
};

struct ValidityReport {
    bool valid = true;
    std::vector<std::string> violations;

    explicit operator bool() const { return valid; }
    [[nodiscard]] std::string message() const {
        std::string out;
        for (const auto &v : violations) {
            if (!out.empty()) {
                out += "; ";
            }
            out += v;
        }
        return out;
    }
};

/// Checks |M| - b + 1 > 0 and |M| + b + 1 > 0.
inline ValidityReport validate_params(const ScarfParams &p) {
    ValidityReport r;
    if (!std::isfinite(p.b)) {
        r.valid = false;
        r.violations.emplace_back("b must be finite");
        return r;
    }
    const double lhs1 = p.abs_m() - p.b + 1.0;
    const double lhs2 = p.abs_m() + p.b + 1.0;
    if (!(lhs1 > 0.0)) {
        r.valid = false;
        r.violations.push_back("|M| - b + 1 > 0 violated (value " +
                               std::to_string(lhs1) + ")");
    }
    if (!(lhs2 > 0.0)) {
        r.valid = false;
        r.violations.push_back("|M| + b + 1 > 0 violated (value " +
                               std::to_string(lhs2) + ")");
    }
    return r;
}

inline void require_valid(const ScarfParams &p) {
    if (auto r = validate_params(p); !r) {
        throw ParameterError("invalid Scarf parameters (M=" +
                             std::to_string(p.m_quantum) +
                             ", b=" + std::to_string(p.b) + "): " +
                             r.message());
    }
}

/// Quantum numbers (t, M) with n = t - |M|.
class StateLabel {
  public:
    StateLabel(int t, int m_quantum) : t_(t), m_(m_quantum) {
        if (t < 0) {
            throw ParameterError("StateLabel: t must be non-negative");
        }
        if (std::abs(m_quantum) > t) {
            throw ParameterError("StateLabel: requires |M| <= t (t=" +
                                 std::to_string(t) + ", M=" +
                                 std::to_string(m_quantum) + ")");
        }
    }

    [[nodiscard]] int t() const { return t_; }
    [[nodiscard]] int m_quantum() const { return m_; }
    [[nodiscard]] int abs_m() const { return std::abs(m_); }
    [[nodiscard]] int n() const { return t_ - std::abs(m_); }
    /// Dimensionless level t (t + 1).
    [[nodiscard]] double epsilon() const {
        return static_cast<double>(t_) * (t_ + 1);
    }

    friend bool operator==(const StateLabel &, const StateLabel &) = default;

  private:
    int t_;
    int m_;
};

// ---------------------------------------------------------------------------
// Spectrum

/// B t (t + 1). Takes no Scarf parameters: the level does not depend on them.
inline double energy(int t, const RotorConfig &config = {}) {
    if (t < 0) {
        throw ParameterError("energy: t must be non-negative");
    }
    return config.rotational_constant * t * (t + 1.0);
}

/// nu(J) = (E_J - E_{J-1}) / h = 2 B J / h.
inline double transition_frequency(int J, const RotorConfig &config = {}) {
    if (J < 1) {
        throw ParameterError("transition_frequency: J must be >= 1");
    }
    return (energy(J, config) - energy(J - 1, config)) / config.planck_scale;
}

// ---------------------------------------------------------------------------
// Potentials

inline void require_interior(double theta, std::string_view who) {
    if (!(std::abs(theta) < 0.5 * std::numbers::pi) || !(std::cos(theta) > 0.0)) {
        throw std::domain_error(std::string(who) +
                                ": theta must lie strictly inside (-pi/2, pi/2)");
    }
}

/// Free-rotator centrifugal term (M^2 - 1/4) / cos^2.
inline double potential_v1(double theta, int M) {
    require_interior(theta, "potential_v1");
    const double c = std::cos(theta);
    return (static_cast<double>(M) * M - 0.25) / (c * c);
}

/// Trigonometric Scarf potential with a = |M| - 1/2.
inline double potential_scarf(double theta, const ScarfParams &p) {
    require_interior(theta, "potential_scarf");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double a = p.a();
    const double sec2 = 1.0 / (c * c);
    return (p.b * p.b + a * (a + 1.0)) * sec2 -
           p.b * (2.0 * a + 1.0) * s * sec2 - 0.25;
}

/// Perturbation on the sphere, b^2/cos^2 - 2 b M tan/cos - 1/4 (signed M).
inline double perturbation_sphere(double theta, const ScarfParams &p) {
    require_interior(theta, "perturbation_sphere");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double sec2 = 1.0 / (c * c);
    return p.b * p.b * sec2 - 2.0 * p.b * p.m_quantum * s * sec2 - 0.25;
}

// ---------------------------------------------------------------------------
// Wave functions

/// W(theta) = ((1 + sin) / (1 - sin))^{b/2}.
inline double rescale_factor(double theta, double b) {
    require_interior(theta, "rescale_factor");
    const double s = std::sin(theta);
    return std::pow((1.0 + s) / (1.0 - s), 0.5 * b);
}

/// W with theta-derivatives; (ln W)' = b / cos.
inline Jet rescale_factor_jet(double theta, double b) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double w = rescale_factor(theta, b);
    const double dlog = b / c;
    const double d2log = b * s / (c * c);
    return {w, w * dlog, w * (d2log + dlog * dlog)};
}

/// cos^k(theta) with theta-derivatives.
inline Jet cos_power_jet(double theta, double k) {
    const double c = std::cos(theta);
    const double t = std::tan(theta);
    const double v = std::pow(c, k);
    return {v, -k * t * v, v * (k * k * t * t - k / (c * c))};
}

/// Jacobi polynomial P_n^{(alpha,beta)}(sin theta) with theta-derivatives.
inline Jet jacobi_jet(int n, double alpha, double beta, double theta) {
    const double x = std::sin(theta);
    return jet_of_sin_argument(
        theta, specfun::jacobi_poly(n, alpha, beta, x),
        specfun::jacobi_poly_derivative(n, alpha, beta, x, 1),
        specfun::jacobi_poly_derivative(n, alpha, beta, x, 2));
}

/// P_J^{|M|}(sin theta) (standard normalization) with theta-derivatives.
inline Jet legendre_jet(int J, int M, double theta) {
    const int m = std::abs(M);
    const double kappa = 1.0 / specfun::jacobi_form_ratio(J, m);
    return kappa * (cos_power_jet(theta, m) * jacobi_jet(J - m, m, m, theta));
}

/// U_t^{|M|}(theta) = W cos^{|M|+1/2} P_n^{(|M|-b, |M|+b)}(sin theta), unnormalized.
inline double wavefunction_u(const StateLabel &state, double b, double theta) {
    const ScarfParams p{state.m_quantum(), b};
    require_valid(p);
    require_interior(theta, "wavefunction_u");
    const double c = std::cos(theta);
    return rescale_factor(theta, b) * std::pow(c, state.abs_m() + 0.5) *
           specfun::jacobi_poly(state.n(), p.jacobi_alpha(), p.jacobi_beta(),
                                std::sin(theta));
}

/// U with first and second theta-derivatives, by the chain rule.
inline Jet wavefunction_u_jet(const StateLabel &state, double b,
                              double theta) {
    const ScarfParams p{state.m_quantum(), b};
    require_valid(p);
    require_interior(theta, "wavefunction_u_jet");
    return rescale_factor_jet(theta, b) *
           cos_power_jet(theta, state.abs_m() + 0.5) *
           jacobi_jet(state.n(), p.jacobi_alpha(), p.jacobi_beta(), theta);
}

// ---------------------------------------------------------------------------
// Quadrature over theta

/**
 * Gauss-Jacobi rule in x = sin(theta) for the state weight
 * (1 - x)^{|M|-b} (1 + x)^{|M|+b}, which is U^2 / cos(theta) up to the
 * polynomial factor. Integrals of U-products against polynomials in
 * sin(theta) are exact with it.
 */
inline specfun::QuadratureRule state_rule(const ScarfParams &p, int order) {
    require_valid(p);
    return specfun::gauss_jacobi(order, p.jacobi_alpha(), p.jacobi_beta());
}

/**
 * Integral of f(theta) dtheta over (-pi/2, pi/2) using a rule in
 * x = sin(theta): sum_i w_i f(theta_i) / (cos(theta_i) weight(x_i)).
 */
template <class F>
double integrate_dtheta(const specfun::QuadratureRule &rule, F &&f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double c = std::sqrt((1.0 - x) * (1.0 + x));
        acc += rule.weights[i] * f(std::asin(x)) / (c * rule.weight(x));
    }
    return acc;
}

/// N with integral of (N U)^2 dtheta = 1, by Gauss-Jacobi quadrature.
inline double norm_constant(const StateLabel &state, double b, int order = 0) {
    const ScarfParams p{state.m_quantum(), b};
    const auto rule =
        state_rule(p, order > 0 ? order : specfun::default_order(state.t()));
    const double nn = integrate_dtheta(rule, [&](double th) {
        const double u = wavefunction_u(state, b, th);
        return u * u;
    });
    return 1.0 / std::sqrt(nn);
}

/// Evaluator for one normalized eigenstate: parameters plus rule.
class ScarfState {
  public:
    ScarfState(StateLabel label, double b, int order = 0)
        : label_(label), b_(b),
          order_(order > 0 ? order : specfun::default_order(label.t())) {
        require_valid(params());
        norm_ = norm_constant(label_, b_, order_);
    }

    [[nodiscard]] const StateLabel &label() const { return label_; }
    [[nodiscard]] double b() const { return b_; }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] ScarfParams params() const {
        return {label_.m_quantum(), b_};
    }
    [[nodiscard]] double norm() const { return norm_; }

    /// Unnormalized U(theta).
    [[nodiscard]] double u(double theta) const {
        return wavefunction_u(label_, b_, theta);
    }
    /// N U(theta).
    [[nodiscard]] double normalized_u(double theta) const {
        return norm_ * u(theta);
    }
    [[nodiscard]] specfun::QuadratureRule rule() const {
        return state_rule(params(), order_);
    }

  private:
    StateLabel label_;
    double b_;
    int order_;
    double norm_ = 1.0;
};

// ---------------------------------------------------------------------------
// Rescaled harmonics

enum class Convention { paper, normalized };

inline std::string_view to_string(Convention c) {
    return c == Convention::paper ? "paper" : "normalized";
}

inline Convention convention_from_string(std::string_view s) {
    if (s == "paper") {
        return Convention::paper;
    }
    if (s == "normalized") {
        return Convention::normalized;
    }
    throw std::invalid_argument("unknown convention '" + std::string(s) +
                                "' (expected paper|normalized)");
}

/// Constant making e^{iM phi} P_J^{|M|}(sin theta) unit-norm under cos dtheta dphi.
inline double sphere_harmonic_norm(int J, int M) {
    const int m = std::abs(M);
    return std::sqrt((2.0 * J + 1.0) / (4.0 * std::numbers::pi) *
                     std::exp(std::lgamma(J - m + 1.0) -
                              std::lgamma(J + m + 1.0)));
}

inline double harmonic_prefactor(int J, int M, Convention convention) {
    return convention == Convention::paper ? 1.0 : sphere_harmonic_norm(J, M);
}

/// Y_J^M(theta, phi) = e^{iM phi} P_J^{|M|}(sin theta), optionally normalized.
inline std::complex<double> spherical_harmonic(int J, int M, double theta,
                                               double phi,
                                               Convention convention) {
    if (J < 0 || std::abs(M) > J) {
        throw ParameterError("spherical_harmonic: requires |M| <= J");
    }
    const double radial = harmonic_prefactor(J, M, convention) *
                          specfun::assoc_legendre(J, M, std::sin(theta));
    return std::polar(1.0, M * phi) * radial;
}

/// sqrt(cos) W Y_J^M.
inline std::complex<double> rescaled_harmonic(int J, int M, double b,
                                              double theta, double phi,
                                              Convention convention) {
    if (J < 0 || std::abs(M) > J) {
        throw ParameterError("rescaled_harmonic: requires |M| <= J");
    }
    require_interior(theta, "rescaled_harmonic");
    return std::sqrt(std::cos(theta)) * rescale_factor(theta, b) *
           spherical_harmonic(J, M, theta, phi, convention);
}

/// theta-part of the rescaled harmonic with derivatives.
inline Jet rescaled_harmonic_jet(int J, int M, double b, double theta,
                                 Convention convention) {
    if (J < 0 || std::abs(M) > J) {
        throw ParameterError("rescaled_harmonic_jet: requires |M| <= J");
    }
    require_interior(theta, "rescaled_harmonic_jet");
    return harmonic_prefactor(J, M, convention) *
           (rescale_factor_jet(theta, b) * cos_power_jet(theta, 0.5) *
            legendre_jet(J, M, theta));
}

} // namespace scarf::model

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
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/**
 * @file specfun.hpp
 * Special-function kernel: Jacobi polynomials, associated Legendre
 * functions, Gauss-Legendre / Gauss-Jacobi rules and gamma utilities.
 *
 * Everything here is a pure function of its arguments.
 */
namespace scarf::specfun {

/// Natural log of Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive");
    }
    return std::lgamma(x);
}

/// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
inline double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("beta: arguments must be positive");
    }
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace detail {
inline void check_jacobi_params(double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        throw std::domain_error(
            "jacobi: parameters must satisfy alpha > -1 and beta > -1");
    }
}
} // namespace detail

/**
 * Jacobi polynomial P_n^{(alpha,beta)}(x) by the forward three-term
 * recurrence in the degree.
 */
inline double jacobi_poly(int n, double alpha, double beta, double x) {
    detail::check_jacobi_params(alpha, beta);
    if (n < 0) {
        throw std::domain_error("jacobi_poly: degree must be non-negative");
    }
    if (n == 0) {
        return 1.0;
    }
    const double ab = alpha + beta;
    double p_prev = 1.0;
    double p = (alpha + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0);
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + ab;
        const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
        const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
        const double a3 = (c - 2.0) * (c - 1.0) * c;
        const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        const double p_next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = p_next;
    }
    return p;
}

/// k-th x-derivative of P_n^{(alpha,beta)}, from the shifted-parameter identity.
inline double jacobi_poly_derivative(int n, double alpha, double beta,
                                     double x, int k = 1) {
    detail::check_jacobi_params(alpha, beta);
    if (k < 0) {
        throw std::domain_error("jacobi_poly_derivative: negative order");
    }
    if (k > n) {
        return 0.0;
    }
    double scale = 1.0;
    for (int j = 1; j <= k; ++j) {
        scale *= 0.5 * (n + alpha + beta + j);
    }
    return scale * jacobi_poly(n - k, alpha + k, beta + k, x);
}

/**
 * Associated Legendre function P_J^{|M|}(x), standard (Ferrers)
 * normalization without the Condon-Shortley phase:
 * P_J^m(x) = (1 - x^2)^{m/2} d^m/dx^m P_J(x).
 *
 * Evaluated by the upward recurrence in J starting from
 * P_m^m = (2m - 1)!! (1 - x^2)^{m/2}; it does not go through the
 * Jacobi recurrence.
 */
inline double assoc_legendre(int J, int M, double x) {
    const int m = std::abs(M);
    if (J < 0 || m > J) {
        throw std::domain_error("assoc_legendre: requires |M| <= J");
    }
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double pmm = 1.0;
    for (int i = 1; i <= m; ++i) {
        pmm *= (2.0 * i - 1.0) * s;
    }
    if (J == m) {
        return pmm;
    }
    double pm1 = x * (2.0 * m + 1.0) * pmm;
    for (int l = m + 2; l <= J; ++l) {
        const double pl =
            (x * (2.0 * l - 1.0) * pm1 - (l + m - 1.0) * pmm) / (l - m);
        pmm = pm1;
        pm1 = pl;
    }
    return pm1;
}

/// 2^m J! / (J + m)!: ratio between the Jacobi form and the standard P_J^m.
inline double jacobi_form_ratio(int J, int M) {
    const int m = std::abs(M);
    return std::exp(m * std::log(2.0) + std::lgamma(J + 1.0) -
                    std::lgamma(J + m + 1.0));
}

/// (1 - x^2)^{m/2} P_{J-m}^{(m,m)}(x), the Jacobi-polynomial form.
inline double assoc_legendre_jacobi_form(int J, int M, double x) {
    const int m = std::abs(M);
    if (J < 0 || m > J) {
        throw std::domain_error(
            "assoc_legendre_jacobi_form: requires |M| <= J");
    }
    return std::pow((1.0 - x) * (1.0 + x), 0.5 * m) *
           jacobi_poly(J - m, m, m, x);
}

/// Nodes and weights of an n-point Gauss rule on [-1, 1].
struct QuadratureRule {
    int order = 0;
    double alpha = 0.0; ///< weight exponent at x = +1
    double beta = 0.0;  ///< weight exponent at x = -1
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Integral of weight(x) * f(x) over [-1, 1].
    template <class F> double integrate(F &&f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            acc += weights[i] * f(nodes[i]);
        }
        return acc;
    }

    /// Evaluates the weight (1 - x)^alpha (1 + x)^beta.
    [[nodiscard]] double weight(double x) const {
        return std::pow(1.0 - x, alpha) * std::pow(1.0 + x, beta);
    }
};

/**
 * Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta.
 *
 * Nodes start from the Golub-Welsch eigenvalues of the Jacobi matrix and
 * are polished by Newton steps on P_n; weights then come from the
 * closed-form Christoffel numbers, which are accurate to a few ulps even
 * near the endpoints.
 */
inline QuadratureRule gauss_jacobi(int order, double alpha, double beta) {
    detail::check_jacobi_params(alpha, beta);
    if (order < 1) {
        throw std::domain_error("gauss_jacobi: order must be >= 1");
    }
    const int n = order;
    const double ab = alpha + beta;

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            diag(k) = (beta - alpha) / (ab + 2.0);
        } else {
            const double c = 2.0 * k + ab;
            diag(k) = (beta * beta - alpha * alpha) / (c * (c + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        double b2 = 0.0;
        if (k == 1) {
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
                 ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double c = 2.0 * k + ab;
            b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                 (c * c * (c + 1.0) * (c - 1.0));
        }
        sub(k - 1) = std::sqrt(b2);
    }

    std::vector<double> x(n);
    if (n == 1) {
        x[0] = diag(0);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        for (int i = 0; i < n; ++i) {
            x[i] = es.eigenvalues()(i);
        }
    }

    for (double &xi : x) {
        for (int it = 0; it < 8; ++it) {
            const double p = jacobi_poly(n, alpha, beta, xi);
            const double dp = jacobi_poly_derivative(n, alpha, beta, xi);
            const double step = p / dp;
            xi -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(xi))) {
                break;
            }
        }
    }

    // g = 2^{ab+1} G(n+a+1) G(n+b+1) / (G(n+ab+1) G(n+1)), as a product of
    // ratios near 1 so that it stays accurate for large n.
    double g = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 2.0) *
               std::tgamma(beta + 2.0) / std::tgamma(ab + 2.0);
    for (int k = 2; k <= n; ++k) {
        g *= (k + alpha) / k * ((k + beta) / (k + ab));
    }

    QuadratureRule rule;
    rule.order = n;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes = x;
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double dp = jacobi_poly_derivative(n, alpha, beta, x[i]);
        rule.weights[i] = g / ((1.0 - x[i]) * (1.0 + x[i]) * dp * dp);
    }
    // Exact reflection symmetry for symmetric weights.
    if (alpha == beta) {
        for (int i = 0; i < n / 2; ++i) {
            const int j = n - 1 - i;
            const double xs = 0.5 * (x[j] - x[i]);
            const double ws = 0.5 * (rule.weights[i] + rule.weights[j]);
            rule.nodes[i] = -xs;
            rule.nodes[j] = xs;
            rule.weights[i] = ws;
            rule.weights[j] = ws;
        }
        if (n % 2 == 1) {
            rule.nodes[n / 2] = 0.0;
        }
    }
    return rule;
}

/// Gauss-Legendre rule of the given order.
inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) {
        throw std::domain_error("gauss_legendre: order must be >= 1");
    }
    return gauss_jacobi(order, 0.0, 0.0);
}

/// Default rule size for states up to t_max: 2 (t_max + 8).
inline int default_order(int t_max) { return 2 * (std::max(t_max, 0) + 8); }

} // namespace scarf::specfun

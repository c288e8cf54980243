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
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <scarf/specfun.hpp>

#include "oracles.hpp"

using namespace scarf::specfun;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double stirling_log_gamma(double x) {
    const double x3 = x * x * x;
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
           1.0 / (12.0 * x) - 1.0 / (360.0 * x3) + 1.0 / (1260.0 * x3 * x * x);
}

} // namespace

TEST_CASE("log_gamma matches factorials, half integers and Stirling") {
    double log_fact = 0.0;
    for (int n = 1; n <= 30; ++n) {
        CHECK_THAT(log_gamma(n), WithinAbs(log_fact, 1e-12));
        log_fact += std::log(static_cast<double>(n));
    }
    double half = 0.5 * std::log(std::numbers::pi);
    for (int n = 0; n < 15; ++n) {
        CHECK_THAT(log_gamma(n + 0.5), WithinAbs(half, 1e-12));
        half += std::log(n + 0.5);
    }
    for (double x : {30.0, 45.5, 120.25}) {
        CHECK_THAT(log_gamma(x), WithinRel(stirling_log_gamma(x), 1e-14));
    }
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("beta function") {
    CHECK_THAT(beta(2.0, 3.0), WithinRel(1.0 / 12.0, 1e-14));
    CHECK_THAT(beta(0.5, 0.5), WithinRel(std::numbers::pi, 1e-14));
    CHECK_THAT(beta(1.3, 2.7), WithinRel(beta(2.7, 1.3), 1e-15));
    CHECK_THROWS_AS(beta(0.0, 1.0), std::domain_error);
}

TEST_CASE("jacobi_poly matches the explicit hypergeometric sum") {
    const double params[][2] = {{0.0, 0.0}, {1.0, 1.0}, {0.55, 1.45},
                                {-0.45, 0.45}, {2.3, -0.7}, {-0.9, 3.0}};
    for (const auto &ab : params) {
        for (int n = 0; n <= 10; ++n) {
            for (double x : {-0.97, -0.5, -0.1, 0.0, 0.33, 0.8, 0.999}) {
                const double ref = oracle::jacobi_explicit(n, ab[0], ab[1], x);
                CHECK_THAT(jacobi_poly(n, ab[0], ab[1], x),
                           WithinAbs(ref, 1e-11 * std::max(1.0, std::abs(ref))));
            }
        }
    }
    CHECK_THROWS_AS(jacobi_poly(2, -1.0, 0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(jacobi_poly(-1, 0.0, 0.0, 0.1), std::domain_error);
}

TEST_CASE("jacobi derivative agrees with central differences") {
    const double h = 1e-5;
    for (int n = 1; n <= 10; ++n) {
        for (double x : {-0.7, -0.2, 0.15, 0.6}) {
            const double a = 0.55;
            const double b = 1.45;
            const double fd =
                (jacobi_poly(n, a, b, x + h) - jacobi_poly(n, a, b, x - h)) / (2.0 * h);
            const double d = jacobi_poly_derivative(n, a, b, x);
            CHECK(std::abs(d - fd) < 1e-6 * std::max(1.0, std::abs(d)));
            const double fd2 = (jacobi_poly_derivative(n, a, b, x + h) -
                                jacobi_poly_derivative(n, a, b, x - h)) /
                               (2.0 * h);
            const double d2 = jacobi_poly_derivative(n, a, b, x, 2);
            CHECK(std::abs(d2 - fd2) < 1e-6 * std::max(1.0, std::abs(d2)));
        }
    }
    CHECK(jacobi_poly_derivative(3, 0.2, 0.4, 0.3, 4) == 0.0);
}

TEST_CASE("assoc_legendre matches Rodrigues' formula") {
    for (int l = 0; l <= 8; ++l) {
        for (int m = 0; m <= l; ++m) {
            for (double x : {-0.95, -0.4, 0.0, 0.25, 0.7, 0.99}) {
                const double ref = oracle::legendre_rodrigues(l, m, x);
                CHECK_THAT(assoc_legendre(l, m, x),
                           WithinAbs(ref, 1e-11 * std::max(1.0, std::abs(ref))));
                CHECK(assoc_legendre(l, -m, x) == assoc_legendre(l, m, x));
            }
        }
    }
    CHECK_THROWS_AS(assoc_legendre(2, 3, 0.1), std::domain_error);
}

TEST_CASE("Jacobi form of the associated Legendre function") {
    CHECK_THAT(assoc_legendre(2, 1, 0.3), WithinRel(3.0 * 0.3 * std::sqrt(1.0 - 0.09), 1e-14));
    for (int l = 0; l <= 6; ++l) {
        for (int m = 0; m <= l; ++m) {
            double ratio = std::pow(2.0, m);
            for (int k = l + 1; k <= l + m; ++k) {
                ratio /= k;
            }
            CHECK_THAT(jacobi_form_ratio(l, m), WithinRel(ratio, 1e-13));
            for (double x : {-0.6, 0.1, 0.8}) {
                CHECK_THAT(assoc_legendre_jacobi_form(l, m, x),
                           WithinAbs(ratio * oracle::legendre_rodrigues(l, m, x), 1e-12));
            }
        }
    }
}

TEST_CASE("P_J^M has J - |M| roots inside (-1, 1)") {
    for (int J = 0; J <= 8; ++J) {
        for (int M = 0; M <= J; ++M) {
            int changes = 0;
            double prev = assoc_legendre(J, M, -0.999999);
            for (int i = 1; i <= 4000; ++i) {
                const double x = -0.999999 + i * 1.999998 / 4000.0;
                const double v = assoc_legendre(J, M, x);
                if ((v > 0.0) != (prev > 0.0)) {
                    ++changes;
                }
                prev = v;
            }
            CHECK(changes == J - M);
        }
    }
}

TEST_CASE("two-point Gauss rule is +-1/sqrt(3) with unit weights") {
    const auto r = gauss_legendre(2);
    REQUIRE(r.nodes.size() == 2);
    CHECK_THAT(r.nodes[0], WithinAbs(-1.0 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(r.nodes[1], WithinAbs(1.0 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(r.weights[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(r.weights[1], WithinAbs(1.0, 1e-15));
}

TEST_CASE("Gauss-Legendre invariants") {
    for (int order : {1, 5, 16, 33, 64, 96}) {
        const auto r = gauss_legendre(order);
        REQUIRE(r.nodes.size() == static_cast<std::size_t>(order));
        double sum = 0.0;
        for (int i = 0; i < order; ++i) {
            CHECK(r.weights[i] > 0.0);
            CHECK(std::abs(r.nodes[i]) < 1.0);
            CHECK_THAT(r.nodes[i] + r.nodes[order - 1 - i], WithinAbs(0.0, 1e-13));
            if (i > 0) {
                CHECK(r.nodes[i] > r.nodes[i - 1]);
            }
            sum += r.weights[i];
        }
        CHECK_THAT(sum, WithinAbs(2.0, 1e-13));
        for (int k = 0; k <= 2 * order - 1; ++k) {
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1.0);
            CHECK_THAT(r.integrate([k](double x) { return std::pow(x, k); }),
                       WithinAbs(exact, 1e-12));
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), std::domain_error);
}

TEST_CASE("Gauss-Jacobi moments follow the beta function") {
    const double params[][2] = {{-0.45, 0.45}, {0.55, 1.45}, {2.0, 2.0}, {-0.9, 0.3}};
    for (const auto &ab : params) {
        const double a = ab[0];
        const double b = ab[1];
        const auto r = gauss_jacobi(24, a, b);
        const double mass = std::pow(2.0, a + b + 1.0) * beta(a + 1.0, b + 1.0);
        double sum = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK_THAT(sum, WithinRel(mass, 1e-12));
        const double first = std::pow(2.0, a + b + 2.0) * beta(a + 1.0, b + 2.0) - mass;
        CHECK_THAT(r.integrate([](double x) { return x; }), WithinAbs(first, 1e-12 * mass));
        CHECK_THAT(first / mass, WithinAbs((b - a) / (a + b + 2.0), 1e-13));
        // Orthogonality of the Jacobi polynomials under the rule.
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < i; ++j) {
                CHECK_THAT(r.integrate([&](double x) {
                               return jacobi_poly(i, a, b, x) * jacobi_poly(j, a, b, x);
                           }),
                           WithinAbs(0.0, 1e-12));
            }
        }
    }
}

TEST_CASE("default quadrature order") {
    CHECK(default_order(0) == 16);
    CHECK(default_order(5) == 26);
}

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

namespace scarf {

/// Value of a function of theta together with its first two theta-derivatives.
struct Jet {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    friend Jet operator*(const Jet &f, const Jet &g) {
        return {f.v * g.v, f.d1 * g.v + f.v * g.d1,
                f.d2 * g.v + 2.0 * f.d1 * g.d1 + f.v * g.d2};
    }
    friend Jet operator*(double s, const Jet &f) {
        return {s * f.v, s * f.d1, s * f.d2};
    }
    friend Jet operator+(const Jet &f, const Jet &g) {
        return {f.v + g.v, f.d1 + g.d1, f.d2 + g.d2};
    }
    friend Jet operator-(const Jet &f, const Jet &g) {
        return {f.v - g.v, f.d1 - g.d1, f.d2 - g.d2};
    }
};

/// Jet of exp(g) given value and derivatives of the log g: (g, g', g'').
inline Jet jet_from_log(double log_value, double dlog, double d2log) {
    const double v = std::exp(log_value);
    return {v, v * dlog, v * (d2log + dlog * dlog)};
}

/// Jet of q(sin theta) from q(x), q'(x), q''(x).
inline Jet jet_of_sin_argument(double theta, double q, double dq, double d2q) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {q, c * dq, c * c * d2q - s * dq};
}

} // namespace scarf

#pragma once

#include <cmath>

namespace benford::detail {

// Auxiliary functions of the sine/cosine integrals,
//   pi/2 - Si(x) = cos(x) f(x) + sin(x) g(x),
// by their asymptotic series truncated at the smallest term. Accurate
// past 1e-15 absolute for x >= 40.
inline void si_auxiliary_fg(double x, double* f_out, double* g_out) {
    // stop at the smallest term, or once terms drop below 1e-18: both
    // auxiliaries feed absolute targets around 1e-15
    const double inv2 = 1.0 / (x * x);
    double f = 0.0;
    double t = 1.0 / x;
    for (int k = 1; k <= 30; ++k) {
        f += t;
        const double next = -t * (2 * k - 1) * (2 * k) * inv2;
        if (std::abs(next) >= std::abs(t) || std::abs(next) < 1e-18) break;
        t = next;
    }
    double g = 0.0;
    t = inv2;
    for (int k = 1; k <= 30; ++k) {
        g += t;
        const double next = -t * (2 * k) * (2 * k + 1) * inv2;
        if (std::abs(next) >= std::abs(t) || std::abs(next) < 1e-18) break;
        t = next;
    }
    *f_out = f;
    *g_out = g;
}

} // namespace benford::detail

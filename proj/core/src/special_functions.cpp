#include "benford/special_functions.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "si_auxiliary.hpp"

namespace benford {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Below this the degree-4 Taylor polynomials of sinc and sinc^2 are
// accurate to well under one ulp.
constexpr double kSeriesCutoff = 1e-4;

[[noreturn]] void throw_nonfinite(const char* fn, double x) {
    throw std::domain_error(std::string(fn) + ": argument must be finite, got " +
                            std::to_string(x));
}

// Si(x) by the alternating power series, adequate for |x| <= 4.
double si_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k <= 40; ++k) {
        term *= -x2 * (2 * k - 1) / ((2.0 * k) * (2 * k + 1) * (2 * k + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// pi/2 - Si(x) for moderate x via the continued fraction for the
// exponential integral on the imaginary axis,
//   E1(ix) = e^{-ix} / (ix + 1 - 1/(ix + 3 - 4/(ix + 5 - ...))),
// evaluated with the modified Lentz scheme. Si(x) = pi/2 + Im E1(ix).
double si_complement_lentz(double x) {
    const std::complex<double> z(0.0, x);
    constexpr double tiny = 1e-300;
    std::complex<double> b = z + 1.0;
    std::complex<double> f = (b == 0.0) ? std::complex<double>(tiny) : b;
    std::complex<double> c = f;
    std::complex<double> d = 0.0;
    for (int k = 1; k < 400; ++k) {
        const double ak = -static_cast<double>(k) * k;
        b += 2.0;
        d = b + ak * d;
        if (d == 0.0) d = tiny;
        c = b + ak / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const std::complex<double> delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    const std::complex<double> e1 = std::exp(-z) / f;
    return -e1.imag();
}

double si_complement_asymptotic(double x) {
    double f = 0.0;
    double g = 0.0;
    detail::si_auxiliary_fg(x, &f, &g);
    return std::cos(x) * f + std::sin(x) * g;
}

} // namespace

double sinc(double x) {
    if (!std::isfinite(x)) throw_nonfinite("sinc", x);
    if (std::abs(x) < kSeriesCutoff) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + (x2 * x2) / 120.0;
    }
    return std::sin(x) / x;
}

double sinc_squared(double x) {
    if (!std::isfinite(x)) throw_nonfinite("sinc_squared", x);
    if (std::abs(x) < kSeriesCutoff) {
        const double x2 = x * x;
        return 1.0 - x2 / 3.0 + (2.0 / 45.0) * (x2 * x2);
    }
    const double s = std::sin(x) / x;
    return s * s;
}

double sine_integral(double x) {
    if (!std::isfinite(x)) throw_nonfinite("sine_integral", x);
    const double ax = std::abs(x);
    const double si = (ax <= 4.0) ? si_series(ax) : kHalfPi - sine_integral_complement(ax);
    return std::signbit(x) ? -si : si;
}

double sine_integral_complement(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("sine_integral_complement: requires finite x >= 0, got " +
                                std::to_string(x));
    }
    if (x <= 4.0) return kHalfPi - si_series(x);
    if (x < 40.0) return si_complement_lentz(x);
    return si_complement_asymptotic(x);
}

double trigamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("trigamma: requires finite x > 0, got " + std::to_string(x));
    }
    // Shift into the asymptotic regime by the recurrence
    // psi_1(x) = 1/x^2 + psi_1(x+1), then expand with Bernoulli terms
    // through B8. The shift point keeps the truncation below 1e-12
    // relative everywhere.
    double acc = 0.0;
    while (x < 15.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv + 0.5 * inv2 +
        inv * inv2 *
            (1.0 / 6.0 + inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0))));
    return acc + series;
}

} // namespace benford

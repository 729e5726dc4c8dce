#pragma once

namespace benford {

// A value together with a bound on its absolute error. The bound is a
// guarantee where one is computable (quadrature, truncated sums) and a
// documented estimate otherwise; it is always finite and non-negative.
struct EvalResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
};

// sin(x)/x with the removable singularity handled. Even, |sinc(x)| <= 1.
double sinc(double x);

// sinc(x)^2 in [0, 1]. Uses the Taylor polynomial 1 - x^2/3 + 2x^4/45
// below |x| = 1e-4 so the square is not rounded twice near zero.
double sinc_squared(double x);

// Sine integral Si(x) = integral of sin(t)/t over [0, x]. Odd,
// Si(x) -> pi/2 as x -> +inf, absolute error <= 1e-13 for |x| <= 1e6.
double sine_integral(double x);

// pi/2 - Si(x) for x >= 0, computed without subtracting nearly equal
// quantities for large x. Decays like cos(x)/x.
double sine_integral_complement(double x);

// Trigamma psi_1(x) = sum_{k>=0} 1/(x+k)^2, x > 0. Strictly decreasing,
// bracketed by (1/x, 1/x + 1/x^2).
double trigamma(double x);

} // namespace benford

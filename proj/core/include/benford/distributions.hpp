#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace benford {

// A batch of samples of Y = ln X, tagged with the generating family and
// the seed that produced it. Every entry is finite.
struct SampleBatch {
    std::vector<double> log_values;
    std::string params_tag;
    std::uint64_t seed = 0;
};

// The sinc^2-log family: Y = ln X has density (a/pi) sinc^2(a y), which
// is entire of exponential type 2a, so the offset trapezoidal sum with
// step h reproduces the integral exactly for every h < pi/a. X is then
// an exact Benford variable in every integer base 2 <= b < e^{pi/a}.
class SincLogDistribution {
  public:
    // a > 0 and finite, else std::domain_error.
    explicit SincLogDistribution(double a);

    double shape() const { return a_; }
    // Exponential type of the log-domain density, always 2a.
    double exponential_type() const { return 2.0 * a_; }

    // Density of Y: (a/pi) sinc^2(a y). Even, non-negative.
    double pdf_y(double y) const;
    // Density of X on (0, inf): pdf_y(ln x)/x. x <= 0 is a domain error.
    double pdf_x(double x) const;

    // P{Y <= y} = 1/2 + (Si(2ay) - sin^2(ay)/(ay)) / pi.
    double cdf_y(double y) const;
    // P{Y > y} for y >= 0, evaluated without cancellation. Bounded above
    // by 1/(pi a y).
    double cdf_y_complement(double y) const;

    // Inverse CDF: |cdf_y(result) - u| <= 1e-12, monotone in u.
    // u outside (0, 1) is a domain error.
    double quantile_y(double u) const;

    // n inverse-CDF samples of Y, deterministic in (n, seed, a). The
    // stream is split into fixed 65536-sample chunks whose sub-seeds
    // derive from (seed, chunk index), so the output is identical no
    // matter how many chunks run or on how many threads.
    SampleBatch sample_y(std::int64_t n, std::uint64_t seed) const;

    // e^{pi/a}: exclusive upper bound on bases making X Benford.
    double max_base() const;
    // Largest integer base strictly below max_base().
    int max_admissible_integer_base() const;
    // ln(base) < pi/a, i.e. base < e^{pi/a}.
    bool admits_base(int base) const;

    // Truncated moment integral_0^{t_max} x^lambda pdf_x(x) dx, evaluated
    // in the log domain. Strictly increasing in t_max; grows without
    // bound because the full moments do not exist. Throws
    // std::range_error when e^{lambda ln t_max} overflows.
    double partial_moment(int lambda, double t_max) const;

  private:
    double a_;
};

// Piecewise family on (0, inf): density sum_m p_m / (x ln b) on the
// intervals [b^m, b^{m+1}), m in [m0, m1]. Exactly Benford in base b for
// any admissible weight sequence.
class PiecewiseLogUniform {
  public:
    // base >= 2; weights non-negative, summing to 1 within 1e-12 (then
    // renormalized so the stored sum is exactly 1). m1 = m0 + size - 1.
    PiecewiseLogUniform(int base, int m0, std::vector<double> weights);

    int base() const { return base_; }
    int m0() const { return m0_; }
    int m1() const { return m0_ + static_cast<int>(weights_.size()) - 1; }
    const std::vector<double>& weights() const { return weights_; }

    // p_m / (x ln b) on [b^m, b^{m+1}), zero outside the supported range.
    // x <= 0 is a domain error.
    double pdf(double x) const;

    // P{1 <= S(X) <= s} for s in [1, b), as the sum of per-interval log
    // masses; equals log_b(s) to machine precision for every valid spec.
    double digit_cdf(double s) const;

    // ln X samples: categorical draw of the interval by weight, then a
    // log-uniform position inside it. Same chunked determinism contract
    // as SincLogDistribution::sample_y.
    SampleBatch sample(std::int64_t n, std::uint64_t seed) const;

  private:
    int base_;
    int m0_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

} // namespace benford

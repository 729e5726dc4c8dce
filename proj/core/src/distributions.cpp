#include "benford/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "benford/quadrature.hpp"
#include "benford/special_functions.hpp"
#include "parallel.hpp"

namespace benford {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kChunkSize = 65536;
constexpr double kUClampLo = 0x1p-53;
constexpr double kUClampHi = 1.0 - 0x1p-53;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Sub-seed for one 65536-sample chunk of a stream; depends only on the
// user seed and the chunk index, never on how the chunks are executed.
std::uint64_t chunk_seed(std::uint64_t seed, std::int64_t chunk) {
    return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(chunk));
}

double uniform_from_engine(std::mt19937_64& eng) {
    const double u = static_cast<double>(eng() >> 11) * 0x1p-53;
    return std::clamp(u, kUClampLo, kUClampHi);
}

// x * b^e without overflowing intermediates; |e ln b| can approach the
// double exponent range, so split the power once when needed.
double scale_by_power(double x, double b, std::int64_t e) {
    const double mag = static_cast<double>(e > 0 ? e : -e) * std::log(b);
    if (mag > 690.0) {
        const std::int64_t e1 = e / 2;
        return (x * std::pow(b, static_cast<double>(e1))) *
               std::pow(b, static_cast<double>(e - e1));
    }
    return x * std::pow(b, static_cast<double>(e));
}

} // namespace

SincLogDistribution::SincLogDistribution(double a) : a_(a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("SincLogDistribution: shape a must be finite and > 0");
    }
}

double SincLogDistribution::pdf_y(double y) const {
    if (!std::isfinite(y)) throw std::domain_error("pdf_y: requires finite y");
    return (a_ / kPi) * sinc_squared(a_ * y);
}

double SincLogDistribution::pdf_x(double x) const {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("pdf_x: requires finite x > 0");
    return (a_ / (kPi * x)) * sinc_squared(a_ * std::log(x));
}

double SincLogDistribution::cdf_y_complement(double y) const {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw std::domain_error("cdf_y_complement: requires finite y >= 0");
    }
    // integral of the density over (y, inf):
    //   (1/pi) [ (pi/2 - Si(2ay)) + sin^2(ay)/(ay) ]
    const double z = a_ * y;
    const double s = std::sin(z);
    const double ripple = (z == 0.0) ? 0.0 : s * s / z;
    return (sine_integral_complement(2.0 * z) + ripple) / kPi;
}

double SincLogDistribution::cdf_y(double y) const {
    if (!std::isfinite(y)) throw std::domain_error("cdf_y: requires finite y");
    return (y >= 0.0) ? 1.0 - cdf_y_complement(y) : cdf_y_complement(-y);
}

namespace {

// Solve cdf_y_complement(y) = target on a bracket [lo, hi] with
// t(lo) >= target >= t(hi). Newton steps on the complement with a
// bisection safeguard; runs the residual down to evaluation noise so
// round-tripping through the CDF stays accurate even where the density
// is small.
double invert_tail(const SincLogDistribution& dist, double target, double lo, double hi) {
    constexpr double kResidualGoal = 1e-15;
    double y = 0.5 * (lo + hi);
    for (int iter = 0; iter < 300; ++iter) {
        const double r = dist.cdf_y_complement(y) - target;
        if (std::abs(r) <= kResidualGoal) break;
        if (r > 0.0) {
            lo = y; // tail too heavy: move right
        } else {
            hi = y;
        }
        const double width = hi - lo;
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(y), 1.0)) {
            break;
        }
        const double p = dist.pdf_y(y);
        const double newton = y + r / p; // d(complement)/dy = -pdf
        y = (p > 0.0 && newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    }
    return y;
}

} // namespace

double SincLogDistribution::quantile_y(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("quantile_y: u must lie in (0, 1)");
    }
    if (u == 0.5) return 0.0;
    const double target = std::min(u, 1.0 - u);
    // Bracket from the tail law: complement(y) <= 1/(pi a y), growing
    // geometrically from pi/a until it straddles the target.
    double hi = kPi / a_;
    while (cdf_y_complement(hi) > target) hi *= 2.0;
    const double y = invert_tail(*this, target, 0.0, hi);
    return (u < 0.5) ? -y : y;
}

SampleBatch SincLogDistribution::sample_y(std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw std::domain_error("sample_y: n must be >= 1");

    // Quantile lookup table: brackets for the per-sample Newton solves.
    constexpr int kTableCells = 1024;
    std::vector<double> node(kTableCells + 1);
    node[0] = quantile_y(kUClampLo);
    node[kTableCells] = quantile_y(kUClampHi);
    for (int i = 1; i < kTableCells; ++i) {
        node[i] = quantile_y(static_cast<double>(i) / kTableCells);
    }

    SampleBatch batch;
    batch.seed = seed;
    {
        std::ostringstream tag;
        tag.precision(17);
        tag << "sinc2-log(a=" << a_ << ")";
        batch.params_tag = tag.str();
    }
    batch.log_values.assign(static_cast<std::size_t>(n), 0.0);

    const auto sample_one = [&](double u) {
        if (u == 0.5) return 0.0;
        int cell = static_cast<int>(u * kTableCells);
        cell = std::clamp(cell, 0, kTableCells - 1);
        const double target = std::min(u, 1.0 - u);
        double lo, hi;
        if (u >= 0.5) {
            lo = std::max(node[cell], 0.0);
            hi = std::max(node[cell + 1], 0.0);
        } else {
            lo = std::max(-node[cell + 1], 0.0);
            hi = std::max(-node[cell], 0.0);
        }
        if (!(hi > lo)) { // degenerate cell, fall back to the global bracket
            lo = 0.0;
            hi = kPi / a_;
            while (cdf_y_complement(hi) > target) hi *= 2.0;
        }
        const double y = invert_tail(*this, target, lo, hi);
        return (u < 0.5) ? -y : y;
    };

    const std::int64_t chunks = (n + kChunkSize - 1) / kChunkSize;
    detail::run_blocks(static_cast<int>(chunks), [&](int c) {
        std::mt19937_64 eng(chunk_seed(seed, c));
        const std::int64_t begin = static_cast<std::int64_t>(c) * kChunkSize;
        const std::int64_t end = std::min(n, begin + kChunkSize);
        for (std::int64_t i = begin; i < end; ++i) {
            batch.log_values[static_cast<std::size_t>(i)] = sample_one(uniform_from_engine(eng));
        }
    });
    return batch;
}

double SincLogDistribution::max_base() const { return std::exp(kPi / a_); }

bool SincLogDistribution::admits_base(int base) const {
    if (base < 2) return false;
    return a_ * std::log(static_cast<double>(base)) < kPi;
}

int SincLogDistribution::max_admissible_integer_base() const {
    int b = static_cast<int>(std::floor(max_base()));
    while (b > 2 && !admits_base(b)) --b;
    while (admits_base(b + 1)) ++b;
    return b < 2 ? 1 : b; // below 2 no integer base qualifies
}

double SincLogDistribution::partial_moment(int lambda, double t_max) const {
    if (lambda < 1) throw std::domain_error("partial_moment: lambda must be a positive integer");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw std::domain_error("partial_moment: requires finite t_max > 0");
    }
    const double lam = static_cast<double>(lambda);
    const double y_hi = std::log(t_max);
    if (lam * y_hi > 700.0) {
        throw std::range_error("partial_moment: e^{lambda ln t_max} overflows double");
    }
    // In the log domain: (a/pi) integral of sinc^2(a y) e^{lambda y} up
    // to ln t_max. Below y_lo the exponential makes the rest negligible.
    const double y_lo = std::min(y_hi, 0.0) - 5.0 - 45.0 / lam;
    const auto integrand = [&](double y) { return pdf_y(y) * std::exp(lam * y); };
    const double scale = std::max(1.0, (a_ / kPi) * std::exp(lam * y_hi) / lam);
    return adaptive_integrate(integrand, y_lo, y_hi, 1e-10 * scale).value;
}

PiecewiseLogUniform::PiecewiseLogUniform(int base, int m0, std::vector<double> weights)
    : base_(base), m0_(m0), weights_(std::move(weights)) {
    if (base_ < 2) throw std::domain_error("PiecewiseLogUniform: base must be an integer >= 2");
    if (weights_.empty()) throw std::domain_error("PiecewiseLogUniform: needs at least one weight");
    double total = 0.0;
    for (const double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::domain_error("PiecewiseLogUniform: weights must be finite and >= 0");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::domain_error("PiecewiseLogUniform: weights must sum to 1 within 1e-12");
    }
    // Renormalize, then absorb the rounding residual into the largest
    // weight so the stored weights sum to exactly 1.
    for (double& w : weights_) w /= total;
    const std::size_t imax = static_cast<std::size_t>(
        std::max_element(weights_.begin(), weights_.end()) - weights_.begin());
    detail::KahanSum rest;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i != imax) rest.add(weights_[i]);
    }
    weights_[imax] = 1.0 - rest.value();

    cumulative_.resize(weights_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        run += weights_[i];
        cumulative_[i] = run;
    }
    cumulative_.back() = 1.0;
}

double PiecewiseLogUniform::pdf(double x) const {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("PiecewiseLogUniform::pdf: requires finite x > 0");
    }
    const double bd = static_cast<double>(base_);
    const double ln_b = std::log(bd);
    std::int64_t m = static_cast<std::int64_t>(std::floor(std::log(x) / ln_b));
    if (m < m0() - 1 || m > m1() + 1) return 0.0;
    // settle log-rounding at the interval boundaries, snapping x within
    // an ulp of b^{m+1} upward like decompose does
    const double lo = scale_by_power(1.0, bd, m);
    const double hi = scale_by_power(1.0, bd, m + 1);
    if (x < lo) {
        --m;
    } else if (x >= hi || hi - x <= hi * std::numeric_limits<double>::epsilon()) {
        ++m;
    }
    if (m < m0() || m > m1()) return 0.0;
    return weights_[static_cast<std::size_t>(m - m0())] / (x * ln_b);
}

double PiecewiseLogUniform::digit_cdf(double s) const {
    if (!(s >= 1.0) || !(s < static_cast<double>(base_))) {
        throw std::domain_error("PiecewiseLogUniform::digit_cdf: s must lie in [1, base)");
    }
    // P{b^m <= X <= b^m s} = p_m log_b(s) on each interval; summing the
    // per-interval masses gives log_b(s) exactly since the weights sum
    // to 1.
    const double log_b_s = std::log(s) / std::log(static_cast<double>(base_));
    detail::KahanSum acc;
    for (const double w : weights_) acc.add(w * log_b_s);
    return acc.value();
}

SampleBatch PiecewiseLogUniform::sample(std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw std::domain_error("PiecewiseLogUniform::sample: n must be >= 1");
    SampleBatch batch;
    batch.seed = seed;
    {
        std::ostringstream tag;
        tag << "piecewise(b=" << base_ << ", m0=" << m0_ << ", m1=" << m1() << ")";
        batch.params_tag = tag.str();
    }
    batch.log_values.assign(static_cast<std::size_t>(n), 0.0);
    const double ln_b = std::log(static_cast<double>(base_));

    // One uniform per sample: the categorical index comes from the
    // cumulative weights and the leftover position inside the chosen
    // interval is reused as the log-uniform coordinate.
    const auto sample_one = [&](double u) {
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        const std::size_t idx =
            std::min(static_cast<std::size_t>(it - cumulative_.begin()), weights_.size() - 1);
        const double c_prev = (idx == 0) ? 0.0 : cumulative_[idx - 1];
        double pos = (u - c_prev) / weights_[idx];
        pos = std::clamp(pos, 0.0, kUClampHi);
        return (static_cast<double>(m0_) + static_cast<double>(idx) + pos) * ln_b;
    };

    const std::int64_t chunks = (n + kChunkSize - 1) / kChunkSize;
    detail::run_blocks(static_cast<int>(chunks), [&](int c) {
        std::mt19937_64 eng(chunk_seed(seed, c));
        const std::int64_t begin = static_cast<std::int64_t>(c) * kChunkSize;
        const std::int64_t end = std::min(n, begin + kChunkSize);
        for (std::int64_t i = begin; i < end; ++i) {
            batch.log_values[static_cast<std::size_t>(i)] = sample_one(uniform_from_engine(eng));
        }
    });
    return batch;
}

} // namespace benford

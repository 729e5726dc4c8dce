#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "benford/special_functions.hpp"

namespace benford {

class SincLogDistribution;

// How the dropped |m| > m_trunc portion of an infinite grid sum is
// reported: as a rigorous bound only, or with a trigamma-based estimate
// alongside the bound.
enum class TailPolicy { kBound, kTrigammaEstimate };

// Offset infinite trapezoidal sum h * sum_{|m| <= m_trunc} f((m+sigma) h).
// In the Benford application h = ln(base).
struct TrapzConfig {
    double h = 1.0;
    double sigma = 0.0;
    std::int64_t m_trunc = 10'000'000;
    TailPolicy tail_policy = TailPolicy::kBound;

    // h > 0, sigma in [0, 1), m_trunc >= 1; throws std::domain_error.
    void validate() const;
};

struct TrapzResult {
    double sum = 0.0;
    // Rigorous: the infinite sum lies in [sum - tail_bound, sum + tail_bound].
    double tail_bound = 0.0;
    // Refined tail size under TailPolicy::kTrigammaEstimate, otherwise
    // equal to tail_bound. Not a guarantee; tail_bound stays one.
    double tail_estimate = 0.0;
    std::int64_t terms_used = 0;
};

// A summand or integrand evaluated to a non-finite value.
class EvaluationError : public std::runtime_error {
  public:
    explicit EvaluationError(double grid_point)
        : std::runtime_error("non-finite function value at grid point " +
                             std::to_string(grid_point)),
          grid_point_(grid_point) {}
    double grid_point() const { return grid_point_; }

  private:
    double grid_point_;
};

// Adaptive integration ran out of subdivisions before meeting the
// tolerance; carries the best estimate and the bound it did achieve.
class SubdivisionLimitError : public std::runtime_error {
  public:
    explicit SubdivisionLimitError(EvalResult best)
        : std::runtime_error("adaptive_integrate: subdivision limit reached, achieved bound " +
                             std::to_string(best.abs_error_bound)),
          best_(best) {}
    const EvalResult& best() const { return best_; }

  private:
    EvalResult best_;
};

// Generic offset-sum engine. `f` is evaluated at every grid point
// (m + sigma) h for |m| <= m_trunc; `tail` maps the config to a bound on
// the dropped part of the infinite sum. Terms accumulate pairwise
// (+m with -m) from large |m| down, with Kahan compensation.
template <class F, class Tail>
TrapzResult trapz_offset_sum(F&& f, const TrapzConfig& cfg, Tail&& tail) {
    cfg.validate();
    double sum = 0.0;
    double comp = 0.0;
    const auto add = [&](double term) {
        const double t = term - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    };
    const auto eval = [&](std::int64_t m) {
        const double y = (static_cast<double>(m) + cfg.sigma) * cfg.h;
        const double v = f(y);
        if (!std::isfinite(v)) throw EvaluationError(y);
        return v;
    };
    for (std::int64_t m = cfg.m_trunc; m >= 1; --m) {
        add(eval(m) + eval(-m));
    }
    add(eval(0));

    TrapzResult result;
    result.sum = cfg.h * sum;
    result.tail_bound = tail(cfg);
    result.tail_estimate = result.tail_bound;
    result.terms_used = 2 * cfg.m_trunc + 1;
    return result;
}

// Specialized grid sum of the sinc^2-log density,
//   h * sum_{|m| <= m_trunc} pdf_y((m + sigma) h),
// which equals 1 up to the reported tail whenever h < pi/shape. Uses a
// rotation recurrence for the sines and a deterministic blockwise
// reduction, so results are bit-identical across thread counts.
//
// tail_bound is 2 / (pi a h (m_trunc - 1)) from sin^2 <= 1 plus integral
// comparison; under TailPolicy::kTrigammaEstimate, tail_estimate refines
// it to (psi_1(m+1+sigma) + psi_1(m+1-sigma)) / (2 pi a h).
TrapzResult trapz_pdf_sum(const SincLogDistribution& dist, const TrapzConfig& cfg);

// Adaptive Gauss-Kronrod (G7,K15) bisection on [lo, hi] with a total
// absolute-error budget of tol, split proportionally to subinterval
// width. Returns the estimate and the accumulated error bound, which
// meets tol up to a roundoff floor of a few ulps of the integral of |f|.
// Throws SubdivisionLimitError when the depth cap cannot meet tol and
// EvaluationError when f turns non-finite.
EvalResult adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                              double tol);

} // namespace benford

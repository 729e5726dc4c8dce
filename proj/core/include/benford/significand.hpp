#pragma once

#include <cstdint>
#include <vector>

#include "benford/distributions.hpp"
#include "benford/special_functions.hpp"

namespace benford {

// Integer radix b >= 2. Benford machinery is defined for integer bases
// only; anything else is rejected at validation.
struct BaseSpec {
    int b = 10;
    void validate() const;
};

// Decomposition x = b^m * s with significand s in [1, b) and fraction
// f = log_b(s) = {log_b x} in [0, 1).
struct SigDecomp {
    double s = 1.0;
    std::int64_t m = 0;
    double f = 0.0;
};

enum class TableKind { kTheoretical, kEmpirical };

// Per-digit table over d in {1, ..., b-1}; entries[d-1] belongs to d.
// Theoretical tables hold probabilities, empirical ones hold counts.
struct DigitTable {
    BaseSpec base;
    std::vector<double> entries;
    TableKind kind = TableKind::kTheoretical;
    double total() const;
};

// Significand/exponent/fraction of a positive real. Inputs within one
// ulp of b^k snap to (s = 1, m = k).
SigDecomp decompose(double x, BaseSpec base);

// Fractional part of y / ln(b): the fraction F of X = e^y computed
// entirely in the log domain.
double frac_log(double y, BaseSpec base);

// Strong Benford law: P{1 <= S <= s_val} = log_b(s_val), s_val in [1, b).
double benford_cdf(double s_val, BaseSpec base);

// P{leading digit = d} = log_b(1 + 1/d), d in {1, ..., b-1}.
double benford_prob(int digit, BaseSpec base);

// Leading digit of e^y in base b, from the log-domain fraction; the
// decompose snap rule applies at digit boundaries. Never goes through
// decimal formatting.
int leading_digit_from_log(double y, BaseSpec base);

// P{0 <= F <= sigma} for X ~ sinc^2-log(a), by direct summation of CDF
// increments over the grid m in [-m_trunc, m_trunc] with step ln(b).
// abs_error_bound is the truncation bound 2 / (pi a m_trunc ln b). Works
// in any regime; outside ln(b) < pi/a it simply reports the non-uniform
// truth.
EvalResult fraction_cdf_from_dist(const SincLogDistribution& dist, BaseSpec base, double sigma,
                                  std::int64_t m_trunc);

// Theoretical leading-digit law of the sinc^2-log family in base b.
// Every entry is summed directly (nothing assumes the Benford form);
// each carries truncation error at most digit_law_tail_bound(...).
DigitTable digit_law_from_dist(const SincLogDistribution& dist, BaseSpec base,
                               std::int64_t m_trunc);
double digit_law_tail_bound(const SincLogDistribution& dist, BaseSpec base,
                            std::int64_t m_trunc);

// Leading-digit counts of a sample batch of y = ln x values.
DigitTable empirical_digit_table(const SampleBatch& batch, BaseSpec base);

} // namespace benford

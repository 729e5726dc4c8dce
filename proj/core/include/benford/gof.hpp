#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace benford {

// Outcome of a goodness-of-fit test. reject_at maps significance levels
// {0.05, 0.01, 0.001} to whether the hypothesis is rejected there;
// always consistent with p_value.
struct GofReport {
    double statistic = 0.0;
    std::int64_t df_or_n = 0;
    double p_value = 1.0;
    std::map<double, bool> reject_at;
    std::string warning; // empty unless something is worth flagging
};

// Pearson chi-square of observed counts against expected category
// probabilities (same length k >= 2, probabilities summing to 1 within
// 1e-9). p-value from the upper regularized incomplete gamma at
// df = k - 1. A category with zero expected probability and nonzero
// observed count is a domain error; a total count below 5k only sets
// the warning.
GofReport chi_square_gof(const std::vector<std::int64_t>& observed,
                         const std::vector<double>& expected_probs);

// Two-sided Kolmogorov-Smirnov test of uniformity on [0, 1); asymptotic
// p-value kolmogorov_q(sqrt(n) * D_n), adequate for n >= 35.
GofReport ks_uniform(const std::vector<double>& values);

// Upper/lower regularized incomplete gamma, s > 0, x >= 0.
double regularized_gamma_q(double s, double x);
double regularized_gamma_p(double s, double x);

// Kolmogorov limiting distribution
// Q(t) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 t^2}, with the dual theta
// series below t = 1.18.
double kolmogorov_q(double t);

} // namespace benford

#include "benford/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace benford {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlphas[3] = {0.05, 0.01, 0.001};

// Lower regularized incomplete gamma by its power series, for x < s + 1.
double gamma_p_series(double s, double x) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < 600; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Upper regularized incomplete gamma by modified Lentz, for x >= s + 1.
double gamma_q_lentz(double s, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 600; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

void check_gamma_args(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s) || !(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("regularized incomplete gamma: requires s > 0 and x >= 0");
    }
}

std::map<double, bool> reject_map(double p_value) {
    std::map<double, bool> rejects;
    for (const double alpha : kAlphas) rejects[alpha] = p_value < alpha;
    return rejects;
}

} // namespace

double regularized_gamma_p(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    return (x < s + 1.0) ? gamma_p_series(s, x) : 1.0 - gamma_q_lentz(s, x);
}

double regularized_gamma_q(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 1.0;
    return (x < s + 1.0) ? 1.0 - gamma_p_series(s, x) : gamma_q_lentz(s, x);
}

double kolmogorov_q(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("kolmogorov_q: requires finite t >= 0");
    }
    if (t == 0.0) return 1.0;
    if (t < 1.18) {
        // dual theta series (Marsaglia et al.): converges instantly for
        // small t where the alternating form is slow
        const double q = std::exp(-kPi * kPi / (8.0 * t * t));
        const double cdf = std::sqrt(2.0 * kPi) / t *
                           (q + std::pow(q, 9.0) + std::pow(q, 25.0) + std::pow(q, 49.0));
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * static_cast<double>(j) * j * t * t);
        sum += sign * term;
        if (term < 1e-18) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

GofReport chi_square_gof(const std::vector<std::int64_t>& observed,
                         const std::vector<double>& expected_probs) {
    const std::size_t k = observed.size();
    if (k < 2 || expected_probs.size() != k) {
        throw std::domain_error("chi_square_gof: needs matching categories, k >= 2");
    }
    double prob_total = 0.0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (observed[i] < 0) throw std::domain_error("chi_square_gof: negative count");
        if (!(expected_probs[i] >= 0.0) || !std::isfinite(expected_probs[i])) {
            throw std::domain_error("chi_square_gof: probabilities must be finite and >= 0");
        }
        if (expected_probs[i] == 0.0 && observed[i] > 0) {
            throw std::domain_error(
                "chi_square_gof: zero expected probability with nonzero observed count");
        }
        prob_total += expected_probs[i];
        n += observed[i];
    }
    if (std::abs(prob_total - 1.0) > 1e-9) {
        throw std::domain_error("chi_square_gof: probabilities must sum to 1 within 1e-9");
    }
    if (n < 1) throw std::domain_error("chi_square_gof: total count must be >= 1");

    const double nd = static_cast<double>(n);
    double statistic = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (expected_probs[i] == 0.0) continue; // zero expected, zero observed
        const double expect = nd * expected_probs[i];
        const double diff = static_cast<double>(observed[i]) - expect;
        statistic += diff * diff / expect;
    }

    GofReport report;
    report.statistic = statistic;
    report.df_or_n = static_cast<std::int64_t>(k) - 1;
    report.p_value = regularized_gamma_q(0.5 * static_cast<double>(report.df_or_n),
                                         0.5 * statistic);
    report.reject_at = reject_map(report.p_value);
    if (nd < 5.0 * static_cast<double>(k)) {
        report.warning = "total count " + std::to_string(n) + " is below 5 x " +
                         std::to_string(k) + " categories; chi-square approximation may be poor";
    }
    return report;
}

GofReport ks_uniform(const std::vector<double>& values) {
    if (values.empty()) throw std::domain_error("ks_uniform: needs at least one value");
    std::vector<double> sorted(values);
    for (const double v : sorted) {
        if (!(v >= 0.0) || !(v < 1.0)) {
            throw std::domain_error("ks_uniform: values must lie in [0, 1)");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d_stat = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double id = static_cast<double>(i);
        d_stat = std::max({d_stat, (id + 1.0) / n - sorted[i], sorted[i] - id / n});
    }

    GofReport report;
    report.statistic = d_stat;
    report.df_or_n = static_cast<std::int64_t>(sorted.size());
    report.p_value = kolmogorov_q(std::sqrt(n) * d_stat);
    report.reject_at = reject_map(report.p_value);
    return report;
}

} // namespace benford

#include "benford/significand.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "si_auxiliary.hpp"

namespace benford {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// x * b^e with one split so intermediates never leave double range.
double scale_by_power(double x, double b, std::int64_t e) {
    const double mag = static_cast<double>(e > 0 ? e : -e) * std::log(b);
    if (mag > 690.0) {
        const std::int64_t e1 = e / 2;
        return (x * std::pow(b, static_cast<double>(e1))) *
               std::pow(b, static_cast<double>(e - e1));
    }
    return x * std::pow(b, static_cast<double>(e));
}

// Sum over m in [-m_trunc, m_trunc] of cdf_y((m+u) h) - cdf_y((m+l) h)
// for 0 <= l <= u <= 1, rearranged through the upper tail so no term
// suffers cancellation against 1.
double cdf_increment_sum(const SincLogDistribution& dist, double h, double l, double u,
                         std::int64_t m_trunc) {
    const auto tail = [&](double y) { return dist.cdf_y_complement(y); };
    const double wings = detail::blockwise_sum(m_trunc, [&](std::int64_t m) {
        const double md = static_cast<double>(m);
        return (tail((md + l) * h) - tail((md + u) * h)) +
               (tail((md - u) * h) - tail((md - l) * h));
    });
    return wings + (tail(l * h) - tail(u * h));
}

double truncation_bound(const SincLogDistribution& dist, double h, std::int64_t m_trunc) {
    return 2.0 / (kPi * dist.shape() * static_cast<double>(m_trunc) * h);
}

} // namespace

void BaseSpec::validate() const {
    if (b < 2) throw std::domain_error("BaseSpec: base must be an integer >= 2");
}

double DigitTable::total() const {
    detail::KahanSum acc;
    for (const double e : entries) acc.add(e);
    return acc.value();
}

SigDecomp decompose(double x, BaseSpec base) {
    base.validate();
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("decompose: requires finite x > 0, got " + std::to_string(x));
    }
    const double bd = static_cast<double>(base.b);
    const double ln_b = std::log(bd);
    std::int64_t m = static_cast<std::int64_t>(std::floor(std::log(x) / ln_b));
    double s = scale_by_power(x, bd, -m);
    while (s >= bd) {
        s /= bd;
        ++m;
    }
    while (s < 1.0) {
        s *= bd;
        --m;
    }
    // inputs within an ulp of b^{k} land at s ~ b from below: snap
    if (bd - s <= bd * kEps) {
        s = 1.0;
        ++m;
    }
    const double f = (s == 1.0) ? 0.0 : std::log(s) / ln_b;
    return SigDecomp{s, m, f};
}

double frac_log(double y, BaseSpec base) {
    base.validate();
    if (!std::isfinite(y)) throw std::domain_error("frac_log: requires finite y");
    const double r = y / std::log(static_cast<double>(base.b));
    double f = r - std::floor(r);
    if (f >= 1.0) f = 0.0; // r a hair below an integer rounds up
    return f;
}

double benford_cdf(double s_val, BaseSpec base) {
    base.validate();
    if (!(s_val >= 1.0) || !(s_val < static_cast<double>(base.b))) {
        throw std::domain_error("benford_cdf: s_val must lie in [1, base)");
    }
    return std::log(s_val) / std::log(static_cast<double>(base.b));
}

double benford_prob(int digit, BaseSpec base) {
    base.validate();
    if (digit < 1 || digit > base.b - 1) {
        throw std::domain_error("benford_prob: digit must lie in {1, ..., base-1}");
    }
    return std::log1p(1.0 / static_cast<double>(digit)) /
           std::log(static_cast<double>(base.b));
}

int leading_digit_from_log(double y, BaseSpec base) {
    base.validate();
    if (!std::isfinite(y)) throw std::domain_error("leading_digit_from_log: requires finite y");
    const double bd = static_cast<double>(base.b);
    const double ln_b = std::log(bd);
    const double s = std::pow(bd, frac_log(y, base));
    // the fraction resolves y only to |y/ln b| ulps, so the snap window
    // at digit boundaries scales with the exponent magnitude
    const double window = bd * ln_b * (std::abs(y / ln_b) + 4.0) * kEps;
    if (bd - s <= window) return 1; // wrapped to the next power
    double d = std::floor(s);
    if ((d + 1.0) - s <= window) d += 1.0;
    if (d < 1.0) d = 1.0;
    if (d > bd - 1.0) d = bd - 1.0;
    return static_cast<int>(d);
}

EvalResult fraction_cdf_from_dist(const SincLogDistribution& dist, BaseSpec base, double sigma,
                                  std::int64_t m_trunc) {
    base.validate();
    if (!(sigma >= 0.0 && sigma < 1.0)) {
        throw std::domain_error("fraction_cdf_from_dist: sigma must lie in [0, 1)");
    }
    if (m_trunc < 1) throw std::domain_error("fraction_cdf_from_dist: m_trunc must be >= 1");
    const double h = std::log(static_cast<double>(base.b));
    const double bound = truncation_bound(dist, h, m_trunc);
    if (sigma == 0.0) return EvalResult{0.0, bound};
    return EvalResult{cdf_increment_sum(dist, h, 0.0, sigma, m_trunc), bound};
}

DigitTable digit_law_from_dist(const SincLogDistribution& dist, BaseSpec base,
                               std::int64_t m_trunc) {
    base.validate();
    if (m_trunc < 1) throw std::domain_error("digit_law_from_dist: m_trunc must be >= 1");
    const double bd = static_cast<double>(base.b);
    const double h = std::log(bd);
    const std::size_t digits = static_cast<std::size_t>(base.b - 1);

    // digit edges in fraction space: E[j] = log_b(j+1), so entry d spans
    // [E[d-1], E[d]] and the top edge is exactly 1
    std::vector<double> edge(static_cast<std::size_t>(base.b));
    for (int j = 0; j < base.b; ++j) {
        edge[static_cast<std::size_t>(j)] =
            (j + 1 == base.b) ? 1.0 : std::log(static_cast<double>(j + 1)) / h;
    }
    edge[0] = 0.0;

    // One pass over the grid: every edge's tail value is computed once
    // per m and shared between the two adjacent digits. The tails need
    // sin/cos at z = a h (m +- E_j); those advance by plane rotations
    // (re-anchored on libm every kResync steps), with sin(2z), cos(2z)
    // from double-angle identities, so no large-argument trig reduction
    // runs in the hot loop. Fixed-block partition with per-entry Kahan
    // sums keeps the reduction deterministic across thread counts.
    const double a = dist.shape();
    const double phi = a * h;
    const double inv_pi = 1.0 / kPi;
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    constexpr std::int64_t kResync = 2048;
    constexpr double kAsymptoticFloor = 40.0; // below this, take the library path

    // upper tail of Y at z = a y given sin(z), cos(z), for 2z >= 40
    const auto tail_large = [&](double z, double s, double c) {
        double f = 0.0;
        double g = 0.0;
        detail::si_auxiliary_fg(2.0 * z, &f, &g);
        const double sin2 = 2.0 * s * c;
        const double cos2 = 1.0 - 2.0 * s * s;
        return (cos2 * f + sin2 * g + (s * s) / z) * inv_pi;
    };
    const auto tail = [&](double y) { return dist.cdf_y_complement(y); };

    const std::size_t n_edges = edge.size();
    std::vector<detail::BlockRange> ranges(detail::kSumBlocks);
    const int used = detail::partition_blocks(m_trunc, detail::kSumBlocks, ranges.data());
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(used));
    detail::run_blocks(used, [&](int blk) {
        std::vector<detail::KahanSum> acc(digits);
        std::vector<double> tp(n_edges + 1);
        std::vector<double> tm(n_edges + 1);
        std::vector<double> sp(n_edges), cp(n_edges), sm(n_edges), cm(n_edges);
        std::int64_t m = ranges[static_cast<std::size_t>(blk)].hi;
        const std::int64_t lo = ranges[static_cast<std::size_t>(blk)].lo;
        while (m >= lo) {
            const std::int64_t chunk_lo = std::max(lo, m - kResync + 1);
            for (std::size_t j = 0; j < n_edges; ++j) {
                const double zp = (static_cast<double>(m) + edge[j]) * phi;
                const double zm = (static_cast<double>(m) - edge[j]) * phi;
                sp[j] = std::sin(zp);
                cp[j] = std::cos(zp);
                sm[j] = std::sin(zm);
                cm[j] = std::cos(zm);
            }
            for (std::int64_t i = m; i >= chunk_lo; --i) {
                const double md = static_cast<double>(i);
                for (std::size_t j = 0; j < n_edges; ++j) {
                    const double zp = (md + edge[j]) * phi;
                    const double zm = (md - edge[j]) * phi;
                    tp[j] = (2.0 * zp >= kAsymptoticFloor) ? tail_large(zp, sp[j], cp[j])
                                                           : tail((md + edge[j]) * h);
                    tm[j] = (2.0 * zm >= kAsymptoticFloor) ? tail_large(zm, sm[j], cm[j])
                                                           : tail((md - edge[j]) * h);
                }
                for (std::size_t d = 0; d < digits; ++d) {
                    acc[d].add((tp[d] - tp[d + 1]) + (tm[d + 1] - tm[d]));
                }
                for (std::size_t j = 0; j < n_edges; ++j) {
                    double ns = sp[j] * cphi - cp[j] * sphi;
                    cp[j] = cp[j] * cphi + sp[j] * sphi;
                    sp[j] = ns;
                    ns = sm[j] * cphi - cm[j] * sphi;
                    cm[j] = cm[j] * cphi + sm[j] * sphi;
                    sm[j] = ns;
                }
            }
            m = chunk_lo - 1;
        }
        auto& out = partial[static_cast<std::size_t>(blk)];
        out.resize(digits);
        for (std::size_t d = 0; d < digits; ++d) out[d] = acc[d].value();
    });

    DigitTable table{base, std::vector<double>(digits, 0.0), TableKind::kTheoretical};
    for (std::size_t d = 0; d < digits; ++d) {
        detail::KahanSum total;
        for (int blk = used - 1; blk >= 0; --blk) {
            total.add(partial[static_cast<std::size_t>(blk)][d]);
        }
        total.add(tail(edge[d] * h) - tail(edge[d + 1] * h)); // m = 0
        table.entries[d] = total.value();
    }
    return table;
}

double digit_law_tail_bound(const SincLogDistribution& dist, BaseSpec base,
                            std::int64_t m_trunc) {
    base.validate();
    if (m_trunc < 1) throw std::domain_error("digit_law_tail_bound: m_trunc must be >= 1");
    return truncation_bound(dist, std::log(static_cast<double>(base.b)), m_trunc);
}

DigitTable empirical_digit_table(const SampleBatch& batch, BaseSpec base) {
    base.validate();
    if (batch.log_values.empty()) {
        throw std::domain_error("empirical_digit_table: batch must be non-empty");
    }
    DigitTable table{base, std::vector<double>(static_cast<std::size_t>(base.b - 1), 0.0),
                     TableKind::kEmpirical};
    for (const double y : batch.log_values) {
        const int d = leading_digit_from_log(y, base);
        table.entries[static_cast<std::size_t>(d - 1)] += 1.0;
    }
    return table;
}

} // namespace benford

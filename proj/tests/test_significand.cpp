#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "benford/distributions.hpp"
#include "benford/significand.hpp"
#include "test_util.hpp"

using namespace benford;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double mod1_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, std::abs(1.0 - d));
}

// Poisson-summation form of P{0 <= F <= sigma} for the sinc^2-log
// family: sigma + sum_k tri(pi k/(a h)) sin(2 pi k sigma) / (pi k).
double fraction_cdf_prediction(double a, double h, double sigma) {
    double f = sigma;
    for (int k = 1;; ++k) {
        const double u = kPi * k / (a * h);
        if (u >= 1.0) break;
        f += (1.0 - u) * std::sin(2.0 * kPi * k * sigma) / (kPi * k);
    }
    return f;
}

} // namespace

TEST_CASE("BaseSpec validation") {
    CHECK_THROWS_AS(BaseSpec{1}.validate(), std::domain_error);
    CHECK_THROWS_AS(BaseSpec{0}.validate(), std::domain_error);
    CHECK_THROWS_AS(BaseSpec{-7}.validate(), std::domain_error);
    BaseSpec{2}.validate();
}

TEST_CASE("decompose known values") {
    const SigDecomp d1 = decompose(0.00234, BaseSpec{10});
    CHECK(d1.m == -3);
    CHECK(d1.s == doctest::Approx(2.34).epsilon(1e-14));
    CHECK(d1.f == doctest::Approx(std::log10(2.34)).epsilon(1e-14));

    const SigDecomp d2 = decompose(1.0, BaseSpec{2});
    CHECK(d2.s == 1.0);
    CHECK(d2.m == 0);
    CHECK(d2.f == 0.0);

    const SigDecomp d3 = decompose(std::exp(1.0), BaseSpec{10});
    CHECK(d3.m == 0);
    CHECK(d3.f == doctest::Approx(0.4342944819032518).epsilon(1e-14));

    CHECK_THROWS_AS(decompose(0.0, BaseSpec{10}), std::domain_error);
    CHECK_THROWS_AS(decompose(-1.0, BaseSpec{10}), std::domain_error);
    CHECK_THROWS_AS(decompose(std::numeric_limits<double>::infinity(), BaseSpec{10}),
                    std::domain_error);
    CHECK_THROWS_AS(decompose(std::numeric_limits<double>::quiet_NaN(), BaseSpec{10}),
                    std::domain_error);
}

TEST_CASE("decompose round trips across magnitudes and bases") {
    testutil::Rng rng(555);
    for (const int b : {2, 3, 10, 16, 23}) {
        const BaseSpec base{b};
        for (int i = 0; i < 2000; ++i) {
            const double x = std::exp(rng.uniform(std::log(1e-30), std::log(1e30)));
            const SigDecomp d = decompose(x, base);
            CHECK(d.s >= 1.0);
            CHECK(d.s < static_cast<double>(b));
            CHECK(d.f >= 0.0);
            CHECK(d.f < 1.0);
            const double recon = d.s * std::pow(static_cast<double>(b), static_cast<double>(d.m));
            CHECK(std::abs(recon - x) <= 4.0 * kEps * x);
            CHECK(std::abs(std::pow(static_cast<double>(b), d.f) - d.s) <= 4.0 * kEps * d.s);
        }
    }
}

TEST_CASE("decompose snaps inputs at powers of the base") {
    for (int k = -5; k <= 5; ++k) {
        const double power = std::pow(10.0, k);
        const SigDecomp exact = decompose(power, BaseSpec{10});
        CHECK(exact.s == 1.0);
        CHECK(exact.m == k);
        CHECK(exact.f == 0.0);
        // one ulp below the power still snaps up
        const SigDecomp below = decompose(std::nextafter(power, 0.0), BaseSpec{10});
        CHECK(below.s == 1.0);
        CHECK(below.m == k);
    }
}

TEST_CASE("decompose handles extreme magnitudes") {
    const SigDecomp tiny = decompose(5e-324, BaseSpec{10});
    CHECK(tiny.s >= 1.0);
    CHECK(tiny.s < 10.0);
    const SigDecomp huge = decompose(1.7e308, BaseSpec{23});
    CHECK(huge.s >= 1.0);
    CHECK(huge.s < 23.0);
}

TEST_CASE("frac_log basics") {
    const BaseSpec ten{10};
    CHECK(frac_log(0.0, ten) == 0.0);
    CHECK(frac_log(std::log(0.00234), ten) ==
          doctest::Approx(std::log10(2.34)).epsilon(1e-12));
    CHECK(frac_log(-0.1, ten) >= 0.0);
    CHECK(frac_log(-0.1, ten) < 1.0);
    CHECK_THROWS_AS(frac_log(std::numeric_limits<double>::infinity(), ten), std::domain_error);
}

TEST_CASE("frac_log agrees with decompose") {
    testutil::Rng rng(556);
    const BaseSpec base{10};
    for (int i = 0; i < 10000; ++i) {
        const double x = std::exp(rng.uniform(std::log(1e-20), std::log(1e20)));
        const SigDecomp d = decompose(x, base);
        CHECK(mod1_distance(frac_log(std::log(x), base), d.f) <= 1e-12);
    }
}

TEST_CASE("benford_cdf and benford_prob") {
    const BaseSpec ten{10};
    CHECK(benford_prob(1, ten) == doctest::Approx(0.3010299956639812).epsilon(1e-15));
    CHECK(benford_prob(9, ten) == doctest::Approx(0.04575749056067514).epsilon(1e-13));
    CHECK(benford_prob(9, ten) < 0.05);
    CHECK(benford_prob(1, BaseSpec{2}) == 1.0);
    CHECK(benford_cdf(2.0, ten) == doctest::Approx(0.3010299956639812).epsilon(1e-15));
    CHECK_THROWS_AS(benford_cdf(0.5, ten), std::domain_error);
    CHECK_THROWS_AS(benford_cdf(10.0, ten), std::domain_error);
    CHECK_THROWS_AS(benford_prob(0, ten), std::domain_error);
    CHECK_THROWS_AS(benford_prob(10, ten), std::domain_error);
}

TEST_CASE("benford probabilities sum to one in every base") {
    for (int b = 2; b <= 23; ++b) {
        const BaseSpec base{b};
        double total = 0.0;
        for (int d = 1; d <= b - 1; ++d) total += benford_prob(d, base);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("benford_cdf additivity") {
    testutil::Rng rng(557);
    const BaseSpec ten{10};
    for (int i = 0; i < 1000; ++i) {
        const double s1 = rng.uniform(1.0, 3.0);
        const double s2 = rng.uniform(1.0, 10.0 / s1);
        if (s1 * s2 >= 10.0) continue;
        CHECK(std::abs(benford_cdf(s1 * s2, ten) - benford_cdf(s1, ten) - benford_cdf(s2, ten)) <=
              1e-14);
    }
}

TEST_CASE("fraction_cdf_from_dist in the exact regime") {
    const SincLogDistribution dist(1.0);
    const BaseSpec ten{10};
    CHECK(fraction_cdf_from_dist(dist, ten, 0.0, 1000).value == 0.0);
    const EvalResult mid = fraction_cdf_from_dist(dist, ten, 0.5, 100000);
    CHECK(std::abs(mid.value - 0.5) <= mid.abs_error_bound + 1e-9);
    CHECK(mid.abs_error_bound ==
          doctest::Approx(2.0 / (kPi * 1e5 * std::log(10.0))).epsilon(1e-12));
    // uniformity across the offset grid
    for (double sigma = 0.1; sigma < 0.95; sigma += 0.2) {
        const EvalResult r = fraction_cdf_from_dist(dist, ten, sigma, 50000);
        CHECK(std::abs(r.value - sigma) <= r.abs_error_bound + 1e-9);
    }
    CHECK_THROWS_AS(fraction_cdf_from_dist(dist, ten, 1.0, 100), std::domain_error);
    CHECK_THROWS_AS(fraction_cdf_from_dist(dist, ten, -0.1, 100), std::domain_error);
}

TEST_CASE("fraction_cdf_from_dist exposes the non-uniform regime") {
    // base 30: ln 30 > pi, so F is visibly non-uniform
    const SincLogDistribution dist(1.0);
    const BaseSpec thirty{30};
    const double h = std::log(30.0);
    const EvalResult q1 = fraction_cdf_from_dist(dist, thirty, 0.25, 100000);
    const EvalResult q2 = fraction_cdf_from_dist(dist, thirty, 0.5, 100000);
    const double inc1 = q1.value;
    const double inc2 = q2.value - q1.value;
    CHECK(std::abs(inc1 - inc2) > 0.02);
    // and the direct sum still matches the Poisson-summation route
    for (const double sigma : {0.25, 0.5, 0.8}) {
        const EvalResult r = fraction_cdf_from_dist(dist, thirty, sigma, 100000);
        CHECK(r.value ==
              doctest::Approx(fraction_cdf_prediction(1.0, h, sigma)).epsilon(1e-5));
    }
}

TEST_CASE("digit_law_from_dist matches Benford when admissible") {
    const SincLogDistribution dist(1.0);
    const BaseSpec ten{10};
    const std::int64_t m_trunc = 100000;
    const DigitTable law = digit_law_from_dist(dist, ten, m_trunc);
    REQUIRE(law.entries.size() == 9);
    const double bound = digit_law_tail_bound(dist, ten, m_trunc);
    for (int d = 1; d <= 9; ++d) {
        CHECK(std::abs(law.entries[static_cast<std::size_t>(d - 1)] - benford_prob(d, ten)) <=
              bound + 1e-9);
    }
    CHECK(std::abs(law.total() - 1.0) <= bound + 1e-9);
}

TEST_CASE("digit_law_from_dist in base 2 is the single sure digit") {
    const SincLogDistribution dist(1.0);
    const DigitTable law = digit_law_from_dist(dist, BaseSpec{2}, 100000);
    REQUIRE(law.entries.size() == 1);
    const double bound = digit_law_tail_bound(dist, BaseSpec{2}, 100000);
    CHECK(std::abs(law.entries[0] - 1.0) <= bound + 1e-9);
}

TEST_CASE("digit_law_from_dist departs from Benford when inadmissible") {
    const SincLogDistribution dist(2.5); // ln 10 > pi/2.5
    const DigitTable law = digit_law_from_dist(dist, BaseSpec{10}, 100000);
    CHECK(std::abs(law.entries[0] - 0.3010299956639812) > 1e-3);
    // still a probability vector up to truncation
    CHECK(law.total() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("theoretical digit tables sum to one within bounds") {
    for (const double a : {0.5, 1.0, 2.5}) {
        for (const int b : {2, 10, 17}) {
            const SincLogDistribution dist(a);
            const DigitTable law = digit_law_from_dist(dist, BaseSpec{b}, 50000);
            const double bound = digit_law_tail_bound(dist, BaseSpec{b}, 50000);
            CHECK(std::abs(law.total() - 1.0) <= static_cast<double>(b) * bound + 1e-9);
        }
    }
}

TEST_CASE("empirical_digit_table on a constant batch") {
    SampleBatch batch;
    batch.params_tag = "constant";
    batch.log_values.assign(1000, std::log(5.0));
    const DigitTable table = empirical_digit_table(batch, BaseSpec{10});
    CHECK(table.entries[4] == 1000.0);
    CHECK(table.total() == 1000.0);
    for (int d = 1; d <= 9; ++d) {
        if (d != 5) CHECK(table.entries[static_cast<std::size_t>(d - 1)] == 0.0);
    }
    SampleBatch empty;
    CHECK_THROWS_AS(empirical_digit_table(empty, BaseSpec{10}), std::domain_error);
}

TEST_CASE("leading digit from log snaps at boundaries") {
    const BaseSpec ten{10};
    CHECK(leading_digit_from_log(std::log(5.0), ten) == 5);
    CHECK(leading_digit_from_log(std::log(2.0), ten) == 2);
    CHECK(leading_digit_from_log(0.0, ten) == 1);
    CHECK(leading_digit_from_log(std::log(1000.0), ten) == 1);
    CHECK(leading_digit_from_log(std::log(9.999999999999998), ten) == 1);
    // agrees with decompose's digit across magnitudes
    testutil::Rng rng(558);
    for (int i = 0; i < 5000; ++i) {
        const double x = std::exp(rng.uniform(std::log(1e-12), std::log(1e12)));
        const int via_log = leading_digit_from_log(std::log(x), ten);
        const int via_decompose = static_cast<int>(decompose(x, ten).s);
        CHECK(via_log == via_decompose);
    }
}

TEST_CASE("empirical digits of the sinc^2-log sampler are Benford") {
    const SincLogDistribution dist(1.0);
    const BaseSpec ten{10};
    const std::int64_t n = 1'000'000;
    const SampleBatch batch = dist.sample_y(n, 777001);
    const DigitTable table = empirical_digit_table(batch, ten);
    CHECK(table.total() == static_cast<double>(n));
    for (int d = 1; d <= 9; ++d) {
        const double p = benford_prob(d, ten);
        const double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
        CHECK(std::abs(table.entries[static_cast<std::size_t>(d - 1)] -
                       p * static_cast<double>(n)) < 5.0 * sigma);
    }
}

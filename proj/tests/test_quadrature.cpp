#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "benford/distributions.hpp"
#include "benford/quadrature.hpp"
#include "benford/special_functions.hpp"
#include "test_util.hpp"

using namespace benford;

namespace {

constexpr double kPi = std::numbers::pi;

// Poisson-summation value of the offset density sum: the Fourier
// transform of (a/pi) sinc^2(a y) is the triangle max(0, 1 - |w|/(2a)),
// so h sum_m pdf_y((m+sigma) h) = 1 + 2 sum_k tri(pi k/(a h)) cos(2 pi k sigma).
double poisson_prediction(double a, double h, double sigma) {
    double sum = 1.0;
    for (int k = 1;; ++k) {
        const double u = kPi * k / (a * h);
        if (u >= 1.0) break;
        sum += 2.0 * (1.0 - u) * std::cos(2.0 * kPi * k * sigma);
    }
    return sum;
}

} // namespace

TEST_CASE("adaptive_integrate textbook values") {
    const auto sin_f = [](double x) { return std::sin(x); };
    const EvalResult r = adaptive_integrate(sin_f, 0.0, kPi, 1e-12);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.abs_error_bound <= 1e-12);

    const EvalResult e = adaptive_integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    CHECK(e.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("adaptive_integrate agrees with the Simpson oracle") {
    const auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x * x / 7.0); };
    const double mine = adaptive_integrate(f, -2.0, 5.0, 1e-11).value;
    const double oracle = testutil::simpson(f, -2.0, 5.0, 1e-13);
    CHECK(mine == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("adaptive_integrate cross-checks sine_integral") {
    const EvalResult r =
        adaptive_integrate([](double x) { return sinc(x); }, 0.0, 1.0, 1e-14);
    CHECK(r.value == doctest::Approx(sine_integral(1.0)).epsilon(1e-13));
}

TEST_CASE("adaptive_integrate is stable across tolerances") {
    const SincLogDistribution dist(1.0);
    const auto pdf = [&](double y) { return dist.pdf_y(y); };
    std::vector<double> values;
    for (const double tol : {1e-8, 1e-10, 1e-12}) {
        values.push_back(adaptive_integrate(pdf, -kPi, kPi, tol).value);
    }
    CHECK(std::abs(values[0] - values[2]) <= 1e-8 + 1e-12);
    CHECK(std::abs(values[1] - values[2]) <= 1e-10 + 1e-12);
}

TEST_CASE("adaptive_integrate argument validation") {
    const auto one = [](double) { return 1.0; };
    CHECK_THROWS_AS(adaptive_integrate(one, 1.0, 0.0, 1e-10), std::domain_error);
    CHECK_THROWS_AS(adaptive_integrate(one, 0.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("adaptive_integrate reports non-finite integrands") {
    const auto bad = [](double x) { return 1.0 / (x - 0.25); };
    CHECK_THROWS_AS(adaptive_integrate(bad, 0.25, 1.0, 1e-10), EvaluationError);
}

TEST_CASE("adaptive_integrate subdivision limit carries its best estimate") {
    // integrable endpoint singularity: the budget cannot be met at depth 60
    const auto spike = [](double x) { return 1.0 / std::sqrt(x); };
    try {
        adaptive_integrate(spike, 1e-280, 1.0, 1e-13);
        FAIL("expected SubdivisionLimitError");
    } catch (const SubdivisionLimitError& e) {
        CHECK(e.best().value == doctest::Approx(2.0).epsilon(1e-3));
        CHECK(e.best().abs_error_bound > 1e-13);
    }
}

TEST_CASE("trapz_offset_sum of sinc at h = pi hits the integral with three terms") {
    TrapzConfig cfg{kPi, 0.0, 1, TailPolicy::kBound};
    const TrapzResult r =
        trapz_offset_sum([](double y) { return sinc(y); }, cfg, [](const TrapzConfig&) { return 0.0; });
    CHECK(r.terms_used == 3);
    CHECK(std::abs(r.sum - kPi) < 1e-14);
}

TEST_CASE("trapz_offset_sum of the zero function") {
    TrapzConfig cfg{1.0, 0.3, 100, TailPolicy::kBound};
    const TrapzResult r =
        trapz_offset_sum([](double) { return 0.0; }, cfg, [](const TrapzConfig&) { return 0.0; });
    CHECK(r.sum == 0.0);
    CHECK(r.tail_bound == 0.0);
}

TEST_CASE("trapz_offset_sum of sinc at h = 1 with an oscillatory tail estimate") {
    TrapzConfig cfg{1.0, 0.0, 1'000'000, TailPolicy::kBound};
    // Dirichlet-kernel bound: |h sum_{|m|>M} sinc(m h)| <= 4h / (sin(h/2) (M+1))
    const auto tail = [](const TrapzConfig& c) {
        return 4.0 * c.h / (std::sin(0.5 * c.h) * static_cast<double>(c.m_trunc + 1));
    };
    const TrapzResult r = trapz_offset_sum([](double y) { return sinc(y); }, cfg, tail);
    CHECK(std::abs(r.sum - kPi) <= r.tail_bound + 1e-9);
}

TEST_CASE("trapz_offset_sum flags non-finite summands with the grid point") {
    TrapzConfig cfg{0.5, 0.0, 4, TailPolicy::kBound};
    const auto f = [](double y) { return 1.0 / (y - 1.0); };
    CHECK_THROWS_AS(
        trapz_offset_sum(f, cfg, [](const TrapzConfig&) { return 0.0; }), EvaluationError);
}

TEST_CASE("TrapzConfig validation") {
    CHECK_THROWS_AS((TrapzConfig{0.0, 0.0, 10, TailPolicy::kBound}).validate(), std::domain_error);
    CHECK_THROWS_AS((TrapzConfig{1.0, 1.0, 10, TailPolicy::kBound}).validate(), std::domain_error);
    CHECK_THROWS_AS((TrapzConfig{1.0, -0.1, 10, TailPolicy::kBound}).validate(), std::domain_error);
    CHECK_THROWS_AS((TrapzConfig{1.0, 0.0, 0, TailPolicy::kBound}).validate(), std::domain_error);
}

TEST_CASE("trapz_pdf_sum is exact below the step threshold") {
    const SincLogDistribution dist(1.0);
    for (const int base : {2, 10, 23}) {
        for (const double sigma : {0.0, 0.3, 0.7}) {
            TrapzConfig cfg{std::log(static_cast<double>(base)), sigma, 100'000,
                            TailPolicy::kBound};
            const TrapzResult r = trapz_pdf_sum(dist, cfg);
            CHECK(std::abs(r.sum - 1.0) <= r.tail_bound + 1e-9);
            CHECK(r.tail_bound ==
                  doctest::Approx(2.0 / (kPi * cfg.h * 99'999.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("trapz_pdf_sum offset independence under exactness") {
    const SincLogDistribution dist(1.0);
    TrapzConfig cfg{std::log(10.0), 0.0, 200'000, TailPolicy::kBound};
    const TrapzResult at0 = trapz_pdf_sum(dist, cfg);
    cfg.sigma = 0.37;
    const TrapzResult at37 = trapz_pdf_sum(dist, cfg);
    CHECK(std::abs(at0.sum - at37.sum) <= 2.0 * at0.tail_bound);
}

TEST_CASE("trapz_pdf_sum trigamma tail estimate tracks the true deficit") {
    const SincLogDistribution dist(1.0);
    TrapzConfig cfg{std::log(10.0), 0.25, 100'000, TailPolicy::kTrigammaEstimate};
    const TrapzResult r = trapz_pdf_sum(dist, cfg);
    const double deficit = 1.0 - r.sum;
    CHECK(r.tail_estimate <= r.tail_bound);
    CHECK(r.tail_estimate > 0.0);
    // under exactness the missing mass is the tail itself; the estimate
    // should land within a few percent of it
    CHECK(deficit == doctest::Approx(r.tail_estimate).epsilon(0.05));
    CHECK(std::abs(r.sum - 1.0) <= r.tail_bound + 1e-9);
}

TEST_CASE("trapz_pdf_sum deviates above the threshold and matches Poisson summation") {
    const SincLogDistribution dist(1.0);
    std::vector<double> deviations;
    for (const double h : {3.2, 3.3, 3.5, 4.0}) {
        TrapzConfig cfg{h, 0.0, 1'000'000, TailPolicy::kBound};
        const TrapzResult r = trapz_pdf_sum(dist, cfg);
        const double dev = std::abs(r.sum - 1.0);
        deviations.push_back(dev);
        CHECK(dev > 0.0);
        CHECK(r.sum ==
              doctest::Approx(poisson_prediction(1.0, h, 0.0)).epsilon(1e-6));
    }
    // deviations shrink as h decreases toward pi
    CHECK(deviations[0] < deviations[1]);
    CHECK(deviations[1] < deviations[2]);
    CHECK(deviations[2] < deviations[3]);
    CHECK(deviations[1] > 0.01); // h = 3.3
    CHECK(deviations[3] > 0.01); // h = 4.0
}

TEST_CASE("trapz_pdf_sum also matches Poisson summation off-grid") {
    const SincLogDistribution dist(0.8);
    for (const double sigma : {0.0, 0.2, 0.55}) {
        TrapzConfig cfg{4.5, sigma, 500'000, TailPolicy::kBound};
        const TrapzResult r = trapz_pdf_sum(dist, cfg);
        CHECK(r.sum ==
              doctest::Approx(poisson_prediction(0.8, 4.5, sigma)).epsilon(1e-5));
    }
}

TEST_CASE("trapz_pdf_sum agrees with the adaptive integrator under exactness") {
    const SincLogDistribution dist(1.0);
    TrapzConfig cfg{std::log(10.0), 0.4, 100'000, TailPolicy::kBound};
    const TrapzResult grid = trapz_pdf_sum(dist, cfg);
    const double window = 1e5;
    const auto pdf = [&](double y) { return dist.pdf_y(y); };
    const EvalResult quad = adaptive_integrate(pdf, -window, window, 1e-8);
    const double window_tails = 2.0 / (kPi * window);
    CHECK(std::abs(grid.sum - quad.value) <=
          grid.tail_bound + quad.abs_error_bound + window_tails);
}

TEST_CASE("trapz_pdf_sum is deterministic across thread counts") {
    const SincLogDistribution dist(1.0);
    TrapzConfig cfg{std::log(7.0), 0.63, 300'000, TailPolicy::kBound};
    setenv("BENFORD_EXACT_THREADS", "1", 1);
    const double single = trapz_pdf_sum(dist, cfg).sum;
    setenv("BENFORD_EXACT_THREADS", "2", 1);
    const double dual = trapz_pdf_sum(dist, cfg).sum;
    setenv("BENFORD_EXACT_THREADS", "5", 1);
    const double many = trapz_pdf_sum(dist, cfg).sum;
    unsetenv("BENFORD_EXACT_THREADS");
    CHECK(single == dual);
    CHECK(single == many);
}

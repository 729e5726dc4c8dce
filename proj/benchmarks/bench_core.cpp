#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "benford/distributions.hpp"
#include "benford/gof.hpp"
#include "benford/quadrature.hpp"
#include "benford/significand.hpp"
#include "benford/special_functions.hpp"

namespace {

void BM_SincSquared(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(benford::sinc_squared(x));
        x += 0.37;
        if (x > 1e6) x = 0.1;
    }
}
BENCHMARK(BM_SincSquared);

void BM_SineIntegral(benchmark::State& state) {
    const double lo = static_cast<double>(state.range(0));
    double x = lo;
    for (auto _ : state) {
        benchmark::DoNotOptimize(benford::sine_integral(x));
        x += 0.13;
        if (x > lo * 1.5 + 3.0) x = lo;
    }
}
// the three evaluation regimes: series, continued fraction, asymptotic
BENCHMARK(BM_SineIntegral)->Arg(1)->Arg(10)->Arg(1000);

void BM_CdfY(benchmark::State& state) {
    const benford::SincLogDistribution dist(1.0);
    double y = -40.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist.cdf_y(y));
        y += 0.17;
        if (y > 40.0) y = -40.0;
    }
}
BENCHMARK(BM_CdfY);

void BM_QuantileY(benchmark::State& state) {
    const benford::SincLogDistribution dist(1.0);
    double u = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist.quantile_y(u));
        u += 0.0137;
        if (u >= 0.99) u = 0.01;
    }
}
BENCHMARK(BM_QuantileY);

void BM_SampleY(benchmark::State& state) {
    const benford::SincLogDistribution dist(1.0);
    const std::int64_t n = state.range(0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist.sample_y(n, seed++).log_values.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleY)->Arg(1 << 10)->Arg(1 << 14);

void BM_TrapzPdfSum(benchmark::State& state) {
    const benford::SincLogDistribution dist(1.0);
    const benford::TrapzConfig cfg{std::log(10.0), 0.3, state.range(0),
                                   benford::TailPolicy::kBound};
    for (auto _ : state) {
        benchmark::DoNotOptimize(benford::trapz_pdf_sum(dist, cfg).sum);
    }
    state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1));
}
BENCHMARK(BM_TrapzPdfSum)->Arg(100000)->Arg(1000000);

void BM_DigitLaw(benchmark::State& state) {
    const benford::SincLogDistribution dist(1.0);
    const benford::BaseSpec ten{10};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            benford::digit_law_from_dist(dist, ten, state.range(0)).entries.data());
    }
}
BENCHMARK(BM_DigitLaw)->Arg(10000)->Arg(100000);

void BM_KsUniform(benchmark::State& state) {
    const benford::SincLogDistribution dist(1.0);
    const benford::BaseSpec ten{10};
    const benford::SampleBatch batch = dist.sample_y(state.range(0), 77);
    std::vector<double> fractions;
    fractions.reserve(batch.log_values.size());
    for (const double y : batch.log_values) fractions.push_back(benford::frac_log(y, ten));
    for (auto _ : state) {
        benchmark::DoNotOptimize(benford::ks_uniform(fractions).statistic);
    }
}
BENCHMARK(BM_KsUniform)->Arg(1 << 14);

} // namespace

BENCHMARK_MAIN();

#pragma once

#include <cstdint>
#include <functional>

namespace benford::detail {

// Worker cap: BENFORD_EXACT_THREADS when set to a positive integer,
// otherwise the hardware concurrency, clamped to [1, 64].
int effective_threads();

// Runs worker(block) for every block in [0, num_blocks), spread over at
// most effective_threads() threads. Blocks; rethrows the first worker
// exception.
void run_blocks(int num_blocks, const std::function<void(int)>& worker);

// Fixed partition of [1, m_max] into up to `blocks` contiguous ranges.
// Returns the number of blocks actually used; block i covers
// [bounds[i].first, bounds[i].second].
struct BlockRange {
    std::int64_t lo;
    std::int64_t hi;
};
int partition_blocks(std::int64_t m_max, int blocks, BlockRange* out);

// Deterministic compensated reduction of term(m) over m in [1, m_max]:
// a fixed 512-block partition, descending m inside each block, block
// partials combined in descending-m order. The value is independent of
// the thread count.
double blockwise_sum(std::int64_t m_max, const std::function<double(std::int64_t)>& term);

// Kahan compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = v - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    double value() const { return sum; }
};

inline constexpr int kSumBlocks = 512;

} // namespace benford::detail

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace benford::detail {

int effective_threads() {
    int n = 0;
    if (const char* env = std::getenv("BENFORD_EXACT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) n = static_cast<int>(v);
    }
    if (n == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        n = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return n < 1 ? 1 : (n > 64 ? 64 : n);
}

void run_blocks(int num_blocks, const std::function<void(int)>& worker) {
    const int workers = std::min(effective_threads(), num_blocks);
    if (workers <= 1) {
        for (int b = 0; b < num_blocks; ++b) worker(b);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto body = [&] {
        for (;;) {
            const int b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= num_blocks) return;
            try {
                worker(b);
            } catch (...) {
                bool expected = false;
                if (failed.compare_exchange_strong(expected, true)) {
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(first_error);
}

int partition_blocks(std::int64_t m_max, int blocks, BlockRange* out) {
    if (m_max <= 0) return 0;
    const std::int64_t width = (m_max + blocks - 1) / blocks;
    int used = 0;
    for (std::int64_t lo = 1; lo <= m_max; lo += width) {
        out[used++] = BlockRange{lo, std::min(m_max, lo + width - 1)};
    }
    return used;
}

double blockwise_sum(std::int64_t m_max, const std::function<double(std::int64_t)>& term) {
    if (m_max <= 0) return 0.0;
    std::vector<BlockRange> ranges(kSumBlocks);
    const int used = partition_blocks(m_max, kSumBlocks, ranges.data());
    std::vector<double> partial(used, 0.0);
    run_blocks(used, [&](int b) {
        KahanSum acc;
        for (std::int64_t m = ranges[b].hi; m >= ranges[b].lo; --m) acc.add(term(m));
        partial[b] = acc.value();
    });
    KahanSum total;
    for (int b = used - 1; b >= 0; --b) total.add(partial[b]);
    return total.value();
}

} // namespace benford::detail

#pragma once

#include "semidec/presentation.hpp"
#include "semidec/toric.hpp"

#include <chrono>
#include <cstdint>
#include <vector>

namespace semidec {

/// Wall-time comparison of the Markov basis computed through the
/// decomposition against the whole-matrix computation. The whole-matrix
/// path runs under a cooperative deadline: "timed out" is a first-class
/// outcome recorded as -1 for that repetition.
struct BenchResult {
    std::vector<std::int64_t> decomposed_us;
    std::vector<std::int64_t> whole_us;
    std::int64_t decomposed_median_us = -1;
    std::int64_t whole_median_us = -1;
    bool whole_timed_out = false;
    bool bases_agree = true;
};

BenchResult run_benchmark(const SemigroupPresentation& p, int repeat,
                          std::chrono::milliseconds timeout);

} // namespace semidec

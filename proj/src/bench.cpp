#include "semidec/bench.hpp"

#include "semidec/decompose.hpp"
#include "semidec/errors.hpp"

#include <algorithm>
#include <set>

namespace semidec {

namespace {

std::int64_t median(std::vector<std::int64_t> v) {
    if (v.empty()) return -1;
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

std::set<Binomial> as_set(const MarkovBasis& m) {
    return {m.binomials.begin(), m.binomials.end()};
}

} // namespace

BenchResult run_benchmark(const SemigroupPresentation& p, int repeat,
                          std::chrono::milliseconds timeout) {
    using clock = std::chrono::steady_clock;
    BenchResult res;

    MarkovBasis decomposed_basis, whole_basis;
    bool have_whole = false;

    for (int r = 0; r < repeat; ++r) {
        auto t0 = clock::now();
        Decomposition dec = decompose_semigroup(p, DecomposeMode::kernel);
        auto per_block = per_block_markov(p, dec);
        decomposed_basis = assemble_decomposed(p, dec, per_block);
        auto t1 = clock::now();
        res.decomposed_us.push_back(
            std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());

        t0 = clock::now();
        try {
            Deadline deadline = clock::now() + timeout;
            whole_basis = minimal_markov(p, deadline);
            t1 = clock::now();
            res.whole_us.push_back(
                std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
            have_whole = true;
        } catch (const timeout_error&) {
            res.whole_us.push_back(-1);
            res.whole_timed_out = true;
        }
    }

    res.decomposed_median_us = median(res.decomposed_us);
    std::vector<std::int64_t> completed;
    for (auto v : res.whole_us)
        if (v >= 0) completed.push_back(v);
    res.whole_median_us = median(completed);
    res.bases_agree = !have_whole || as_set(decomposed_basis) == as_set(whole_basis);
    return res;
}

} // namespace semidec

#include "semidec/simplex.hpp"

namespace semidec {

// Phase-1: minimize the sum of one artificial variable per row over
// {x >= 0 : A x = b}. Bland's rule (lowest-index entering and leaving
// variable) guarantees termination without an anticycling perturbation.
std::optional<std::vector<Rat>> feasible_point(
    const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;

    // tableau rows: [x columns | artificial columns | rhs]
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n + m + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        int sgn = (b[i] < 0) ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sgn < 0 ? -a[i][j] : a[i][j];
        t[i][n + i] = 1;
        t[i][n + m] = sgn < 0 ? -b[i] : b[i];
        basis[i] = n + i;
    }

    // objective row for min(sum of artificials), after eliminating the
    // basic artificials: cost[j] = -sum_i t[i][j] for x columns
    std::vector<Rat> cost(n + m + 1);
    for (std::size_t j = 0; j <= n + m; ++j) {
        Rat s = 0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        Rat c = (j >= n && j < n + m) ? Rat(1) : Rat(0);
        cost[j] = c - s;
    }

    for (;;) {
        // Bland: entering column = lowest index with negative reduced cost
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter == n + m) break;

        // ratio test; ties broken by lowest basic variable index
        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][n + m] / t[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) return std::nullopt;  // unbounded: cannot happen in phase 1

        // pivot
        Rat piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            Rat f = cost[enter];
            for (std::size_t j = 0; j <= n + m; ++j) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    // optimal value of the phase-1 objective is -cost[rhs]
    if (-cost[n + m] != 0) return std::nullopt;

    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][n + m];
    return x;
}

} // namespace semidec

#include "semidec/decompose.hpp"

#include "semidec/errors.hpp"

#include <algorithm>
#include <numeric>

namespace semidec {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Support-connected components of the nonzero rows, as row-index lists
// plus the sorted column support of each component. Components are the
// full transitive closure, not a single sweep: row supports {1},{2,3},
// {1,2} must end up in one component.
struct Components {
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::vector<std::size_t>> cols;
};

Components row_components(const IntMatrix& h, std::size_t nonzero_rows) {
    UnionFind uf(nonzero_rows);
    std::vector<std::size_t> col_owner(h.cols(), SIZE_MAX);
    for (std::size_t i = 0; i < nonzero_rows; ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (h.at(i, j) == 0) continue;
            if (col_owner[j] == SIZE_MAX)
                col_owner[j] = i;
            else
                uf.unite(col_owner[j], i);
        }

    // roots ordered by smallest column index in the component support
    std::vector<std::size_t> first_col(nonzero_rows, SIZE_MAX);
    for (std::size_t j = 0; j < h.cols(); ++j)
        if (col_owner[j] != SIZE_MAX) {
            std::size_t r = uf.find(col_owner[j]);
            if (first_col[r] == SIZE_MAX) first_col[r] = j;
        }
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < nonzero_rows; ++i)
        if (uf.find(i) == i) roots.push_back(i);
    std::sort(roots.begin(), roots.end(),
              [&](std::size_t a, std::size_t b) { return first_col[a] < first_col[b]; });

    Components comps;
    comps.rows.resize(roots.size());
    comps.cols.resize(roots.size());
    std::vector<std::size_t> root_pos(nonzero_rows, SIZE_MAX);
    for (std::size_t k = 0; k < roots.size(); ++k) root_pos[roots[k]] = k;
    for (std::size_t i = 0; i < nonzero_rows; ++i)
        comps.rows[root_pos[uf.find(i)]].push_back(i);
    for (std::size_t j = 0; j < h.cols(); ++j)
        if (col_owner[j] != SIZE_MAX)
            comps.cols[root_pos[uf.find(col_owner[j])]].push_back(j);
    return comps;
}

} // namespace

std::vector<std::vector<std::size_t>> Decomposition::generator_partition() const {
    std::vector<std::vector<std::size_t>> parts;
    for (const auto& b : blocks) parts.push_back(b.generators);
    for (std::size_t g : free_generators) parts.push_back({g});
    return parts;
}

Decomposition hnf_diagonalize(const IntMatrix& l) {
    Decomposition dec;
    dec.input = l;

    HnfResult hu = hnf(l);
    std::size_t nz = 0;
    while (nz < hu.h.rows() && !hu.h.row_is_zero(nz)) ++nz;

    Components comps = row_components(hu.h, nz);

    std::vector<bool> in_support(l.cols(), false);
    for (const auto& cols : comps.cols)
        for (std::size_t j : cols) in_support[j] = true;
    for (std::size_t j = 0; j < l.cols(); ++j)
        if (!in_support[j]) dec.free_generators.push_back(j);

    dec.decomposable = comps.rows.size() + dec.free_generators.size() >= 2;

    // column permutation: blocks in order, relation-free columns last
    std::vector<std::size_t> col_image;
    for (const auto& cols : comps.cols)
        col_image.insert(col_image.end(), cols.begin(), cols.end());
    col_image.insert(col_image.end(), dec.free_generators.begin(),
                     dec.free_generators.end());
    dec.q = Permutation(std::move(col_image));

    // row permutation stacking the components, zero rows at the bottom
    std::vector<std::size_t> row_image;
    for (const auto& rows : comps.rows)
        row_image.insert(row_image.end(), rows.begin(), rows.end());
    for (std::size_t i = nz; i < l.rows(); ++i) row_image.push_back(i);
    IntMatrix p1(l.rows(), l.rows());
    for (std::size_t i = 0; i < l.rows(); ++i) p1.at(i, row_image[i]) = 1;

    dec.p = p1 * hu.u;
    dec.d = dec.q.apply_to_columns(p1 * hu.h);

    for (std::size_t k = 0; k < comps.rows.size(); ++k) {
        DecompositionBlock block;
        block.generators = comps.cols[k];
        block.matrix = hu.h.take_rows(comps.rows[k]).submatrix(
            0, comps.rows[k].size(), comps.cols[k]);
        dec.blocks.push_back(std::move(block));
    }
    return dec;
}

Decomposition decompose_semigroup(const SemigroupPresentation& p, DecomposeMode mode) {
    if (mode == DecomposeMode::direct) {
        if (!p.torsion_free())
            throw math_error("direct-mode decomposition requires a torsion-free semigroup");
        Decomposition dec = hnf_diagonalize(p.matrix());
        dec.mode = DecomposeMode::direct;
        return dec;
    }
    LatticeBasis ker = kernel_with_torsion(p);
    Decomposition dec = hnf_diagonalize(ker.basis());
    dec.mode = DecomposeMode::kernel;
    return dec;
}

namespace {

bool is_row_hnf(const IntMatrix& m) {
    std::size_t nz = m.rows();
    while (nz > 0 && m.row_is_zero(nz - 1)) --nz;
    for (std::size_t i = 0; i < nz; ++i)
        if (m.row_is_zero(i)) return false;  // zero row above a nonzero one

    long prev_pivot = -1;
    for (std::size_t i = 0; i < nz; ++i) {
        std::size_t j = 0;
        while (j < m.cols() && m.at(i, j) == 0) ++j;
        if (static_cast<long>(j) <= prev_pivot) return false;
        prev_pivot = static_cast<long>(j);
        if (m.at(i, j) <= 0) return false;
        for (std::size_t k = 0; k < i; ++k)
            if (m.at(k, j) < 0 || m.at(k, j) >= m.at(i, j)) return false;
    }
    return true;
}

} // namespace

bool is_hnf_diagonal(const IntMatrix& d) {
    std::size_t nzr = d.rows();
    while (nzr > 0 && d.row_is_zero(nzr - 1)) --nzr;
    for (std::size_t i = 0; i < nzr; ++i)
        if (d.row_is_zero(i)) return false;

    std::size_t nzc = d.cols();
    while (nzc > 0 && d.col_is_zero(nzc - 1)) --nzc;
    for (std::size_t j = 0; j < nzc; ++j)
        if (d.col_is_zero(j)) return false;

    if (nzr == 0) return true;  // no relations at all

    Components comps = row_components(d, nzr);

    // blocks must tile the nonzero rows and columns contiguously and in
    // the same order along the diagonal
    std::size_t next_row = 0, next_col = 0;
    for (std::size_t k = 0; k < comps.rows.size(); ++k) {
        const auto& rows = comps.rows[k];
        const auto& cols = comps.cols[k];
        for (std::size_t t = 0; t < rows.size(); ++t)
            if (rows[t] != next_row + t) return false;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (cols[t] != next_col + t) return false;
        next_row += rows.size();
        next_col += cols.size();

        IntMatrix block = d.take_rows(rows).submatrix(0, rows.size(), cols);
        if (!is_row_hnf(block)) return false;
    }
    return next_row == nzr && next_col == nzc;
}

IntMatrix nice_generators(const SemigroupPresentation& p) {
    if (!p.torsion_free())
        throw math_error("nice generators require a torsion-free semigroup");
    return hnf_diagonalize(p.matrix()).d;
}

Parametrization reparametrize(const SemigroupPresentation& p) {
    if (!p.torsion_free())
        throw math_error("reparametrization requires a torsion-free semigroup");
    Decomposition dec = hnf_diagonalize(p.matrix());

    Parametrization par;
    par.generator_block.assign(p.num_generators(), 0);
    par.exponents.assign(p.num_generators(), IntVec{});

    std::size_t offset = 0;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        const auto& block = dec.blocks[b];
        par.block_parameters.emplace_back(offset, offset + block.matrix.rows());
        offset += block.matrix.rows();
    }
    par.parameter_count = offset;

    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        const auto& block = dec.blocks[b];
        std::size_t first = par.block_parameters[b].first;
        for (std::size_t k = 0; k < block.generators.size(); ++k) {
            std::size_t g = block.generators[k];
            par.generator_block[g] = b;
            IntVec e(par.parameter_count);
            for (std::size_t r = 0; r < block.matrix.rows(); ++r)
                e[first + r] = block.matrix.at(r, k);
            par.exponents[g] = std::move(e);
        }
    }
    return par;
}

} // namespace semidec

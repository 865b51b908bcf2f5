#include "semidec/fibers.hpp"

#include "semidec/errors.hpp"
#include "semidec/toric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace semidec {

namespace {

IntVec require_pointed(const SemigroupPresentation& p) {
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("presentation is not pointed; kernel witness " +
                         vec_to_string(pt.witness));
    return pt.functional;
}

bool residual_ok(const IntVec& r, const SemigroupPresentation& p) {
    const std::size_t m = p.free_rows();
    for (std::size_t i = 0; i < m; ++i)
        if (r[i] != 0) return false;
    for (std::size_t j = 0; j < p.torsion_rows(); ++j)
        if (!mpz_divisible_p(r[m + j].get_mpz_t(), p.moduli()[j].get_mpz_t()))
            return false;
    return true;
}

// Bounded DFS behind member() and fiber(): variables in descending
// functional weight, counts ascending from zero; the functional bounds
// every coordinate because all generator weights are positive.
void fiber_search(const IntVec& m, const SemigroupPresentation& p,
                  const IntVec& functional, bool stop_at_first,
                  std::vector<IntVec>& out) {
    const std::size_t n = p.num_generators();
    std::vector<std::size_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    IntVec wa(n);
    for (std::size_t j = 0; j < n; ++j)
        wa[j] = dot_vec(functional, p.generator(j));
    std::stable_sort(vars.begin(), vars.end(),
                     [&](std::size_t a, std::size_t b) { return wa[a] > wa[b]; });

    IntVec residual = m;
    Int wr = dot_vec(functional, m);
    if (wr < 0) return;
    IntVec alpha(n);

    std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
        if (wr == 0 || idx == n) {
            // remaining coordinates must stay zero; check the residual
            if (!residual_ok(residual, p)) return false;
            IntVec found = alpha;
            for (std::size_t t = (wr == 0 ? idx : n); t < n; ++t) found[vars[t]] = 0;
            out.push_back(std::move(found));
            return stop_at_first;
        }
        std::size_t v = vars[idx];
        Int cmax = wr / wa[v];
        for (Int c = 0; c <= cmax; ++c) {
            alpha[v] = c;
            if (rec(idx + 1)) return true;
            // advance the residual by one more copy of generator v
            for (std::size_t r = 0; r < residual.size(); ++r)
                residual[r] -= p.matrix().at(r, v);
            wr -= wa[v];
        }
        // undo all cmax+1 steps taken above... the loop exits after
        // cmax+1 subtractions only when c reaches cmax+1
        Int steps = cmax + 1;
        for (std::size_t r = 0; r < residual.size(); ++r)
            residual[r] += steps * p.matrix().at(r, v);
        wr += steps * wa[v];
        alpha[v] = 0;
        return false;
    };
    rec(0);
}

} // namespace

std::optional<IntVec> member(const IntVec& m, const SemigroupPresentation& p,
                             const IntVec& functional) {
    if (m.size() != p.matrix().rows())
        throw math_error("member: degree dimension mismatch");
    std::vector<IntVec> out;
    fiber_search(m, p, functional, true, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

std::optional<IntVec> member(const IntVec& m, const SemigroupPresentation& p) {
    return member(m, p, require_pointed(p));
}

std::vector<IntVec> fiber(const IntVec& m, const SemigroupPresentation& p,
                          const IntVec& functional) {
    if (m.size() != p.matrix().rows())
        throw math_error("fiber: degree dimension mismatch");
    std::vector<IntVec> out;
    fiber_search(m, p, functional, false, out);
    std::sort(out.begin(), out.end(),
              [](const IntVec& a, const IntVec& b) { return lex_compare(a, b) < 0; });
    return out;
}

std::vector<IntVec> fiber(const IntVec& m, const SemigroupPresentation& p) {
    return fiber(m, p, require_pointed(p));
}

namespace {

std::vector<std::vector<std::size_t>> connected_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : edges) parent[find(a)] = find(b);

    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> comp_of(n, SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t r = find(v);
        if (comp_of[r] == SIZE_MAX) {
            comp_of[r] = comps.size();
            comps.emplace_back();
        }
        comps[comp_of[r]].push_back(v);
    }
    return comps;
}

bool supports_intersect(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return true;
    return false;
}

} // namespace

FiberComplex nabla(const IntVec& m, const SemigroupPresentation& p,
                   const IntVec& functional) {
    FiberComplex fc;
    fc.degree = p.reduce_degree(m);
    fc.vertices = fiber(m, p, functional);
    for (std::size_t i = 0; i < fc.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < fc.vertices.size(); ++j)
            if (supports_intersect(fc.vertices[i], fc.vertices[j]))
                fc.edges.emplace_back(i, j);
    fc.components = connected_components(fc.vertices.size(), fc.edges);
    return fc;
}

FiberComplex nabla(const IntVec& m, const SemigroupPresentation& p) {
    return nabla(m, p, require_pointed(p));
}

DeltaComplex delta(const IntVec& m, const SemigroupPresentation& p) {
    IntVec functional = require_pointed(p);
    DeltaComplex dc;
    dc.degree = p.reduce_degree(m);
    const std::size_t n = p.num_generators();

    for (std::size_t j = 0; j < n; ++j) {
        IntVec rem = sub_vec(m, p.generator(j));
        if (member(rem, p, functional)) dc.vertices.push_back(j);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pos_edges;
    for (std::size_t a = 0; a < dc.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < dc.vertices.size(); ++b) {
            IntVec rem = sub_vec(sub_vec(m, p.generator(dc.vertices[a])),
                                 p.generator(dc.vertices[b]));
            if (member(rem, p, functional)) pos_edges.emplace_back(a, b);
        }

    auto comps = connected_components(dc.vertices.size(), pos_edges);
    for (auto& comp : comps) {
        for (std::size_t& v : comp) v = dc.vertices[v];
        dc.components.push_back(comp);
    }
    for (auto [a, b] : pos_edges)
        dc.edges.emplace_back(dc.vertices[a], dc.vertices[b]);
    return dc;
}

bool delta_has_face(const IntVec& m, const SemigroupPresentation& p,
                    const std::vector<std::size_t>& face) {
    IntVec rem = m;
    for (std::size_t i : face) rem = sub_vec(rem, p.generator(i));
    return member(rem, p).has_value();
}

std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
combinatorial_decomposable(const SemigroupPresentation& p, const MarkovBasis& m) {
    IntVec functional = require_pointed(p);
    if (!m.minimal)
        throw math_error("combinatorial check requires a minimal Markov basis");
    const std::size_t n = p.num_generators();
    if (n < 2) return std::nullopt;
    if (n > 21)
        throw math_error("bipartition search exceeds the 2^20 candidate cap");

    // union of fiber supports per Betti degree, as bitmasks
    std::vector<std::uint64_t> betti_masks;
    for (const IntVec& deg : betti_degrees(m)) {
        std::uint64_t mask = 0;
        for (const IntVec& v : fiber(deg, p, functional))
            for (std::size_t i = 0; i < n; ++i)
                if (v[i] > 0) mask |= (std::uint64_t{1} << i);
        betti_masks.push_back(mask);
    }

    std::uint64_t all = (n == 64) ? ~std::uint64_t{0}
                                  : ((std::uint64_t{1} << n) - 1);
    std::uint64_t relation_vars = 0;
    for (std::uint64_t b : betti_masks) relation_vars |= b;

    auto side_ok = [&](std::uint64_t side) {
        // realized by some disconnected fiber, or entirely relation-free
        if ((side & relation_vars) == 0) return true;
        for (std::uint64_t b : betti_masks)
            if ((b & side) == b) return true;
        return false;
    };

    // generator 0 pinned to C1; candidates ordered by mask
    std::uint64_t limit = std::uint64_t{1} << (n - 1);
    for (std::uint64_t pick = 0; pick + 1 < limit; ++pick) {
        std::uint64_t c1 = 1 | (pick << 1);
        std::uint64_t c2 = all & ~c1;
        bool ok = true;
        for (std::uint64_t b : betti_masks)
            if ((b & c1) != b && (b & c2) != b) {
                ok = false;
                break;
            }
        if (!ok || !side_ok(c1) || !side_ok(c2)) continue;

        std::vector<std::size_t> part1, part2;
        for (std::size_t i = 0; i < n; ++i)
            ((c1 >> i) & 1 ? part1 : part2).push_back(i);
        return std::make_pair(part1, part2);
    }
    return std::nullopt;
}

namespace {

// Integer coordinates of v in an HNF basis, by back-substitution.
std::optional<IntVec> integer_coordinates(const LatticeBasis& l, const IntVec& v) {
    IntVec res = v;
    IntVec coord(l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) {
        std::size_t piv = 0;
        while (piv < l.ambient_dim() && l.basis().at(i, piv) == 0) ++piv;
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), res[piv].get_mpz_t(),
                    l.basis().at(i, piv).get_mpz_t());
        if (rem != 0) return std::nullopt;
        coord[i] = q;
        if (q != 0)
            for (std::size_t k = piv; k < l.ambient_dim(); ++k)
                res[k] -= q * l.basis().at(i, k);
    }
    if (!is_zero_vec(res)) return std::nullopt;
    return coord;
}

// When the intersection lattice corresponds to a cyclic infinite
// subgroup of the ambient group, produce a generator; otherwise nullopt.
// The torsion preimage rows c_j e_{m+j} always lie in the intersection,
// so the subgroup is the quotient of the lattice by them.
std::optional<IntVec> cyclic_generator(const LatticeBasis& inter,
                                       const SemigroupPresentation& p) {
    const std::size_t h = p.torsion_rows();
    const std::size_t m = p.free_rows();
    if (inter.rank() != h + 1) return std::nullopt;

    IntMatrix x(h, h + 1);
    for (std::size_t j = 0; j < h; ++j) {
        IntVec t(p.matrix().rows());
        t[m + j] = p.moduli()[j];
        auto coord = integer_coordinates(inter, t);
        if (!coord) return std::nullopt;
        x.set_row(j, *coord);
    }

    // quotient is Z exactly when the torsion rows span a saturated
    // corank-1 sublattice of the coordinate lattice
    LatticeBasis phi = integer_kernel(x);
    if (phi.rank() != 1) return std::nullopt;
    if (h > 0 && !row_lattice_equal(x, integer_kernel(phi.basis()).basis()))
        return std::nullopt;

    // delta with phi . coords(delta) = 1 generates the quotient
    IntVec f = phi.basis().row(0);
    Int g = 0;
    IntVec y(h + 1);
    for (std::size_t i = 0; i < h + 1; ++i) {
        if (f[i] == 0) continue;
        if (g == 0) {
            g = abs(f[i]);
            y[i] = f[i] > 0 ? 1 : -1;
        } else {
            Int gg, s, t;
            mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                       f[i].get_mpz_t());
            for (std::size_t k = 0; k < i; ++k) y[k] *= s;
            y[i] = t;
            g = gg;
        }
    }
    if (g != 1) return std::nullopt;  // cannot happen: phi is primitive

    IntVec delta(p.matrix().rows());
    for (std::size_t i = 0; i < h + 1; ++i)
        if (y[i] != 0)
            delta = add_vec(delta, scale_vec(inter.basis().row(i), y[i]));
    return delta;
}

IntVec embed_witness(const IntVec& local, const std::vector<std::size_t>& cols,
                     std::size_t n) {
    IntVec w(n);
    for (std::size_t k = 0; k < cols.size(); ++k) w[cols[k]] = local[k];
    return w;
}

} // namespace

std::optional<GluingCertificate> detect_block_gluing(const SemigroupPresentation& p,
                                                     const Decomposition& dec,
                                                     std::size_t block) {
    const std::size_t n = p.num_generators();
    const auto& gens = dec.blocks.at(block).generators;
    const std::size_t k = gens.size();
    if (k < 2) return std::nullopt;
    if (k > 21)
        throw math_error("gluing bipartition search exceeds the 2^20 cap on block " +
                         std::to_string(block + 1));

    std::uint64_t limit = std::uint64_t{1} << (k - 1);
    for (std::uint64_t pick = 0; pick + 1 < limit; ++pick) {
        std::vector<std::size_t> c1{gens[0]}, c2;
        for (std::size_t t = 1; t < k; ++t)
            ((pick >> (t - 1)) & 1 ? c1 : c2).push_back(gens[t]);

        LatticeBasis inter = lattice_intersection(generated_group(p, c1),
                                                  generated_group(p, c2));
        auto d = cyclic_generator(inter, p);
        if (!d) continue;

        SemigroupPresentation s1 = p.restrict_to(c1);
        SemigroupPresentation s2 = p.restrict_to(c2);
        for (int sign = 0; sign < 2; ++sign) {
            IntVec cand = sign ? neg_vec(*d) : *d;
            auto w1 = member(cand, s1);
            if (!w1) continue;
            auto w2 = member(cand, s2);
            if (!w2) continue;
            GluingCertificate cert;
            cert.part1 = c1;
            cert.part2 = c2;
            cert.degree = p.reduce_degree(cand);
            cert.witness1 = embed_witness(*w1, c1, n);
            cert.witness2 = embed_witness(*w2, c2, n);
            cert.block_id = block;
            return cert;
        }
    }
    return std::nullopt;
}

std::optional<GluingCertificate> detect_gluing(const SemigroupPresentation& p) {
    require_pointed(p);
    Decomposition dec = decompose_semigroup(p, DecomposeMode::kernel);
    for (std::size_t b = 0; b < dec.blocks.size(); ++b)
        if (auto cert = detect_block_gluing(p, dec, b)) return cert;
    return std::nullopt;
}

} // namespace semidec

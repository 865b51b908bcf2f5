#include "semidec/exact_linalg.hpp"

#include "semidec/errors.hpp"
#include "semidec/simplex.hpp"

#include <algorithm>

namespace semidec {

namespace {

// Combines rows r and i of (h, u) so that h(r, j) becomes gcd(h(r,j), h(i,j))
// and h(i, j) becomes 0. The 2x2 transform [[p, q], [-b/g, a/g]] has
// determinant 1, so unimodularity of u is preserved.
void gcd_rows(IntMatrix& h, IntMatrix& u, std::size_t r, std::size_t i, std::size_t j) {
    Int a = h.at(r, j), b = h.at(i, j);
    if (b == 0) return;
    if (a == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        return;
    }
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int adg = a / g, bdg = b / g;
    for (std::size_t k = 0; k < h.cols(); ++k) {
        Int hr = h.at(r, k), hi = h.at(i, k);
        h.at(r, k) = p * hr + q * hi;
        h.at(i, k) = adg * hi - bdg * hr;
    }
    for (std::size_t k = 0; k < u.cols(); ++k) {
        Int ur = u.at(r, k), ui = u.at(i, k);
        u.at(r, k) = p * ur + q * ui;
        u.at(i, k) = adg * ui - bdg * ur;
    }
}

} // namespace

HnfResult hnf(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(rows);

    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        for (std::size_t i = r + 1; i < rows; ++i)
            gcd_rows(h, u, r, i, j);
        if (h.at(r, j) == 0) continue;
        if (h.at(r, j) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        // reduce entries above the pivot into [0, pivot)
        const Int& piv = h.at(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), piv.get_mpz_t());
            if (q != 0) {
                h.add_row_multiple(i, r, -q);
                u.add_row_multiple(i, r, -q);
            }
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

std::size_t rank(const IntMatrix& m) {
    IntMatrix h = hnf(m).h;
    std::size_t r = 0;
    while (r < h.rows() && !h.row_is_zero(r)) ++r;
    return r;
}

namespace {

IntMatrix nonzero_part(const IntMatrix& h) {
    std::size_t r = 0;
    while (r < h.rows() && !h.row_is_zero(r)) ++r;
    IntMatrix out(r, h.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) out.at(i, j) = h.at(i, j);
    return out;
}

} // namespace

bool row_lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols())
        throw math_error("row_lattice_equal: column count mismatch");
    return nonzero_part(hnf(a).h) == nonzero_part(hnf(b).h);
}

LatticeBasis LatticeBasis::from_spanning_rows(const IntMatrix& rows) {
    LatticeBasis l(rows.cols());
    l.basis_ = nonzero_part(hnf(rows).h);
    return l;
}

bool LatticeBasis::contains(const IntVec& v) const {
    if (v.size() != ambient_) throw math_error("lattice membership: dimension mismatch");
    IntVec res = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t p = 0;
        while (p < ambient_ && basis_.at(i, p) == 0) ++p;
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), res[p].get_mpz_t(),
                    basis_.at(i, p).get_mpz_t());
        if (rem != 0) return false;
        if (q != 0)
            for (std::size_t k = p; k < ambient_; ++k) res[k] -= q * basis_.at(i, k);
    }
    return is_zero_vec(res);
}

std::optional<std::vector<Rat>> LatticeBasis::span_coordinates(const IntVec& v) const {
    if (v.size() != ambient_) throw math_error("span_coordinates: dimension mismatch");
    std::vector<Rat> res(ambient_), coord(basis_.rows());
    for (std::size_t k = 0; k < ambient_; ++k) res[k] = Rat(v[k]);
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t p = 0;
        while (p < ambient_ && basis_.at(i, p) == 0) ++p;
        coord[i] = res[p] / Rat(basis_.at(i, p));
        if (coord[i] != 0)
            for (std::size_t k = p; k < ambient_; ++k)
                res[k] -= coord[i] * Rat(basis_.at(i, k));
    }
    for (const Rat& r : res)
        if (r != 0) return std::nullopt;
    return coord;
}

std::optional<Int> LatticeBasis::saturation_multiplier(const IntVec& v) const {
    auto coord = span_coordinates(v);
    if (!coord) return std::nullopt;
    Int t = 1;
    for (const Rat& c : *coord)
        mpz_lcm(t.get_mpz_t(), t.get_mpz_t(), c.get_den().get_mpz_t());
    return t;
}

LatticeBasis integer_kernel(const IntMatrix& m) {
    // U' * M^T = H': the rows of U' opposite the zero rows of H' span
    // {x : M x = 0}, and they are independent because U' is unimodular.
    HnfResult t = hnf(m.transpose());
    std::size_t r = 0;
    while (r < t.h.rows() && !t.h.row_is_zero(r)) ++r;
    IntMatrix gen(t.h.rows() - r, m.cols());
    for (std::size_t i = r; i < t.h.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) gen.at(i - r, j) = t.u.at(i, j);
    return LatticeBasis::from_spanning_rows(gen);
}

LatticeBasis kernel_with_torsion(const SemigroupPresentation& p) {
    const IntMatrix& a = p.matrix();
    const std::size_t h = p.torsion_rows();
    if (h == 0) return integer_kernel(a);
    const std::size_t n = a.cols(), m = p.free_rows();
    IntMatrix aug(a.rows(), n + h);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < h; ++j) aug.at(m + j, n + j) = p.moduli()[j];
    LatticeBasis full = integer_kernel(aug);
    IntMatrix proj(full.rank(), n);
    for (std::size_t i = 0; i < full.rank(); ++i)
        for (std::size_t j = 0; j < n; ++j) proj.at(i, j) = full.basis().at(i, j);
    return LatticeBasis::from_spanning_rows(proj);
}

LatticeBasis lattice_intersection(const LatticeBasis& b1, const LatticeBasis& b2) {
    if (b1.ambient_dim() != b2.ambient_dim())
        throw math_error("lattice_intersection: ambient dimension mismatch");
    const std::size_t n = b1.ambient_dim();
    const std::size_t r1 = b1.rank(), r2 = b2.rank();
    if (r1 == 0 || r2 == 0) return LatticeBasis(n);

    // v = x.B1 = y.B2 iff (x, y) is in the kernel of [B1^T | -B2^T]
    IntMatrix stacked(n, r1 + r2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < r1; ++k) stacked.at(i, k) = b1.basis().at(k, i);
        for (std::size_t k = 0; k < r2; ++k) stacked.at(i, r1 + k) = -b2.basis().at(k, i);
    }
    LatticeBasis ker = integer_kernel(stacked);
    IntMatrix gen(ker.rank(), n);
    for (std::size_t i = 0; i < ker.rank(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int s = 0;
            for (std::size_t k = 0; k < r1; ++k)
                s += ker.basis().at(i, k) * b1.basis().at(k, j);
            gen.at(i, j) = s;
        }
    return LatticeBasis::from_spanning_rows(gen);
}

LatticeBasis generated_group(const SemigroupPresentation& p,
                             const std::vector<std::size_t>& cols) {
    const std::size_t dim = p.matrix().rows();
    const std::size_t m = p.free_rows(), h = p.torsion_rows();
    IntMatrix gen(cols.size() + h, dim);
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t r = 0; r < dim; ++r) gen.at(i, r) = p.matrix().at(r, cols[i]);
    for (std::size_t j = 0; j < h; ++j) gen.at(cols.size() + j, m + j) = p.moduli()[j];
    return LatticeBasis::from_spanning_rows(gen);
}

PointednessResult is_pointed(const SemigroupPresentation& p) {
    const std::size_t n = p.num_generators();
    const std::size_t m = p.free_rows(), h = p.torsion_rows();
    LatticeBasis ker = kernel_with_torsion(p);

    PointednessResult result;
    if (ker.rank() > 0) {
        // x in Q-span(ker) iff N x = 0, N spanning the orthogonal lattice
        LatticeBasis orth = integer_kernel(ker.basis());
        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        for (std::size_t i = 0; i < orth.rank(); ++i) {
            std::vector<Rat> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rat(orth.basis().at(i, j));
            rows.push_back(std::move(row));
            rhs.emplace_back(0);
        }
        rows.emplace_back(n, Rat(1));
        rhs.emplace_back(1);

        if (auto x = feasible_point(rows, rhs)) {
            // scale the rational point into the lattice
            Int d = 1;
            for (const Rat& xi : *x)
                mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), xi.get_den().get_mpz_t());
            IntVec v(n);
            for (std::size_t j = 0; j < n; ++j) {
                Rat scaled = Rat(d) * (*x)[j];
                v[j] = scaled.get_num();
            }
            Int t = ker.saturation_multiplier(v).value();
            result.pointed = false;
            result.witness = scale_vec(v, t);
            return result;
        }
    }

    result.pointed = true;

    // strictly positive functional on the free rows: w . a_j >= 1, found
    // as an exact LP with w split into positive and negative parts
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rat> row(2 * m + n);
        for (std::size_t i = 0; i < m; ++i) {
            row[i] = Rat(p.matrix().at(i, j));
            row[m + i] = -Rat(p.matrix().at(i, j));
        }
        row[2 * m + j] = -1;  // slack: w.a_j - s_j = 1
        rows.push_back(std::move(row));
        rhs.emplace_back(1);
    }
    auto w = feasible_point(rows, rhs);
    if (!w)
        throw math_error("pointed presentation admits no positive functional");
    std::vector<Rat> wr(m);
    Int d = 1;
    for (std::size_t i = 0; i < m; ++i) {
        wr[i] = (*w)[i] - (*w)[m + i];
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), wr[i].get_den().get_mpz_t());
    }
    result.functional.assign(m + h, Int(0));
    for (std::size_t i = 0; i < m; ++i)
        result.functional[i] = Rat(Rat(d) * wr[i]).get_num();
    return result;
}

} // namespace semidec

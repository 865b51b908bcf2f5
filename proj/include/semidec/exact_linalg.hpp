#pragma once

#include "semidec/int_matrix.hpp"
#include "semidec/presentation.hpp"

#include <optional>
#include <vector>

namespace semidec {

struct HnfResult {
    IntMatrix h;  // row Hermite normal form of the input
    IntMatrix u;  // unimodular, u * input = h
};

/// Row Hermite normal form with transform: returns (H, U) with U*M = H,
/// |det U| = 1. Convention: echelon with strictly increasing pivot columns,
/// positive pivots, entries above a pivot reduced into [0, pivot), zero
/// rows at the bottom. Entries in non-pivot columns are unconstrained.
HnfResult hnf(const IntMatrix& m);

/// Number of nonzero rows of hnf(m).
std::size_t rank(const IntMatrix& m);

/// True iff the integer row spans of a and b coincide (Test for Equality:
/// the nonzero parts of the two Hermite forms agree).
bool row_lattice_equal(const IntMatrix& a, const IntMatrix& b);

/// A sublattice of Z^n in canonical form: basis rows are independent and
/// the basis matrix equals its own Hermite normal form (no zero rows).
class LatticeBasis {
public:
    explicit LatticeBasis(std::size_t ambient_dim = 0)
        : basis_(0, ambient_dim), ambient_(ambient_dim) {}

    /// Canonicalizes arbitrary spanning rows (HNF, zero rows dropped).
    static LatticeBasis from_spanning_rows(const IntMatrix& rows);

    const IntMatrix& basis() const { return basis_; }
    std::size_t rank() const { return basis_.rows(); }
    std::size_t ambient_dim() const { return ambient_; }
    bool trivial() const { return basis_.rows() == 0; }

    /// Exact membership test by back-substitution along pivot columns.
    bool contains(const IntVec& v) const;

    /// Rational coordinates of v in the basis, if v lies in the Q-span.
    std::optional<std::vector<Rat>> span_coordinates(const IntVec& v) const;

    /// Smallest t >= 1 with t*v in the lattice, given v in the Q-span.
    std::optional<Int> saturation_multiplier(const IntVec& v) const;

    bool operator==(const LatticeBasis& rhs) const = default;

private:
    IntMatrix basis_;
    std::size_t ambient_;
};

/// Canonical basis of {x in Z^cols : M x = 0}.
LatticeBasis integer_kernel(const IntMatrix& m);

/// Canonical basis of ker S = {x in Z^n : A x = 0 with the last h rows
/// read modulo c_j}: the projection onto the first n coordinates of the
/// integer kernel of [A | diag-augmented moduli].
LatticeBasis kernel_with_torsion(const SemigroupPresentation& p);

/// Canonical basis of the intersection of two sublattices of Z^n.
LatticeBasis lattice_intersection(const LatticeBasis& b1, const LatticeBasis& b2);

/// Lattice spanned by the columns of A together with the torsion relation
/// rows c_j * e_{m+j}; the group generated by the listed generators, as a
/// sublattice of Z^{m+h}.
LatticeBasis generated_group(const SemigroupPresentation& p,
                             const std::vector<std::size_t>& cols);

struct PointednessResult {
    bool pointed = false;
    /// Nonzero nonnegative element of ker S when not pointed.
    IntVec witness;
    /// When pointed: integer functional supported on the free rows with
    /// functional . a_j > 0 for every generator; used to bound fibers.
    IntVec functional;
};

/// Decides ker S ∩ N^n = {0} by exact rational feasibility of
/// {x >= 0, sum x = 1, x in Q-span(ker S)} (pointed iff infeasible).
PointednessResult is_pointed(const SemigroupPresentation& p);

} // namespace semidec

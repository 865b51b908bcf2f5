#pragma once

#include "semidec/binomial.hpp"
#include "semidec/decompose.hpp"
#include "semidec/presentation.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace semidec {

/// The fiber of an S-degree m together with the 1-skeleton of the
/// simplicial complex on its monomials (faces = subsets with common
/// divisor != 1). Only connectivity is ever consumed, so higher faces are
/// not materialized.
struct FiberComplex {
    IntVec degree;
    std::vector<IntVec> vertices;                       // sorted lexicographically
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // supports intersect
    std::vector<std::vector<std::size_t>> components;   // vertex indices
    bool connected() const { return components.size() <= 1; }
};

/// The complex on generator indices: i is a vertex iff m - a_i is in S,
/// {i, j} an edge iff m - a_i - a_j is in S. Faces of higher dimension
/// are answered by the membership predicate, not stored.
struct DeltaComplex {
    IntVec degree;
    std::vector<std::size_t> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> components;
    bool connected() const { return components.size() <= 1; }
};

struct GluingCertificate {
    std::vector<std::size_t> part1, part2;  // original generator indices
    IntVec degree;                          // the gluing degree d
    IntVec witness1, witness2;              // d as N-combination of each part
    std::size_t block_id = 0;               // irreducible summand that glues
};

/// Nonnegative integer alpha with A*alpha = m (torsion rows modulo c_j),
/// or nullopt. Bounded depth-first search using the positive functional
/// from is_pointed. Requires a pointed presentation.
std::optional<IntVec> member(const IntVec& m, const SemigroupPresentation& p);
/// Same, reusing a precomputed functional.
std::optional<IntVec> member(const IntVec& m, const SemigroupPresentation& p,
                             const IntVec& functional);

/// All alpha >= 0 with sdegree(alpha) = m, sorted lexicographically.
std::vector<IntVec> fiber(const IntVec& m, const SemigroupPresentation& p);
std::vector<IntVec> fiber(const IntVec& m, const SemigroupPresentation& p,
                          const IntVec& functional);

FiberComplex nabla(const IntVec& m, const SemigroupPresentation& p);
FiberComplex nabla(const IntVec& m, const SemigroupPresentation& p,
                   const IntVec& functional);
DeltaComplex delta(const IntVec& m, const SemigroupPresentation& p);

/// Face predicate of the index complex: m - sum_{i in face} a_i in S.
/// Faces are downward closed; only the 1-skeleton is stored, higher faces
/// are answered on demand.
bool delta_has_face(const IntVec& m, const SemigroupPresentation& p,
                    const std::vector<std::size_t>& face);

/// Combinatorial decomposability check over the Betti degrees of a
/// minimal basis: searches bipartitions (C1, C2) of the generators such
/// that every disconnected fiber lives entirely on one side and each side
/// is either realized by some Betti degree or free of relations. A
/// validation oracle for decompose_semigroup, not the production path.
std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
combinatorial_decomposable(const SemigroupPresentation& p, const MarkovBasis& m);

/// Gluing detection per irreducible summand: enumerates bipartitions of
/// each block's generators and accepts when the intersection of the two
/// generated groups is cyclic on an element of both subsemigroups.
std::optional<GluingCertificate> detect_gluing(const SemigroupPresentation& p);

/// Same search restricted to one block of an existing decomposition.
std::optional<GluingCertificate> detect_block_gluing(const SemigroupPresentation& p,
                                                     const Decomposition& dec,
                                                     std::size_t block);

} // namespace semidec

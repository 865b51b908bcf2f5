#pragma once

#include "semidec/exact_linalg.hpp"
#include "semidec/int_matrix.hpp"
#include "semidec/presentation.hpp"

#include <cstddef>
#include <vector>

namespace semidec {

/// One irreducible diagonal block: an HNF matrix with full row rank whose
/// rows form a single support-connected component, together with the
/// original column (generator) indices it covers, in ascending order.
struct DecompositionBlock {
    IntMatrix matrix;
    std::vector<std::size_t> generators;
};

enum class DecomposeMode { kernel, direct };

struct Decomposition {
    Permutation q;        // column permutation packing blocks contiguously
    IntMatrix p;          // unimodular; p * input * Q = d
    IntMatrix d;          // HNF-diagonal form of the input
    std::vector<DecompositionBlock> blocks;
    std::vector<std::size_t> free_generators;  // columns in no relation
    bool decomposable = false;
    DecomposeMode mode = DecomposeMode::kernel;
    IntMatrix input;      // the matrix that was diagonalized

    std::size_t num_summands() const { return blocks.size() + free_generators.size(); }
    /// Block index sets plus singleton free generators, in block order.
    std::vector<std::vector<std::size_t>> generator_partition() const;
};

/// Diagonalizes L: computes H = hnf(L), groups the nonzero rows of H into
/// support-connected components (transitive closure of "supports
/// intersect"), stacks each component's rows and packs its columns
/// contiguously. decomposable means the relation structure splits into at
/// least two summands (counting relation-free columns as trivial summands).
Decomposition hnf_diagonalize(const IntMatrix& l);

/// mode kernel: diagonalizes a basis of ker S; the theorem-backed route.
/// mode direct: diagonalizes the generator matrix itself (torsion-free
/// only); sufficient but not necessary, see the zero-kernel caveat.
Decomposition decompose_semigroup(const SemigroupPresentation& p,
                                  DecomposeMode mode = DecomposeMode::kernel);

/// All three conditions of the HNF-diagonal shape: zero rows at the
/// bottom, zero columns at the right, and contiguous diagonal blocks that
/// are in HNF, of full row rank and support-connected.
bool is_hnf_diagonal(const IntMatrix& d);

/// The HNF-diagonal form P*A*Q of the generator matrix itself; its columns
/// generate a semigroup isomorphic to S with block-disjoint supports.
/// Torsion-free presentations only.
IntMatrix nice_generators(const SemigroupPresentation& p);

/// Monomial maps x_j = prod_k q_k^{e_kj} read off the nice generator
/// matrix; the blocks use disjoint parameter sets.
struct Parametrization {
    std::size_t parameter_count = 0;
    /// Per block: [first, last) parameter indices.
    std::vector<std::pair<std::size_t, std::size_t>> block_parameters;
    /// Per generator (original order): owning block.
    std::vector<std::size_t> generator_block;
    /// Per generator: exponent vector over all parameters.
    std::vector<IntVec> exponents;
};

Parametrization reparametrize(const SemigroupPresentation& p);

} // namespace semidec

#pragma once

#include "semidec/binomial.hpp"
#include "semidec/decompose.hpp"
#include "semidec/exact_linalg.hpp"

#include <chrono>
#include <optional>
#include <vector>

namespace semidec {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// A Groebner basis element oriented by a term order. Unlike Binomial,
/// the two monomials may share variables (x_i-multiples of lattice
/// binomials occur in the bases that drive saturation).
struct OrientedBinomial {
    IntVec lead;
    IntVec tail;
    bool operator==(const OrientedBinomial& rhs) const = default;
};

/// Reduced Groebner basis of the binomial ideal generated by gens.
/// Every input reduces to zero against the output and all S-pairs of the
/// output reduce to zero.
std::vector<OrientedBinomial> buchberger(const std::vector<OrientedBinomial>& gens,
                                         const TermOrder& order,
                                         const Deadline& deadline = {});
std::vector<OrientedBinomial> buchberger(const std::vector<Binomial>& gens,
                                         const TermOrder& order,
                                         const Deadline& deadline = {});

/// Normal form of (lead, tail) against a Groebner basis; zero becomes a
/// pair of equal monomials.
OrientedBinomial normal_form(OrientedBinomial p, const std::vector<OrientedBinomial>& gb,
                             const TermOrder& order);
bool reduces_to_zero(const Binomial& b, const std::vector<OrientedBinomial>& gb,
                     const TermOrder& order);

/// Strictly positive integer weights w with K * w = 0, so that lattice
/// binomials are homogeneous and weighted orders are well-founded.
/// Exists iff the lattice meets N^n only in 0.
IntVec positive_grading(const LatticeBasis& k);

/// Binomial generating set of the lattice ideal I_K, by saturating the
/// basis binomials variable by variable (one Groebner basis per variable,
/// in an order making that variable cheapest). Not necessarily minimal;
/// the lattice of exponent vectors of the output equals K.
std::vector<Binomial> lattice_ideal_gens(const LatticeBasis& k,
                                         const Deadline& deadline = {});

/// Minimal Markov basis extracted from candidate generators: for every
/// candidate S-degree whose fiber complex is disconnected, one binomial
/// per extra component, chosen as a star between canonical component
/// representatives. Requires a pointed presentation.
MarkovBasis minimal_markov(const std::vector<Binomial>& gens,
                           const SemigroupPresentation& p,
                           const Deadline& deadline = {});

/// Convenience: kernel, lattice ideal generators, then minimal_markov.
MarkovBasis minimal_markov(const SemigroupPresentation& p,
                           const Deadline& deadline = {});

/// Distinct S-degrees of a minimal basis, sorted.
std::vector<IntVec> betti_degrees(const MarkovBasis& m);

/// True iff every Betti fiber complex has exactly two connected
/// components, both single monomials; each degree then forces a unique
/// binomial up to sign.
bool is_unique_markov(const MarkovBasis& m, const SemigroupPresentation& p);

/// card(minimal basis) == rank(ker S), the height of the lattice ideal.
bool is_complete_intersection(const MarkovBasis& m, const LatticeBasis& k);

/// Primitive elements of the lattice: nonzero v with no other nonzero
/// lattice vector u with u+ <= v+ and u- <= v-. Completion procedure with
/// a 1-norm cap; exceeding the cap is an error, never a silent truncation.
/// Default cap: twice the largest basis row 1-norm.
std::vector<Binomial> graver_basis(const LatticeBasis& k,
                                   std::optional<Int> degree_cap = {});

/// Embeds per-block Markov bases into the whole variable set along the
/// block index sets and concatenates them in block order.
MarkovBasis assemble_decomposed(const SemigroupPresentation& p,
                                const Decomposition& dec,
                                const std::vector<MarkovBasis>& per_block);

/// Minimal Markov basis of every block of a kernel-mode decomposition,
/// each computed on the restricted sub-presentation in block-local
/// coordinates. Blocks run concurrently when SEMIDEC_THREADS > 1; the
/// result order is the block order regardless of scheduling.
std::vector<MarkovBasis> per_block_markov(const SemigroupPresentation& p,
                                          const Decomposition& dec,
                                          const Deadline& deadline = {});

} // namespace semidec

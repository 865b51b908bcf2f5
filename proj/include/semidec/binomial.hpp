#pragma once

#include "semidec/int_matrix.hpp"
#include "semidec/presentation.hpp"

#include <cstddef>
#include <vector>

namespace semidec {

/// A binomial X^(v+) - X^(v-) stored as the integer vector v; the positive
/// and negative parts have disjoint supports by construction. Canonical
/// sign: the first nonzero coordinate is positive.
class Binomial {
public:
    Binomial() = default;
    explicit Binomial(IntVec v);

    const IntVec& vector() const { return v_; }
    std::size_t dim() const { return v_.size(); }
    bool is_zero() const { return is_zero_vec(v_); }

    IntVec plus() const;
    IntVec minus() const;
    std::vector<std::size_t> support() const;

    /// Same binomial on a larger variable set; local index k maps to
    /// positions[k].
    Binomial embed(std::size_t dim, const std::vector<std::size_t>& positions) const;

    std::string to_string(const std::vector<std::string>& labels = {}) const;

    bool operator==(const Binomial& rhs) const = default;
    bool operator<(const Binomial& rhs) const { return lex_compare(v_, rhs.v_) < 0; }

private:
    IntVec v_;
};

/// S-degree of a nonnegative exponent vector: A*e with the torsion rows
/// reduced modulo their moduli.
IntVec sdegree(const IntVec& exponent, const SemigroupPresentation& p);

/// "x1^2*x3" style rendering of a nonnegative exponent vector.
std::string monomial_to_string(const IntVec& exponent,
                               const std::vector<std::string>& labels = {});

/// A*plus and A*minus agree modulo the moduli.
bool is_homogeneous(const Binomial& b, const SemigroupPresentation& p);

/// Total order on monomials, compatible with multiplication and
/// well-founded thanks to the strictly positive grading weights.
class TermOrder {
public:
    enum class Kind { grevlex, lex, grlex };

    TermOrder(Kind kind, std::vector<std::size_t> priority, IntVec weights);

    /// Weighted graded reverse lex with variables in index order.
    static TermOrder grevlex(IntVec weights);

    std::size_t num_vars() const { return priority_.size(); }
    Int weighted_degree(const IntVec& u) const;

    /// -1, 0, 1 for u < v, u == v, u > v.
    int compare(const IntVec& u, const IntVec& v) const;
    bool less(const IntVec& u, const IntVec& v) const { return compare(u, v) < 0; }

    /// Same order kind and weights with the given variable made cheapest.
    TermOrder with_cheapest(std::size_t var) const;

private:
    Kind kind_;
    std::vector<std::size_t> priority_;  // most expensive first
    IntVec weights_;
};

/// A minimal (or candidate) binomial generating set with per-element
/// S-degrees and block provenance (-1 = computed on the whole semigroup).
struct MarkovBasis {
    std::vector<Binomial> binomials;
    std::vector<IntVec> sdegrees;
    std::vector<int> block_ids;
    bool minimal = false;

    std::size_t size() const { return binomials.size(); }
    bool operator==(const MarkovBasis& rhs) const = default;
};

} // namespace semidec

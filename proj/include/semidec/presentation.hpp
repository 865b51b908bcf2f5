#pragma once

#include "semidec/int_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semidec {

/// A finitely generated commutative semigroup S inside
/// Z^m x Z/c_1 x ... x Z/c_h, given by the (m+h) x n generator matrix A
/// whose columns are the generators. The moduli c_1..c_h attach to the
/// last h rows of A. Zero columns are rejected on construction.
class SemigroupPresentation {
public:
    SemigroupPresentation() = default;
    SemigroupPresentation(IntMatrix generators, IntVec moduli = {},
                          std::vector<std::string> labels = {});

    const IntMatrix& matrix() const { return a_; }
    const IntVec& moduli() const { return moduli_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t num_generators() const { return a_.cols(); }
    std::size_t free_rows() const { return a_.rows() - moduli_.size(); }
    std::size_t torsion_rows() const { return moduli_.size(); }
    bool torsion_free() const { return moduli_.empty(); }

    IntVec generator(std::size_t j) const { return a_.col(j); }

    /// Sub-presentation on the given generator (column) indices; the
    /// ambient group and moduli are unchanged.
    SemigroupPresentation restrict_to(const std::vector<std::size_t>& cols) const;

    /// Reduces the torsion rows of a degree vector into [0, c_j).
    IntVec reduce_degree(IntVec degree) const;

    bool operator==(const SemigroupPresentation& rhs) const;

private:
    IntMatrix a_;
    IntVec moduli_;
    std::vector<std::string> labels_;
};

} // namespace semidec

#include "semidec/presentation.hpp"

#include "semidec/errors.hpp"

namespace semidec {

SemigroupPresentation::SemigroupPresentation(IntMatrix generators, IntVec moduli,
                                             std::vector<std::string> labels)
    : a_(std::move(generators)), moduli_(std::move(moduli)), labels_(std::move(labels)) {
    if (moduli_.size() > a_.rows())
        throw math_error("more moduli than matrix rows");
    for (const Int& c : moduli_)
        if (c < 1) throw math_error("nonpositive torsion modulus");
    for (std::size_t j = 0; j < a_.cols(); ++j)
        if (a_.col_is_zero(j))
            throw math_error("zero generator column " + std::to_string(j + 1));
    if (!labels_.empty() && labels_.size() != a_.cols())
        throw math_error("label count does not match generator count");
}

SemigroupPresentation SemigroupPresentation::restrict_to(
    const std::vector<std::size_t>& cols) const {
    IntMatrix sub = a_.submatrix(0, a_.rows(), cols);
    std::vector<std::string> labels;
    if (!labels_.empty())
        for (std::size_t c : cols) labels.push_back(labels_[c]);
    return SemigroupPresentation(std::move(sub), moduli_, std::move(labels));
}

IntVec SemigroupPresentation::reduce_degree(IntVec degree) const {
    std::size_t m = free_rows();
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        Int& v = degree[m + j];
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), moduli_[j].get_mpz_t());
    }
    return degree;
}

bool SemigroupPresentation::operator==(const SemigroupPresentation& rhs) const {
    return a_ == rhs.a_ && moduli_ == rhs.moduli_ && labels_ == rhs.labels_;
}

} // namespace semidec

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace semidec {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

/// Dense matrix of arbitrary-precision integers, row-major.
/// All arithmetic is exact; there is no overflow at any magnitude.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    void set_row(std::size_t i, const IntVec& v);

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVec apply(const IntVec& x) const;  // M * x

    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    bool row_is_zero(std::size_t i) const;
    bool col_is_zero(std::size_t j) const;

    /// Selects rows [r0, r1) and the given columns, in the given order.
    IntMatrix submatrix(std::size_t r0, std::size_t r1,
                        const std::vector<std::size_t>& cols) const;
    IntMatrix take_rows(const std::vector<std::size_t>& rows) const;

    void swap_rows(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    /// row i += c * row j
    void add_row_multiple(std::size_t i, std::size_t j, const Int& c);

    /// Determinant of a square matrix, by fraction-free Bareiss elimination.
    Int determinant() const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Bijection on {0..n-1}; image(i) gives the image of index i.
/// The associated column permutation matrix Q has Q(image(j), j) = 1,
/// so for a matrix M, (M*Q) column j equals M column image(j).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t n);  // identity
    explicit Permutation(std::vector<std::size_t> image);

    std::size_t size() const { return image_.size(); }
    std::size_t image(std::size_t i) const { return image_[i]; }

    Permutation inverse() const;
    IntMatrix column_matrix() const;  // n x n 0/1 matrix Q as above

    /// M * Q: column j of the result is column image(j) of M.
    IntMatrix apply_to_columns(const IntMatrix& m) const;

    bool operator==(const Permutation& rhs) const = default;

private:
    std::vector<std::size_t> image_;
};

// small vector helpers used across modules
bool is_zero_vec(const IntVec& v);
IntVec add_vec(const IntVec& a, const IntVec& b);
IntVec sub_vec(const IntVec& a, const IntVec& b);
IntVec neg_vec(const IntVec& a);
IntVec scale_vec(const IntVec& a, const Int& c);
Int dot_vec(const IntVec& a, const IntVec& b);
Int one_norm(const IntVec& a);
/// lexicographic comparison; -1, 0, 1
int lex_compare(const IntVec& a, const IntVec& b);
std::string vec_to_string(const IntVec& v);

} // namespace semidec

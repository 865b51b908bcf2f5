#include "semidec/int_matrix.hpp"

#include "semidec/errors.hpp"

#include <ostream>
#include <sstream>

namespace semidec {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw math_error("ragged initializer for IntMatrix");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw math_error("row length mismatch in IntMatrix::from_rows");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw math_error("dimension mismatch in matrix product");
    IntMatrix p(rows_, rhs.cols_);
    Int tmp;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                tmp = a * rhs.at(k, j);
                p.at(i, j) += tmp;
            }
        }
    return p;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (x.size() != cols_)
        throw math_error("dimension mismatch in matrix-vector product");
    IntVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

bool IntMatrix::is_zero() const {
    for (const Int& v : data_)
        if (v != 0) return false;
    return true;
}

bool IntMatrix::row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0) return false;
    return true;
}

bool IntMatrix::col_is_zero(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
        if (at(i, j) != 0) return false;
    return true;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t r1,
                               const std::vector<std::size_t>& cols) const {
    IntMatrix s(r1 - r0, cols.size());
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            s.at(i - r0, j) = at(i, cols[j]);
    return s;
}

IntMatrix IntMatrix::take_rows(const std::vector<std::size_t>& rows) const {
    IntMatrix s(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(rows[i], j);
    return s;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap(at(i, k), at(j, k));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw math_error("determinant of non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev;  // Bareiss: division is exact
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m.at(i, j);
        }
        os << '\n';
    }
    return os;
}

Permutation::Permutation(std::size_t n) : image_(n) {
    for (std::size_t i = 0; i < n; ++i) image_[i] = i;
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t v : image_) {
        if (v >= image_.size() || seen[v])
            throw math_error("invalid permutation image");
        seen[v] = true;
    }
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
}

IntMatrix Permutation::column_matrix() const {
    IntMatrix q(size(), size());
    for (std::size_t j = 0; j < size(); ++j) q.at(image_[j], j) = 1;
    return q;
}

IntMatrix Permutation::apply_to_columns(const IntMatrix& m) const {
    if (m.cols() != size())
        throw math_error("dimension mismatch in column permutation");
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t j = 0; j < size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            r.at(i, j) = m.at(i, image_[j]);
    return r;
}

bool is_zero_vec(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

IntVec add_vec(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub_vec(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec neg_vec(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

IntVec scale_vec(const IntVec& a, const Int& c) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Int dot_vec(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int one_norm(const IntVec& a) {
    Int s = 0;
    for (const Int& x : a) s += abs(x);
    return s;
}

int lex_compare(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

std::string vec_to_string(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ')';
    return os.str();
}

} // namespace semidec

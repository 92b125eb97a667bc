#include "polyweyl/intmat.hpp"

#include <algorithm>

namespace polyweyl {

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::string t = s;
    size_t slash = t.find('/');
    try {
        Rat r;
        if (slash == std::string::npos) {
            r = Rat(Int(t));
        } else {
            std::string num = t.substr(0, slash), den = t.substr(slash + 1);
            if (num.empty() || den.empty()) return std::nullopt;
            Int d(den);
            if (d == 0) return std::nullopt;
            r = Rat(Int(num)) / Rat(d);
        }
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw Error("BadShape", "ragged initializer");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, size_t cols) {
    IntMat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("BadShape", "row length mismatch");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMat::row(size_t i) const {
    IntVec v(cols_);
    for (size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

IntVec IntMat::col(size_t j) const {
    IntVec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<IntVec> IntMat::row_vectors() const {
    std::vector<IntVec> out;
    out.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& other) const {
    if (cols_ != other.rows_) throw Error("BadShape", "matrix product shape mismatch");
    IntMat p(rows_, other.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
        }
    return p;
}

IntVec IntMat::operator*(const IntVec& v) const {
    if (cols_ != v.size()) throw Error("BadShape", "matrix-vector shape mismatch");
    IntVec w(rows_, Int(0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
}

IntMat IntMat::operator-(const IntMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error("BadShape", "matrix difference shape mismatch");
    IntMat d(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i] - other.data_[i];
    return d;
}

bool IntMat::operator<(const IntMat& other) const {
    if (rows_ != other.rows_) return rows_ < other.rows_;
    if (cols_ != other.cols_) return cols_ < other.cols_;
    for (size_t i = 0; i < data_.size(); ++i) {
        int c = cmp(data_[i], other.data_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

void IntMat::swap_rows(size_t i, size_t j) {
    for (size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMat::swap_cols(size_t i, size_t j) {
    for (size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

bool IntMat::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntMat::det() const {
    if (!is_square()) throw Error("BadShape", "determinant of non-square matrix");
    size_t n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMat a = *this;
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

QMat QMat::identity(size_t n) {
    QMat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_int(const IntMat& m) {
    QMat q(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

QMat QMat::from_rows(const std::vector<RatVec>& rows, size_t cols) {
    QMat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("BadShape", "row length mismatch");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatVec QMat::row(size_t i) const {
    RatVec v(cols_);
    for (size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

QMat QMat::operator*(const QMat& other) const {
    if (cols_ != other.rows_) throw Error("BadShape", "matrix product shape mismatch");
    QMat p(rows_, other.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
        }
    return p;
}

RatVec QMat::operator*(const RatVec& v) const {
    if (cols_ != v.size()) throw Error("BadShape", "matrix-vector shape mismatch");
    RatVec w(rows_, Rat(0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
}

namespace {

// Row echelon in place; returns rank.
size_t echelonize(QMat& a) {
    size_t rank = 0;
    for (size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != rank)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(rank, j));
        Rat p = a(rank, col);
        for (size_t j = 0; j < a.cols(); ++j) a(rank, j) /= p;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

size_t QMat::rank() const {
    QMat a = *this;
    return echelonize(a);
}

QMat QMat::inverse() const {
    if (rows_ != cols_) throw Error("Singular", "inverse of non-square matrix");
    size_t n = rows_;
    QMat a(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a(i, j) = (*this)(i, j);
        a(i, n + i) = 1;
    }
    if (echelonize(a) != n) throw Error("Singular", "matrix is singular");
    // echelonize produces reduced row echelon; with full rank the left block is I
    QMat inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
    return inv;
}

size_t rank_of(const std::vector<RatVec>& vectors, size_t dim) {
    return QMat::from_rows(vectors, dim).rank();
}

size_t rank_of(const std::vector<IntVec>& vectors, size_t dim) {
    std::vector<RatVec> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) rows.push_back(to_rat(v));
    return rank_of(rows, dim);
}

std::optional<RatVec> solve_rational(const QMat& M, const RatVec& b) {
    size_t m = M.rows(), n = M.cols();
    if (b.size() != m) throw Error("BadShape", "rhs size mismatch");
    QMat a(m, n + 1);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) a(i, j) = M(i, j);
        a(i, n) = b[i];
    }
    echelonize(a);
    RatVec x(n, Rat(0));
    // back-read pivots; reduced echelon form makes this a direct read-off
    for (size_t i = 0; i < m; ++i) {
        size_t lead = 0;
        while (lead < n + 1 && a(i, lead) == 0) ++lead;
        if (lead == n + 1) continue;
        if (lead == n) return std::nullopt;  // 0 = nonzero
        x[lead] = a(i, n);
    }
    return x;
}

}  // namespace polyweyl

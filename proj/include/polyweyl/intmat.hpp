#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "polyweyl/error.hpp"
#include "polyweyl/numeric.hpp"

namespace polyweyl {

// Dense matrix over GMP integers, row major. Small and exact; no arithmetic
// shortcuts, sizes here are desk scale.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
    IntMat(std::initializer_list<std::initializer_list<long>> init);

    static IntMat identity(size_t n);
    static IntMat from_rows(const std::vector<IntVec>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Int& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(size_t i) const;
    IntVec col(size_t j) const;
    std::vector<IntVec> row_vectors() const;

    IntMat transpose() const;
    IntMat operator*(const IntMat& other) const;
    IntVec operator*(const IntVec& v) const;
    IntMat operator-(const IntMat& other) const;
    bool operator==(const IntMat& other) const = default;
    bool operator<(const IntMat& other) const;

    void swap_rows(size_t i, size_t j);
    void swap_cols(size_t i, size_t j);

    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    // Exact determinant by fraction-free elimination; square only.
    Int det() const;

private:
    size_t rows_, cols_;
    std::vector<Int> data_;
};

// Dense matrix over rationals, used for basis changes and rank computations.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static QMat identity(size_t n);
    static QMat from_int(const IntMat& m);
    static QMat from_rows(const std::vector<RatVec>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    RatVec row(size_t i) const;
    QMat operator*(const QMat& other) const;
    RatVec operator*(const RatVec& v) const;

    size_t rank() const;
    // Inverse of a square nonsingular matrix; throws Error("Singular", ...) otherwise.
    QMat inverse() const;

private:
    size_t rows_, cols_;
    std::vector<Rat> data_;
};

// Rank of the span of a set of rational vectors.
size_t rank_of(const std::vector<RatVec>& vectors, size_t dim);
size_t rank_of(const std::vector<IntVec>& vectors, size_t dim);

// One solution x of M x = b over the rationals, if any.
std::optional<RatVec> solve_rational(const QMat& M, const RatVec& b);

}  // namespace polyweyl

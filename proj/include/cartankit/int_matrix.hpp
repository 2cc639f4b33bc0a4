#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <gmpxx.h>

#include "cartankit/errors.hpp"

namespace cartankit {

using Int = mpz_class;
using Rat = mpq_class;

// Dense integer matrix, row major.  Shapes with zero rows or columns are legal;
// operations that need a square or nonempty operand say so and throw shape_error.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::vector<std::vector<Int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    IntMatrix transposed() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;

    std::vector<Int> row(std::size_t i) const;
    std::vector<Int> col(std::size_t j) const;
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    // Submatrix keeping the given row and column indices, in the given order.
    IntMatrix select(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Int& s, const IntMatrix& a);

// Kronecker product; (i1*rows(b)+i2, j1*cols(b)+j2) entry is a(i1,j1)*b(i2,j2).
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

// Block diagonal stack of the given square or rectangular blocks.
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

std::vector<Int> row_times_matrix(const std::vector<Int>& v, const IntMatrix& a);
Int dot(const std::vector<Int>& a, const std::vector<Int>& b);

}  // namespace cartankit

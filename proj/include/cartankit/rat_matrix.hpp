#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "cartankit/int_matrix.hpp"

namespace cartankit {

// Dense rational matrix, row major, entries always canonicalized by mpq.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_int(const IntMatrix& a);
    static RatMatrix from_rows(std::vector<std::vector<Rat>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const RatMatrix& other) const = default;

    RatMatrix transposed() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_integral() const;
    IntMatrix to_int() const;  // throws validation_error when entries have denominators

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rat& s, const RatMatrix& a);

Rat det(const RatMatrix& a);
RatMatrix inverse(const RatMatrix& a);  // throws validation_error when singular

}  // namespace cartankit

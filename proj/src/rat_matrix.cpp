#include "cartankit/rat_matrix.hpp"

#include <utility>

namespace cartankit {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw shape_error("ragged initializer for RatMatrix");
        for (const Rat& x : r) {
            data_.push_back(x);
            data_.back().canonicalize();
        }
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& a) {
    RatMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

RatMatrix RatMatrix::from_rows(std::vector<std::vector<Rat>> rows) {
    RatMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (auto& r : rows) {
        if (r.size() != m.cols_) throw shape_error("ragged row list for RatMatrix");
        for (auto& x : r) {
            x.canonicalize();
            m.data_.push_back(std::move(x));
        }
    }
    return m;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RatMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RatMatrix::is_integral() const {
    for (const Rat& x : data_)
        if (x.get_den() != 1) return false;
    return true;
}

IntMatrix RatMatrix::to_int() const {
    if (!is_integral()) throw validation_error("matrix has non-integer entries");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).get_num();
    return out;
}

namespace {
void require_same_shape(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw shape_error("matrix shapes differ");
}
}  // namespace

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    require_same_shape(a, b);
    RatMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    require_same_shape(a, b);
    RatMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw shape_error("inner dimensions differ in product");
    RatMatrix out(a.rows(), b.cols());
    Rat acc;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
    RatMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

Rat det(const RatMatrix& a) {
    if (!a.is_square()) throw shape_error("determinant needs a square matrix");
    const std::size_t n = a.rows();
    RatMatrix w = a;
    Rat result = 1;
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t piv = t;
        while (piv < n && w(piv, t) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != t) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(t, j), w(piv, j));
            result = -result;
        }
        result *= w(t, t);
        for (std::size_t i = t + 1; i < n; ++i) {
            if (w(i, t) == 0) continue;
            Rat f = w(i, t) / w(t, t);
            for (std::size_t j = t; j < n; ++j) w(i, j) -= f * w(t, j);
        }
    }
    return result;
}

RatMatrix inverse(const RatMatrix& a) {
    if (!a.is_square()) throw shape_error("inverse needs a square matrix");
    const std::size_t n = a.rows();
    RatMatrix w = a;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t piv = t;
        while (piv < n && w(piv, t) == 0) ++piv;
        if (piv == n) throw validation_error("matrix is singular");
        if (piv != t)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(t, j), w(piv, j));
                std::swap(inv(t, j), inv(piv, j));
            }
        Rat d = w(t, t);
        for (std::size_t j = 0; j < n; ++j) {
            w(t, j) /= d;
            inv(t, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == t || w(i, t) == 0) continue;
            Rat f = w(i, t);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(t, j);
                inv(i, j) -= f * inv(t, j);
            }
        }
    }
    return inv;
}

}  // namespace cartankit

#include "cartankit/exactlin.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace cartankit {

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal)
        if (d != 0) ++r;
    return r;
}

namespace {

// Position of a minimal-absolute-value nonzero entry of w in the trailing
// submatrix starting at (t, t); ties prefer the smallest row then column.
std::optional<std::pair<std::size_t, std::size_t>> min_abs_pivot(const IntMatrix& w,
                                                                 std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < w.rows(); ++i)
        for (std::size_t j = t; j < w.cols(); ++j) {
            if (w(i, j) == 0) continue;
            Int a = abs(w(i, j));
            if (!best || a < best_abs) {
                best = {i, j};
                best_abs = a;
            }
        }
    return best;
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

Int floor_quotient(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm snf(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = std::min(m, n);
    SmithForm out;
    out.left = IntMatrix::identity(m);
    out.right = IntMatrix::identity(n);
    IntMatrix w = a;

    for (std::size_t t = 0; t < k; ++t) {
        if (!min_abs_pivot(w, t)) break;
        for (;;) {
            auto piv = *min_abs_pivot(w, t);
            w.swap_rows(t, piv.first);
            out.left.swap_rows(t, piv.first);
            w.swap_cols(t, piv.second);
            out.right.swap_cols(t, piv.second);

            for (std::size_t i = t + 1; i < m; ++i) {
                if (w(i, t) == 0) continue;
                Int q = floor_quotient(w(i, t), w(t, t));
                add_row_multiple(w, i, t, q);
                add_row_multiple(out.left, i, t, q);
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w(t, j) == 0) continue;
                Int q = floor_quotient(w(t, j), w(t, t));
                add_col_multiple(w, j, t, q);
                add_col_multiple(out.right, j, t, q);
            }

            bool cleared = true;
            for (std::size_t i = t + 1; i < m && cleared; ++i)
                if (w(i, t) != 0) cleared = false;
            for (std::size_t j = t + 1; j < n && cleared; ++j)
                if (w(t, j) != 0) cleared = false;
            if (!cleared) continue;  // a smaller entry appeared; re-pivot on it

            // Divisibility of the trailing block by the pivot; pulling an
            // offending row up creates a smaller remainder, so this ends.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < m && !bad_row; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (w(i, j) % w(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row) break;
            add_row_multiple(w, t, *bad_row, Int(-1));
            add_row_multiple(out.left, t, *bad_row, Int(-1));
        }
        if (w(t, t) < 0) {
            negate_row(w, t);
            negate_row(out.left, t);
        }
    }

    out.diagonal.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.diagonal[i] = w(i, i);
    return out;
}

IntMatrix hnf(const IntMatrix& a) {
    IntMatrix w = a;
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        for (;;) {
            std::optional<std::size_t> best;
            Int best_abs;
            for (std::size_t i = r; i < m; ++i) {
                if (w(i, j) == 0) continue;
                Int v = abs(w(i, j));
                if (!best || v < best_abs) {
                    best = i;
                    best_abs = v;
                }
            }
            if (!best) goto next_column;
            w.swap_rows(r, *best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (w(i, j) == 0) continue;
                Int q = floor_quotient(w(i, j), w(r, j));
                add_row_multiple(w, i, r, q);
                if (w(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (w(r, j) < 0) negate_row(w, r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_quotient(w(i, j), w(r, j));
            if (q != 0) add_row_multiple(w, i, r, q);
        }
        ++r;
    next_column:;
    }
    return w;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithForm s = snf(a);
    const std::size_t rank = s.rank();
    const std::size_t m = a.rows();
    std::vector<std::vector<Int>> rows;
    rows.reserve(m - rank);
    for (std::size_t i = rank; i < m; ++i) rows.push_back(s.left.row(i));
    IntMatrix reduced = hnf(IntMatrix::from_rows(std::move(rows)));
    // Unimodular left factor rows are independent, so no zero rows survive;
    // drop them anyway to keep the contract obvious.
    std::vector<std::vector<Int>> keep;
    for (std::size_t i = 0; i < reduced.rows(); ++i) {
        auto row = reduced.row(i);
        if (std::any_of(row.begin(), row.end(), [](const Int& x) { return x != 0; }))
            keep.push_back(std::move(row));
    }
    if (keep.empty()) return IntMatrix(0, m);
    return IntMatrix::from_rows(std::move(keep));
}

Int det(const IntMatrix& a) {
    if (!a.is_square()) throw shape_error("determinant needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix w = a;
    int sign = 1;
    Int prev = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (w(t, t) == 0) {
            std::size_t i = t + 1;
            while (i < n && w(i, t) == 0) ++i;
            if (i == n) return 0;
            w.swap_rows(t, i);
            sign = -sign;
        }
        for (std::size_t i = t + 1; i < n; ++i)
            for (std::size_t j = t + 1; j < n; ++j) {
                Int num = w(t, t) * w(i, j) - w(i, t) * w(t, j);
                mpz_divexact(w(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = w(t, t);
    }
    return sign < 0 ? Int(-w(n - 1, n - 1)) : w(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& a) {
    if (!a.is_square()) throw shape_error("adjugate needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return a;
    IntMatrix out(n, n);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t t : all)
                if (t != j) rows.push_back(t);
            for (std::size_t t : all)
                if (t != i) cols.push_back(t);
            Int minor = det(a.select(rows, cols));
            out(i, j) = ((i + j) % 2 == 0) ? minor : Int(-minor);
        }
    return out;
}

}  // namespace cartankit

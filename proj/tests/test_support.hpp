#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cartankit/exactlin.hpp"
#include "cartankit/int_matrix.hpp"

namespace cartankit::testing {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
            return true;
        }
    }
    return false;
}

// Invariant factors through gcds of k-by-k minors.  Slow and independent of
// the elimination path in snf(), which is the point.
inline std::vector<Int> invariant_factors_by_minors(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t kmax = std::min(m, n);
    std::vector<Int> divisors(kmax + 1);
    divisors[0] = 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
        Int g = 0;
        std::vector<std::size_t> ri(k);
        for (std::size_t i = 0; i < k; ++i) ri[i] = i;
        do {
            std::vector<std::size_t> ci(k);
            for (std::size_t i = 0; i < k; ++i) ci[i] = i;
            do {
                Int minor = det(a.select(ri, ci));
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
            } while (next_combination(ci, n));
        } while (next_combination(ri, m));
        divisors[k] = g;
    }
    std::vector<Int> factors(kmax);
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (divisors[k] == 0)
            factors[k - 1] = 0;
        else
            factors[k - 1] = divisors[k] / divisors[k - 1];
    }
    return factors;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, long lo,
                               long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
    return a;
}

// Product of random elementary row operations applied to the identity.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int ops) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int t = 0; t < ops; ++t) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        switch (kind(rng)) {
            case 0:
                u.swap_rows(i, j);
                break;
            case 1: {
                Int c(coef(rng));
                for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
                break;
            }
            default:
                for (std::size_t k = 0; k < n; ++k) u(i, k) = -u(i, k);
        }
    }
    return u;
}

inline IntMatrix drop_zero_rows(const IntMatrix& a) {
    std::vector<std::vector<Int>> keep;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; }))
            keep.push_back(std::move(r));
    }
    if (keep.empty()) return IntMatrix(0, a.cols());
    return IntMatrix::from_rows(std::move(keep));
}

// Membership of v in the row lattice of basis: adjoining v must not change
// the Hermite form.
inline bool lattice_contains(const IntMatrix& basis, const std::vector<Int>& v) {
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < basis.rows(); ++i) rows.push_back(basis.row(i));
    rows.push_back(v);
    IntMatrix stacked = IntMatrix::from_rows(std::move(rows));
    return drop_zero_rows(hnf(stacked)) == drop_zero_rows(hnf(basis));
}

}  // namespace cartankit::testing

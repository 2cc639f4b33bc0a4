#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartankit/rat_matrix.hpp"

namespace cartankit {

// Symmetric positive definite rational Gram matrix.  Construction proves
// definiteness by exact triangular decomposition, so every instance is usable
// for enumeration without further checks.
class GramForm {
public:
    explicit GramForm(RatMatrix g);
    static GramForm from_int(const IntMatrix& g);

    const RatMatrix& matrix() const { return g_; }
    std::size_t dim() const { return g_.rows(); }
    bool is_integral() const { return g_.is_integral(); }

    Rat evaluate(const std::vector<Int>& x) const;  // x g x^T

    // q(x) = sum_i pivot(i) * (x_i + sum_{j>i} coeff(i,j) x_j)^2
    const Rat& pivot(std::size_t i) const { return pivots_[i]; }
    const Rat& coeff(std::size_t i, std::size_t j) const { return coeffs_(i, j); }

private:
    RatMatrix g_;
    std::vector<Rat> pivots_;
    RatMatrix coeffs_;
};

struct ShellVector {
    std::vector<Int> coords;
    Rat value;
};

// Nonzero x with x g x^T <= bound, one representative per {x, -x} pair with
// the first nonzero coordinate positive, sorted by value then coordinates.
// Dimension cap 12; node cap guards runaway inputs.
std::vector<ShellVector> enumerate_bounded(const GramForm& g, const Rat& bound);

struct FormMinimum {
    Rat value;
    std::vector<std::vector<Int>> vectors;  // all attaining representatives
};

FormMinimum minimum(const GramForm& g);

// Representation counts (x and -x both counted) for each attained value up to
// the bound, ascending.  Requires an integral form.
std::vector<std::pair<Int, long>> theta_prefix(const GramForm& g, const Int& bound);

struct CongruenceResult {
    bool congruent;
    std::optional<IntMatrix> witness;  // s with s g1 s^T == g2
    std::string evidence;              // separating invariant, or "exhaustive search"
};

// Integral congruence of two symmetric positive definite integer matrices.
// Dimension cap 9.
CongruenceResult congruence(const IntMatrix& g1, const IntMatrix& g2);

// Entrywise product sum of a weight matrix against a symmetric matrix.
// The weight must be symmetric positive definite with integral diagonal and
// integral doubled entries; those conditions make the sum an integer when the
// other matrix is integral.
Rat weighted_bound(const RatMatrix& weight, const RatMatrix& target);

}  // namespace cartankit

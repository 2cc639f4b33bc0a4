#pragma once

#include <vector>

#include "cartankit/int_matrix.hpp"

namespace cartankit {

// left * a * right is diagonal with the invariant chain
// diagonal[0] | diagonal[1] | ... ; entries are nonnegative and trailing
// entries past the rank are zero.  left and right are unimodular.
struct SmithForm {
    std::vector<Int> diagonal;  // length min(rows, cols)
    IntMatrix left;
    IntMatrix right;
    std::size_t rank() const;
};

SmithForm snf(const IntMatrix& a);

// Row-style Hermite normal form: pivots positive and strictly right of the
// pivot in the previous row, entries above each pivot reduced into [0, pivot).
// Unique for a given row space, so usable as a canonical label.
IntMatrix hnf(const IntMatrix& a);

// Basis of {v : v a = 0} as rows of the result, in Hermite normal form.
// The basis is saturated: any integer vector in the rational kernel is an
// integer combination of the rows.
IntMatrix kernel_basis(const IntMatrix& a);

// Fraction-free determinant (Bareiss).  Throws shape_error unless square.
Int det(const IntMatrix& a);

// adjugate(a) * a == det(a) * identity; computed from signed cofactors.
IntMatrix adjugate(const IntMatrix& a);

}  // namespace cartankit

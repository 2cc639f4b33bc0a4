#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cartankit/int_matrix.hpp"

namespace cartankit {

// Integral factorization target = matrix^T * matrix; rows are nonzero.
struct Embedding {
    IntMatrix matrix;
    IntMatrix target;
};

struct EmbedOptions {
    // Without row_count: all solutions of any height.  With row_count k and
    // exact_rows: exactly k nonzero rows.  With row_count k alone: at most k
    // nonzero rows (conceptually padded with zero rows to height k).
    std::optional<std::size_t> row_count;
    bool exact_rows = false;
    std::uint64_t node_budget = 10'000'000;
    // Each row must be nonzero on every span [first, last); empty means one
    // span covering the whole row.  Used for block-stacked targets.
    std::vector<std::pair<std::size_t, std::size_t>> nonzero_spans;
    // When set, receives the count of visited search nodes, also on budget
    // exhaustion.
    std::uint64_t* nodes_used = nullptr;
};

// All Q with Q^T Q = c up to row permutation and per-row sign flips, each
// class reported once by its canonical representative (rows sign-normalized
// to leading positive entry, sorted by descending self-norm then ascending
// lexicographic order).  c must be integral symmetric positive definite of
// dimension at most 9.
std::vector<Embedding> orthogonal_embeddings(const IntMatrix& c, const EmbedOptions& opts = {});

IntMatrix canonical_embedding_form(const IntMatrix& q);

struct RowColPartition {
    bool decomposable;
    std::vector<std::vector<std::size_t>> row_classes;
    std::vector<std::vector<std::size_t>> col_classes;
};

// Simultaneous row and column permutations split q into block-diagonal form
// iff the bipartite row-column graph on nonzero entries is disconnected.
RowColPartition is_decomposable(const IntMatrix& q);

}  // namespace cartankit

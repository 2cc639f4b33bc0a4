#include "cartankit/embed.hpp"

#include <algorithm>
#include <cstdint>

#include "cartankit/qform.hpp"

namespace cartankit {

namespace {

constexpr std::size_t kEmbedDimCap = 9;
constexpr long kEntryCap = 1'000'000;  // keeps every int64 intermediate far from overflow

using Row = std::vector<long long>;

long long to_ll(const Int& x) {
    if (!x.fits_slong_p()) throw resource_limit_error("embedding target entry too large");
    return x.get_si();
}

long long self_norm(const Row& v) {
    long long s = 0;
    for (long long x : v) s += x * x;
    return s;
}

bool nonzero_on_spans(const Row& v,
                      const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
    for (const auto& [a, b] : spans) {
        bool nz = false;
        for (std::size_t j = a; j < b && !nz; ++j) nz = v[j] != 0;
        if (!nz) return false;
    }
    return true;
}

Row sign_normalized(Row v) {
    for (long long x : v) {
        if (x > 0) break;
        if (x < 0) {
            for (long long& y : v) y = -y;
            break;
        }
    }
    return v;
}

// True when the spans, after sorting, tile [0, n) without gaps or overlaps.
bool spans_tile(std::vector<std::pair<std::size_t, std::size_t>> spans, std::size_t n) {
    std::sort(spans.begin(), spans.end());
    std::size_t at = 0;
    for (const auto& [a, b] : spans) {
        if (a != at || b <= a) return false;
        at = b;
    }
    return at == n;
}

bool zero_across_spans(const IntMatrix& c,
                       const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
    for (const auto& [a, b] : spans)
        for (std::size_t i = a; i < b; ++i)
            for (std::size_t j = 0; j < c.cols(); ++j)
                if ((j < a || j >= b) && c(i, j) != 0) return false;
    return true;
}

struct Search {
    std::size_t n;
    std::vector<Row> cands;          // sorted by descending self-norm, then lex
    std::vector<long long> norms;    // matching self-norms
    std::vector<std::vector<long long>> span_norms;  // per candidate, per span
    std::vector<std::vector<long long>> residual;  // symmetric
    long long residual_trace = 0;
    std::vector<long long> span_diag;  // residual diagonal summed per span
    std::optional<std::size_t> row_count;
    bool exact_rows = false;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> chosen;
    std::vector<std::vector<std::size_t>> solutions;
    // When the target is block diagonal across the spans, every span
    // projection of a solution solves that block alone, so the block
    // solutions bound which parts may appear and how often.
    bool block_split = false;
    std::vector<std::vector<std::uint32_t>> cand_class;  // per candidate, per span
    std::vector<std::vector<long long>> class_cap;       // per span, per class
    std::vector<std::vector<long long>> class_cnt;
    std::vector<std::vector<std::vector<Row>>> span_multisets;  // allowed per span

    // Every future row is nonzero on every span, so each span's residual
    // diagonal sum must cover one unit per remaining row.
    bool spans_feasible(long long remaining_rows) const {
        for (long long d : span_diag)
            if (d < remaining_rows) return false;
        return true;
    }

    bool admissible_after(const Row& v) const {
        // Necessary conditions for the residual minus v^T v to stay a sum of
        // integer outer products: nonnegative diagonal, zero rows across zero
        // diagonal entries, and 2x2 and 3x3 principal minors of a PSD matrix.
        // The entry cap keeps every minor below the int64 range.
        long long d[kEmbedDimCap][kEmbedDimCap];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) d[i][j] = d[j][i] = residual[i][j] - v[i] * v[j];
        for (std::size_t i = 0; i < n; ++i)
            if (d[i][i] < 0) return false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if ((d[i][i] == 0 || d[j][j] == 0) && d[i][j] != 0) return false;
                if (d[i][j] * d[i][j] > d[i][i] * d[j][j]) return false;
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    long long det3 = d[i][i] * (d[j][j] * d[k][k] - d[j][k] * d[j][k]) -
                                     d[i][j] * (d[i][j] * d[k][k] - d[j][k] * d[i][k]) +
                                     d[i][k] * (d[i][j] * d[j][k] - d[j][j] * d[i][k]);
                    if (det3 < 0) return false;
                }
        return true;
    }

    void apply(std::size_t c, int sign) {
        const Row& v = cands[c];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) residual[i][j] -= sign * v[i] * v[j];
        residual_trace -= sign * norms[c];
        for (std::size_t s = 0; s < spans.size(); ++s) span_diag[s] -= sign * span_norms[c][s];
        if (block_split)
            for (std::size_t s = 0; s < spans.size(); ++s)
                class_cnt[s][cand_class[c][s]] += sign;
    }

    // The chosen rows projected to each span must reproduce one of that
    // block's own solutions as a multiset of sign classes.
    bool projections_match() const {
        for (std::size_t s = 0; s < spans.size(); ++s) {
            std::vector<Row> parts;
            parts.reserve(chosen.size());
            for (std::size_t c : chosen) {
                const Row& v = cands[c];
                parts.push_back(sign_normalized(
                    Row(v.begin() + spans[s].first, v.begin() + spans[s].second)));
            }
            std::sort(parts.begin(), parts.end());
            bool found = false;
            for (const auto& ms : span_multisets[s])
                if (ms == parts) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }

    void dfs(std::size_t min_index) {
        if (++nodes > budget) throw resource_limit_error("embedding node budget exceeded");
        if (residual_trace == 0) {
            bool zero = true;
            for (std::size_t i = 0; i < n && zero; ++i)
                for (std::size_t j = 0; j < n && zero; ++j) zero = residual[i][j] == 0;
            if (zero) {
                bool take = true;
                if (row_count) {
                    if (exact_rows)
                        take = chosen.size() == *row_count;
                    else
                        take = chosen.size() <= *row_count;
                }
                if (take && block_split) take = projections_match();
                if (take) solutions.push_back(chosen);
            }
            return;
        }
        if (row_count && chosen.size() >= *row_count) return;
        long long slots_floor = 0;
        if (row_count && exact_rows) slots_floor = (long long)(*row_count - chosen.size());
        if (!spans_feasible(std::max(slots_floor, 1LL))) return;
        for (std::size_t c = min_index; c < cands.size(); ++c) {
            if (norms[c] > residual_trace) continue;
            // Rows from index c onward all have self-norm <= norms[c]; the
            // remaining trace must still be coverable.
            if (row_count) {
                std::size_t slots = *row_count - chosen.size();
                if ((long long)slots * norms[c] < residual_trace) break;
            }
            // At least ceil(trace / norms[c]) more rows are needed from here
            // on; norms shrink with c, so an infeasible span stays infeasible.
            long long needed = (residual_trace + norms[c] - 1) / norms[c];
            if (!spans_feasible(std::max(needed, slots_floor))) break;
            // After this row every other remaining row still draws at least
            // one unit from every span, which caps how much one row may take.
            long long after = std::max(needed, std::max(slots_floor, 1LL)) - 1;
            bool span_ok = true;
            for (std::size_t s = 0; s < spans.size() && span_ok; ++s)
                span_ok = span_diag[s] - span_norms[c][s] >= after;
            if (!span_ok) continue;
            if (block_split) {
                bool capped = false;
                for (std::size_t s = 0; s < spans.size() && !capped; ++s)
                    capped = class_cnt[s][cand_class[c][s]] >= class_cap[s][cand_class[c][s]];
                if (capped) continue;
            }
            if (!admissible_after(cands[c])) continue;
            apply(c, +1);
            chosen.push_back(c);
            dfs(c);
            chosen.pop_back();
            apply(c, -1);
        }
    }
};

}  // namespace

std::vector<Embedding> orthogonal_embeddings(const IntMatrix& c, const EmbedOptions& opts) {
    if (!c.is_symmetric()) throw validation_error("embedding target must be symmetric");
    const std::size_t n = c.rows();
    if (n == 0) throw validation_error("embedding target must be nonempty");
    if (n > kEmbedDimCap) throw resource_limit_error("embedding limited to dimension 9");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (abs(c(i, j)) > kEntryCap)
                throw resource_limit_error("embedding target entry too large");

    RatMatrix cr = RatMatrix::from_int(c);
    GramForm dual(inverse(cr));  // proves positive definiteness of c as well

    // Any solution row q has q c^{-1} q^T <= 1: the projection q c^{-1} q^T
    // sits on the diagonal of the idempotent Q c^{-1} Q^T.
    std::vector<Row> cands;
    for (const ShellVector& s : enumerate_bounded(dual, Rat(1))) {
        Row v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = to_ll(s.coords[i]);
        cands.push_back(std::move(v));
    }
    auto spans = opts.nonzero_spans;
    if (spans.empty()) spans.push_back({0, n});
    std::erase_if(cands, [&](const Row& v) { return !nonzero_on_spans(v, spans); });
    std::sort(cands.begin(), cands.end(), [](const Row& a, const Row& b) {
        long long na = self_norm(a), nb = self_norm(b);
        if (na != nb) return na > nb;
        return a < b;
    });

    // When the target is block diagonal across tiling spans, solve each block
    // alone first: every span projection of a full solution is a complete
    // solution of that block, so the block solutions dictate which parts a
    // row may carry per span and with which multiplicities.
    std::uint64_t block_nodes = 0;
    std::vector<std::vector<std::pair<Row, long long>>> span_classes;
    std::vector<std::vector<std::vector<Row>>> span_multisets;
    const bool block_split = opts.row_count && opts.exact_rows && spans.size() > 1 &&
                             spans_tile(spans, n) && zero_across_spans(c, spans);
    if (block_split) {
        std::sort(spans.begin(), spans.end());
        for (const auto& [a, b] : spans) {
            IntMatrix sub(b - a, b - a);
            for (std::size_t i = a; i < b; ++i)
                for (std::size_t j = a; j < b; ++j) sub(i - a, j - a) = c(i, j);
            EmbedOptions so;
            so.row_count = opts.row_count;
            so.exact_rows = true;
            so.node_budget =
                opts.node_budget > block_nodes ? opts.node_budget - block_nodes : 0;
            std::uint64_t used = 0;
            so.nodes_used = &used;
            std::vector<Embedding> block_sols;
            try {
                block_sols = orthogonal_embeddings(sub, so);
            } catch (const resource_limit_error&) {
                block_nodes += used;
                if (opts.nodes_used) *opts.nodes_used = block_nodes;
                throw;
            }
            block_nodes += used;
            if (block_sols.empty()) {
                if (opts.nodes_used) *opts.nodes_used = block_nodes;
                return {};
            }
            std::vector<std::pair<Row, long long>> classes;
            std::vector<std::vector<Row>> multisets;
            for (const Embedding& e : block_sols) {
                std::vector<Row> parts;
                parts.reserve(e.matrix.rows());
                for (std::size_t r = 0; r < e.matrix.rows(); ++r) {
                    Row part(b - a);
                    for (std::size_t j = 0; j < b - a; ++j) part[j] = to_ll(e.matrix(r, j));
                    parts.push_back(sign_normalized(std::move(part)));
                }
                std::sort(parts.begin(), parts.end());
                for (std::size_t r = 0; r < parts.size();) {
                    std::size_t r2 = r;
                    while (r2 < parts.size() && parts[r2] == parts[r]) ++r2;
                    long long mult = (long long)(r2 - r);
                    bool known = false;
                    for (auto& [part, cap] : classes)
                        if (part == parts[r]) {
                            cap = std::max(cap, mult);
                            known = true;
                        }
                    if (!known) classes.emplace_back(parts[r], mult);
                    r = r2;
                }
                multisets.push_back(std::move(parts));
            }
            span_classes.push_back(std::move(classes));
            span_multisets.push_back(std::move(multisets));
        }
        std::erase_if(cands, [&](const Row& v) {
            for (std::size_t s = 0; s < spans.size(); ++s) {
                Row part = sign_normalized(
                    Row(v.begin() + spans[s].first, v.begin() + spans[s].second));
                bool known = false;
                for (const auto& [p, cap] : span_classes[s]) known = known || p == part;
                if (!known) return true;
            }
            return false;
        });
    }

    Search search;
    search.n = n;
    search.norms.reserve(cands.size());
    for (const Row& v : cands) search.norms.push_back(self_norm(v));
    search.span_norms.reserve(cands.size());
    for (const Row& v : cands) {
        std::vector<long long> sn(spans.size(), 0);
        for (std::size_t s = 0; s < spans.size(); ++s)
            for (std::size_t j = spans[s].first; j < spans[s].second; ++j)
                sn[s] += v[j] * v[j];
        search.span_norms.push_back(std::move(sn));
    }
    search.cands = std::move(cands);
    search.residual.assign(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) search.residual[i][j] = to_ll(c(i, j));
    for (std::size_t i = 0; i < n; ++i) search.residual_trace += search.residual[i][i];
    search.span_diag.assign(spans.size(), 0);
    for (std::size_t s = 0; s < spans.size(); ++s)
        for (std::size_t j = spans[s].first; j < spans[s].second; ++j)
            search.span_diag[s] += search.residual[j][j];
    search.row_count = opts.row_count;
    search.exact_rows = opts.exact_rows;
    search.budget = opts.node_budget > block_nodes ? opts.node_budget - block_nodes : 0;
    search.spans = spans;
    if (block_split) {
        search.block_split = true;
        search.span_multisets = std::move(span_multisets);
        search.cand_class.reserve(search.cands.size());
        for (const Row& v : search.cands) {
            std::vector<std::uint32_t> ids(spans.size());
            for (std::size_t s = 0; s < spans.size(); ++s) {
                Row part = sign_normalized(
                    Row(v.begin() + spans[s].first, v.begin() + spans[s].second));
                for (std::size_t k = 0; k < span_classes[s].size(); ++k)
                    if (span_classes[s][k].first == part) ids[s] = (std::uint32_t)k;
            }
            search.cand_class.push_back(std::move(ids));
        }
        for (std::size_t s = 0; s < spans.size(); ++s) {
            std::vector<long long> caps;
            for (const auto& [part, cap] : span_classes[s]) caps.push_back(cap);
            search.class_cap.push_back(std::move(caps));
            search.class_cnt.emplace_back(span_classes[s].size(), 0);
        }
    }
    try {
        search.dfs(0);
    } catch (const resource_limit_error&) {
        if (opts.nodes_used) *opts.nodes_used = block_nodes + search.nodes;
        throw;
    }
    if (opts.nodes_used) *opts.nodes_used = block_nodes + search.nodes;

    std::vector<Embedding> out;
    out.reserve(search.solutions.size());
    for (const auto& pick : search.solutions) {
        IntMatrix q(pick.size(), n);
        for (std::size_t r = 0; r < pick.size(); ++r)
            for (std::size_t j = 0; j < n; ++j) q(r, j) = (long)search.cands[pick[r]][j];
        if (q.transposed() * q != c)
            throw inconsistency_error("embedding candidate failed the defining identity");
        out.push_back({std::move(q), c});
    }
    std::sort(out.begin(), out.end(), [](const Embedding& a, const Embedding& b) {
        if (a.matrix.rows() != b.matrix.rows()) return a.matrix.rows() < b.matrix.rows();
        for (std::size_t i = 0; i < a.matrix.rows(); ++i)
            for (std::size_t j = 0; j < a.matrix.cols(); ++j) {
                int cmp_ij = cmp(a.matrix(i, j), b.matrix(i, j));
                if (cmp_ij != 0) return cmp_ij < 0;
            }
        return false;
    });
    return out;
}

IntMatrix canonical_embedding_form(const IntMatrix& q) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) {
        auto r = q.row(i);
        for (const Int& x : r) {
            if (x > 0) break;
            if (x < 0) {
                for (Int& y : r) y = -y;
                break;
            }
        }
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int na = 0, nb = 0;
        for (const Int& x : a) na += x * x;
        for (const Int& x : b) nb += x * x;
        if (na != nb) return na > nb;
        return a < b;
    });
    return IntMatrix::from_rows(std::move(rows));
}

RowColPartition is_decomposable(const IntMatrix& q) {
    const std::size_t m = q.rows();
    const std::size_t n = q.cols();
    // Vertices 0..m-1 are rows, m..m+n-1 are columns.
    std::vector<std::size_t> parent(m + n);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (q(i, j) != 0) unite(i, m + j);

    std::vector<std::size_t> roots;
    RowColPartition out;
    auto class_of = [&](std::size_t root) {
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (roots[k] == root) return k;
        roots.push_back(root);
        out.row_classes.emplace_back();
        out.col_classes.emplace_back();
        return roots.size() - 1;
    };
    for (std::size_t i = 0; i < m; ++i) out.row_classes[class_of(find(i))].push_back(i);
    for (std::size_t j = 0; j < n; ++j) out.col_classes[class_of(find(m + j))].push_back(j);
    out.decomposable = roots.size() > 1;
    return out;
}

}  // namespace cartankit

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cartankit/embed.hpp"
#include "cartankit/exactlin.hpp"
#include "test_support.hpp"

using namespace cartankit;
using namespace cartankit::testing;

namespace {

const IntMatrix kDoubledGram{{4, 2, 2}, {2, 4, 2}, {2, 2, 4}};

const IntMatrix kDoubledPattern{{1, 1, 1}, {1, 1, 1}, {1, 0, 0}, {1, 0, 0},
                                {0, 1, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}};

const IntMatrix kHexForm{{3, 0, 1, 0, 0, 0}, {0, 2, 0, 1, 0, 0}, {1, 0, 2, 1, 0, 0},
                         {0, 1, 1, 2, 1, 0}, {0, 0, 0, 1, 2, 1}, {0, 0, 0, 0, 1, 2}};

// Independent completeness oracle: multisets of rows from the box
// |v_i| <= sqrt(c_ii), ordered like the engine's candidate order, with only
// the nonnegative-diagonal check for termination.
std::vector<IntMatrix> brute_embeddings(const IntMatrix& c) {
    const std::size_t n = c.rows();
    std::vector<std::vector<long>> box;
    std::vector<long> limit(n);
    for (std::size_t i = 0; i < n; ++i) {
        long l = 0;
        while (Int((l + 1)) * (l + 1) <= c(i, i)) ++l;
        limit[i] = l;
    }
    std::vector<long> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = -limit[i];
    for (;;) {
        bool zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
        bool canon = false;
        for (long x : v) {
            if (x > 0) {
                canon = true;
                break;
            }
            if (x < 0) break;
        }
        if (!zero && canon) box.emplace_back(v);
        std::size_t i = 0;
        while (i < n && v[i] == limit[i]) v[i++] = -limit[i];
        if (i == n) break;
        ++v[i];
    }
    auto norm = [](const std::vector<long>& a) {
        long s = 0;
        for (long x : a) s += x * x;
        return s;
    };
    std::sort(box.begin(), box.end(), [&](const auto& a, const auto& b) {
        if (norm(a) != norm(b)) return norm(a) > norm(b);
        return a < b;
    });

    std::vector<IntMatrix> found;
    std::vector<std::size_t> picks;
    std::vector<std::vector<long>> residual(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) residual[i][j] = (long)c(i, j).get_si();

    auto emit = [&]() {
        IntMatrix q(picks.size(), n);
        for (std::size_t r = 0; r < picks.size(); ++r)
            for (std::size_t j = 0; j < n; ++j) q(r, j) = box[picks[r]][j];
        found.push_back(q);
    };
    auto rec = [&](auto&& self, std::size_t min_index) -> void {
        bool all_zero = true;
        for (std::size_t i = 0; i < n && all_zero; ++i)
            for (std::size_t j = 0; j < n && all_zero; ++j) all_zero = residual[i][j] == 0;
        if (all_zero) {
            emit();
            return;
        }
        for (std::size_t cnd = min_index; cnd < box.size(); ++cnd) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                ok = residual[i][i] - box[cnd][i] * box[cnd][i] >= 0;
            if (!ok) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) residual[i][j] -= box[cnd][i] * box[cnd][j];
            picks.push_back(cnd);
            self(self, cnd);
            picks.pop_back();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) residual[i][j] += box[cnd][i] * box[cnd][j];
        }
    };
    rec(rec, 0);
    return found;
}

std::set<std::vector<Int>> flatten_all(const std::vector<Embedding>& embs) {
    std::set<std::vector<Int>> out;
    for (const auto& e : embs) {
        std::vector<Int> flat;
        IntMatrix canon = canonical_embedding_form(e.matrix);
        flat.push_back(Int(canon.rows()));
        for (std::size_t i = 0; i < canon.rows(); ++i)
            for (std::size_t j = 0; j < canon.cols(); ++j) flat.push_back(canon(i, j));
        out.insert(std::move(flat));
    }
    return out;
}

std::set<std::vector<Int>> flatten_all(const std::vector<IntMatrix>& mats) {
    std::set<std::vector<Int>> out;
    for (const auto& m : mats) {
        std::vector<Int> flat;
        IntMatrix canon = canonical_embedding_form(m);
        flat.push_back(Int(canon.rows()));
        for (std::size_t i = 0; i < canon.rows(); ++i)
            for (std::size_t j = 0; j < canon.cols(); ++j) flat.push_back(canon(i, j));
        out.insert(std::move(flat));
    }
    return out;
}

}  // namespace

TEST_CASE("two squares") {
    EmbedOptions opts;
    opts.row_count = 2;
    auto embs = orthogonal_embeddings(IntMatrix{{2}}, opts);
    REQUIRE(embs.size() == 1);
    CHECK(embs[0].matrix == IntMatrix{{1}, {1}});
}

TEST_CASE("doubled gram has one eight row class") {
    EmbedOptions opts;
    opts.row_count = 8;
    opts.exact_rows = true;
    auto embs = orthogonal_embeddings(kDoubledGram, opts);
    REQUIRE(embs.size() == 1);
    CHECK(embs[0].matrix == canonical_embedding_form(kDoubledPattern));
    CHECK(embs[0].matrix.transposed() * embs[0].matrix == kDoubledGram);

    // Without the exact-row requirement a shorter solution also shows up.
    EmbedOptions loose;
    loose.row_count = 8;
    auto all = orthogonal_embeddings(kDoubledGram, loose);
    CHECK(all.size() > 1);
    bool has_six = std::any_of(all.begin(), all.end(),
                               [](const Embedding& e) { return e.matrix.rows() == 6; });
    CHECK(has_six);
}

TEST_CASE("hex form admits no factorization") {
    CHECK(orthogonal_embeddings(kHexForm).empty());
}

TEST_CASE("ones plus identity has two classes") {
    IntMatrix g{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    auto embs = orthogonal_embeddings(g);
    REQUIRE(embs.size() == 2);
    CHECK(embs[0].matrix.rows() == 3);
    CHECK(embs[1].matrix.rows() == 4);
    for (const auto& e : embs) CHECK(e.matrix.transposed() * e.matrix == g);
}

TEST_CASE("block stacked target with span constraint") {
    IntMatrix g{{2, 0}, {0, 2}};
    EmbedOptions opts;
    opts.nonzero_spans = {{0, 1}, {1, 2}};
    auto embs = orthogonal_embeddings(g, opts);
    REQUIRE(embs.size() == 1);
    CHECK(embs[0].matrix == IntMatrix{{1, -1}, {1, 1}});

    // Without the span constraint the axis factorizations come back too.
    auto plain = orthogonal_embeddings(g);
    CHECK(plain.size() == 2);
}

TEST_CASE("engine matches brute force on small targets") {
    std::mt19937 rng(2718);
    int nonempty = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 3;
        IntMatrix a = random_matrix(rng, n, n, -1, 1);
        IntMatrix c = a.transposed() * a + IntMatrix::identity(n);
        bool small = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) small = small && c(i, j) <= 6;
        if (!small) continue;
        CAPTURE(trial);
        auto engine = orthogonal_embeddings(c);
        auto brute = brute_embeddings(c);
        REQUIRE(flatten_all(engine) == flatten_all(brute));
        if (!engine.empty()) ++nonempty;
    }
    CHECK(nonempty > 10);
}

TEST_CASE("equivalence reduction is sound") {
    std::mt19937 rng(1618);
    IntMatrix g{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    auto embs = orthogonal_embeddings(g);
    for (const auto& e : embs) {
        IntMatrix shuffled = e.matrix;
        std::vector<std::size_t> perm(shuffled.rows());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<Int>> rows;
        for (std::size_t i : perm) {
            auto r = shuffled.row(i);
            if (rng() % 2)
                for (Int& x : r) x = -x;
            rows.push_back(std::move(r));
        }
        CHECK(canonical_embedding_form(IntMatrix::from_rows(rows)) == e.matrix);
    }
}

TEST_CASE("squarefree determinant targets factorize") {
    for (const IntMatrix& c : {IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{3, 1}, {1, 2}},
                               IntMatrix{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}}) {
        Int d = det(c);
        CAPTURE(d.get_si());
        CHECK_FALSE(orthogonal_embeddings(c).empty());
    }
}

TEST_CASE("embedding validation and limits") {
    CHECK_THROWS_AS(orthogonal_embeddings(IntMatrix{{1, 2}, {0, 1}}), validation_error);
    CHECK_THROWS_AS(orthogonal_embeddings(IntMatrix{{1, 2}, {2, 1}}), validation_error);
    CHECK_THROWS_AS(orthogonal_embeddings(IntMatrix::identity(10)), resource_limit_error);

    EmbedOptions tiny;
    tiny.node_budget = 1;
    CHECK_THROWS_AS(orthogonal_embeddings(kDoubledGram, tiny), resource_limit_error);

    EmbedOptions impossible;
    impossible.row_count = 1;
    impossible.exact_rows = true;
    CHECK(orthogonal_embeddings(IntMatrix{{2}}, impossible).empty());
}

TEST_CASE("decomposability partitions") {
    RowColPartition identity2 = is_decomposable(IntMatrix::identity(2));
    CHECK(identity2.decomposable);
    REQUIRE(identity2.row_classes.size() == 2);
    CHECK(identity2.row_classes[0] == std::vector<std::size_t>{0});
    CHECK(identity2.col_classes[1] == std::vector<std::size_t>{1});

    CHECK_FALSE(is_decomposable(kDoubledPattern).decomposable);
    CHECK_FALSE(is_decomposable(IntMatrix{{1}, {2}, {3}}).decomposable);
    CHECK(is_decomposable(IntMatrix{{1, 0}, {0, 0}}).decomposable);

    IntMatrix blocks{{1, 0, 2, 0}, {0, 3, 0, 0}, {4, 0, 5, 0}, {0, 0, 0, 7}};
    RowColPartition p = is_decomposable(blocks);
    CHECK(p.decomposable);
    CHECK(p.row_classes.size() == 3);
}

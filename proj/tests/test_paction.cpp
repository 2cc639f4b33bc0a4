#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cartankit/json_io.hpp"
#include "cartankit/paction.hpp"

using namespace cartankit;

namespace {

// Rotation of order 3 on Z_4 x Z_4 and its square.
const IntMatrix kRot4{{0, 3}, {1, 3}};
const IntMatrix kRot4Sq{{3, 1}, {3, 0}};

// Rotation of order 3 on Z_2 x Z_2 and the coordinate swap.
const IntMatrix kRot2{{0, 1}, {1, 1}};
const IntMatrix kSwap2{{0, 1}, {1, 0}};

// Order 7 on Z_2^3 with a normalizing order-3 companion (closure 21).
const IntMatrix kSinger8{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
const IntMatrix kFrob8{{1, 0, 0}, {0, 0, 1}, {0, 1, 1}};

// Order 7 on Z_4^3 with a normalizing order-3 companion (closure 21).
const IntMatrix kCubic{{0, 0, 1}, {1, 0, 3}, {0, 1, 2}};
const IntMatrix kCubicComp{{1, 0, 0}, {0, 2, 3}, {2, 3, 1}};

// Commuting order-3 rotations on Z_2^4 (closure 9).
const IntMatrix kPairA{{0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
const IntMatrix kPairB{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}};

std::vector<Elem> all_elements(const AbelianPGroup& g) {
    std::vector<Elem> out;
    for (unsigned long i = 0; i < g.order(); ++i) out.push_back(g.element_at(i));
    return out;
}

}  // namespace

TEST_CASE("group validation and element codec") {
    CHECK_THROWS_AS(AbelianPGroup(4, {1}), validation_error);
    CHECK_THROWS_AS(AbelianPGroup(1, {1}), validation_error);
    CHECK_THROWS_AS(AbelianPGroup(2, {}), validation_error);
    CHECK_THROWS_AS(AbelianPGroup(2, {1, 2}), validation_error);
    CHECK_THROWS_AS(AbelianPGroup(2, {2, 0}), validation_error);
    CHECK_THROWS_AS(AbelianPGroup(2, std::vector<unsigned>(21, 1)), validation_error);

    AbelianPGroup g(2, {3, 1});
    CHECK(g.order() == 16);
    CHECK(g.rank() == 2);
    CHECK(g.modulus(0) == 8);
    CHECK(g.modulus(1) == 2);

    // Lexicographic rank: first coordinate most significant.
    CHECK(g.index_of({0, 0}) == 0);
    CHECK(g.index_of({0, 1}) == 1);
    CHECK(g.index_of({1, 0}) == 2);
    CHECK(g.index_of({7, 1}) == 15);
    for (unsigned long i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
    CHECK_THROWS_AS(g.index_of({8, 0}), validation_error);
    CHECK_THROWS_AS(g.index_of({0, 0, 0}), shape_error);
    CHECK_THROWS_AS(g.element_at(16), validation_error);

    CHECK(g.reduce({-1, 5}) == Elem{7, 1});
    CHECK(g.add({7, 1}, {1, 1}) == Elem{0, 0});
    CHECK(g.sub({0, 0}, {1, 1}) == Elem{7, 1});
    CHECK(g.scale(3, {3, 1}) == Elem{1, 1});
}

TEST_CASE("action matrix validation") {
    AbelianPGroup mixed(2, {2, 1});
    // Entry below the diagonal block violates divisibility: the generator of
    // order 2 cannot map into an order-4 coordinate with an odd coefficient.
    CHECK_THROWS_AS(ActionMatrix(mixed, IntMatrix{{1, 1}, {1, 1}}), validation_error);
    // Well-defined but not injective.
    CHECK_THROWS_AS(ActionMatrix(mixed, IntMatrix{{2, 0}, {0, 1}}), validation_error);
    CHECK_THROWS_AS(ActionMatrix(mixed, IntMatrix{{1}}), shape_error);

    // Divisible lower entry is a valid homomorphism and bijective.
    ActionMatrix ok(mixed, IntMatrix{{1, 2}, {1, 1}});
    CHECK(ok.apply(mixed, {0, 1}) == Elem{2, 1});

    AbelianPGroup z44(2, {2, 2});
    ActionMatrix rot(z44, kRot4);
    CHECK_FALSE(rot.is_identity());
    CHECK(ActionMatrix::identity_on(z44).is_identity());
    // Columns hold generator images: x -> a x on coordinates.
    CHECK(rot.apply(z44, {1, 0}) == Elem{0, 1});
    CHECK(rot.apply(z44, {0, 1}) == Elem{3, 3});
    CHECK(rot.to_int() == IntMatrix{{0, 3}, {1, 3}});

    // Entries are stored reduced modulo the row modulus.
    ActionMatrix wrapped(z44, IntMatrix{{4, 3}, {1, 7}});
    CHECK(wrapped.to_int() == IntMatrix{{0, 3}, {1, 3}});
    CHECK(wrapped == rot);
}

TEST_CASE("composition order") {
    AbelianPGroup z44(2, {2, 2});
    ActionMatrix rot(z44, kRot4);
    ActionMatrix sq = compose(z44, rot, rot);
    CHECK(sq.to_int() == kRot4Sq);
    CHECK(compose(z44, sq, rot).is_identity());

    // compose(f, g) applies g first.
    ActionMatrix shear(z44, IntMatrix{{1, 1}, {0, 1}});
    Elem x{1, 2};
    CHECK(compose(z44, rot, shear).apply(z44, x) == rot.apply(z44, shear.apply(z44, x)));
}

TEST_CASE("closure orders and words") {
    AbelianPGroup z44(2, {2, 2});
    ActionGroup rot(z44, {kRot4});
    CHECK(rot.order() == 3);
    CHECK(rot.coprime_to_p());
    CHECK(rot.elements()[0].is_identity());

    ActionGroup trivial(z44, {});
    CHECK(trivial.order() == 1);

    AbelianPGroup z222(2, {1, 1, 1});
    CHECK(ActionGroup(z222, {kSinger8}).order() == 7);
    CHECK(ActionGroup(z222, {kSinger8, kFrob8}).order() == 21);

    AbelianPGroup z444(2, {2, 2, 2});
    CHECK(ActionGroup(z444, {kCubic}).order() == 7);
    ActionGroup frob21(z444, {kCubic, kCubicComp});
    CHECK(frob21.order() == 21);

    // Each stored word recomposes to its element.
    for (std::size_t i = 0; i < frob21.order(); ++i) {
        ActionMatrix acc = ActionMatrix::identity_on(z444);
        for (int gi : frob21.words()[i]) acc = compose(z444, acc, frob21.generators()[gi]);
        CHECK(acc == frob21.elements()[i]);
    }

    // A p-power order closure is reported as not coprime.
    ActionGroup shear(z44, {IntMatrix{{1, 1}, {0, 1}}});
    CHECK(shear.order() == 4);
    CHECK_FALSE(shear.coprime_to_p());
}

TEST_CASE("orbit decomposition fixed values") {
    AbelianPGroup z222(2, {1, 1, 1});
    ActionGroup a(z222, {kSinger8, kFrob8});
    auto orbs = orbits(a);
    REQUIRE(orbs.size() == 2);
    CHECK(orbs[0].representative == Elem{0, 0, 0});
    CHECK(orbs[0].size == 1);
    CHECK(orbs[0].stabilizer_order == 21);
    CHECK(orbs[1].representative == Elem{0, 0, 1});
    CHECK(orbs[1].size == 7);
    CHECK(orbs[1].stabilizer_order == 3);
    CHECK(orbs[1].members.size() == 7);
    CHECK(std::is_sorted(orbs[1].members.begin(), orbs[1].members.end()));

    AbelianPGroup z22(2, {1, 1});
    auto aut = orbits(ActionGroup(z22, {kRot2, kSwap2}));
    REQUIRE(aut.size() == 2);
    CHECK(aut[1].size == 3);
    CHECK(aut[1].stabilizer_order == 2);

    AbelianPGroup z2222(2, {1, 1, 1, 1});
    auto nine = orbits(ActionGroup(z2222, {kPairA, kPairB}));
    REQUIRE(nine.size() == 4);
    CHECK(nine[0].size == 1);
    CHECK(nine[1].representative == Elem{0, 0, 0, 1});
    CHECK(nine[1].size == 3);
    CHECK(nine[2].representative == Elem{0, 1, 0, 0});
    CHECK(nine[2].size == 3);
    CHECK(nine[3].representative == Elem{0, 1, 0, 1});
    CHECK(nine[3].size == 9);

    AbelianPGroup z44(2, {2, 2});
    auto rot = orbits(ActionGroup(z44, {kRot4}));
    REQUIRE(rot.size() == 6);
    unsigned long covered = 0;
    for (const auto& o : rot) {
        CHECK(o.representative == o.members.front());
        CHECK((o.size * o.stabilizer_order == 3 || o.size == 1));
        covered += o.size;
    }
    CHECK(covered == 16);
}

TEST_CASE("stabilizer indices") {
    AbelianPGroup z222(2, {1, 1, 1});
    ActionGroup a(z222, {kSinger8, kFrob8});
    Elem u{0, 0, 1};
    auto st = stabilizer(a, u);
    REQUIRE(st.size() == 3);
    CHECK(st[0] == 0);
    for (std::size_t idx : st) CHECK(a.elements()[idx].apply(z222, u) == u);
    CHECK(stabilizer(a, z222.zero()).size() == 21);
}

TEST_CASE("fixed points and commutator part") {
    AbelianPGroup z2222(2, {1, 1, 1, 1});
    ActionGroup one_sided(z2222, {kPairA});
    Subgroup fixed = fixed_points(one_sided);
    Subgroup comm = commutator_part(one_sided);
    CHECK(fixed.order() == 4);
    CHECK(comm.order() == 4);
    // The two factors meet only in zero and jointly span.
    std::set<Elem> meet(fixed.members.begin(), fixed.members.end());
    int common = 0;
    for (const Elem& x : comm.members) common += meet.count(x);
    CHECK(common == 1);

    AbelianPGroup z222(2, {1, 1, 1});
    ActionGroup f21(z222, {kSinger8, kFrob8});
    CHECK(fixed_points(f21).order() == 1);
    CHECK(commutator_part(f21).order() == 8);

    AbelianPGroup z44(2, {2, 2});
    ActionGroup rot(z44, {kRot4});
    CHECK(fixed_points(rot).order() == 1);
    CHECK(commutator_part(rot).order() == 16);

    // Explicit-matrix overloads agree with the closure-based ones.
    Subgroup via_mats = fixed_points(z2222, {ActionMatrix(z2222, kPairA)});
    CHECK(via_mats.members == fixed.members);
    CHECK(commutator_part(z2222, {ActionMatrix(z2222, kPairA)}).members == comm.members);

    // Generators listed in the subgroup regenerate its members.
    Subgroup regen = commutator_part(one_sided);
    std::set<Elem> span{z2222.zero()};
    std::vector<Elem> frontier{z2222.zero()};
    while (!frontier.empty()) {
        Elem x = frontier.back();
        frontier.pop_back();
        for (const Elem& gen : regen.generators) {
            Elem y = z2222.add(x, gen);
            if (span.insert(y).second) frontier.push_back(y);
        }
    }
    CHECK(span.size() == regen.order());
}

TEST_CASE("coprime splitting") {
    AbelianPGroup z44(2, {2, 2});
    SplitCheck s = coprime_split_check(ActionGroup(z44, {kRot4}));
    CHECK(s.holds);
    CHECK(s.fixed_order == 1);
    CHECK(s.commutator_order == 16);
    CHECK(s.intersection_order == 1);

    AbelianPGroup z2222(2, {1, 1, 1, 1});
    SplitCheck t = coprime_split_check(ActionGroup(z2222, {kPairA}));
    CHECK(t.holds);
    CHECK(t.fixed_order * t.commutator_order == 16);

    CHECK_THROWS_AS(coprime_split_check(ActionGroup(z44, {IntMatrix{{1, 1}, {0, 1}}})),
                    validation_error);
}

TEST_CASE("freeness tests") {
    AbelianPGroup z44(2, {2, 2});
    CHECK(has_free_action(ActionGroup(z44, {kRot4})));

    AbelianPGroup z222(2, {1, 1, 1});
    CHECK(has_free_action(ActionGroup(z222, {kSinger8})));
    ActionGroup f21(z222, {kSinger8, kFrob8});
    CHECK_FALSE(has_free_action(f21));

    AbelianPGroup z2222(2, {1, 1, 1, 1});
    CHECK_FALSE(has_free_action(ActionGroup(z2222, {kPairA, kPairB})));

    // The stabilizer of u acts freely on its commutator part.
    Elem u{0, 0, 1};
    std::vector<ActionMatrix> stab;
    for (std::size_t idx : stabilizer(f21, u)) stab.push_back(f21.elements()[idx]);
    Subgroup comm = commutator_part(z222, stab);
    CHECK(comm.order() == 4);
    CHECK(acts_freely_on(z222, stab, comm.members));
    CHECK_FALSE(acts_freely_on(z222, f21.elements(), all_elements(z222)));
}

TEST_CASE("regular orbit search fixed values") {
    AbelianPGroup z44(2, {2, 2});
    auto reg = regular_orbit_search(ActionGroup(z44, {kRot4}));
    REQUIRE(reg.has_value());
    CHECK(*reg == Elem{0, 1});

    AbelianPGroup z22(2, {1, 1});
    CHECK_FALSE(regular_orbit_search(ActionGroup(z22, {kRot2, kSwap2})).has_value());

    AbelianPGroup z222(2, {1, 1, 1});
    CHECK_FALSE(regular_orbit_search(ActionGroup(z222, {kSinger8, kFrob8})).has_value());

    AbelianPGroup z2222(2, {1, 1, 1, 1});
    auto pair = regular_orbit_search(ActionGroup(z2222, {kPairA, kPairB}));
    REQUIRE(pair.has_value());
    CHECK(*pair == Elem{0, 1, 0, 1});
}

TEST_CASE("socle and frattini subgroups") {
    AbelianPGroup z44(2, {2, 2});
    Subgroup om = omega(z44);
    Subgroup fr = frattini(z44);
    CHECK(om.order() == 4);
    CHECK(fr.order() == 4);
    CHECK(om.members == fr.members);
    CHECK(regorb_hypothesis(z44));

    AbelianPGroup z82(2, {3, 1});
    CHECK(omega(z82).order() == 4);
    CHECK(frattini(z82).order() == 4);
    CHECK(omega(z82).members != frattini(z82).members);
    CHECK_FALSE(regorb_hypothesis(z82));

    AbelianPGroup z222(2, {1, 1, 1});
    CHECK(omega(z222).order() == 8);
    CHECK(frattini(z222).order() == 1);
    CHECK_FALSE(regorb_hypothesis(z222));

    AbelianPGroup z88(2, {3, 3});
    CHECK(regorb_hypothesis(z88));
    CHECK(omega(z88).order() == 4);
    CHECK(frattini(z88).order() == 16);

    AbelianPGroup z99(3, {2, 2});
    CHECK(omega(z99, 1).order() == 9);
    CHECK(omega(z99, 2).order() == 81);
}

TEST_CASE("invariant transversal on the rotation plane") {
    AbelianPGroup z44(2, {2, 2});
    ActionGroup rot(z44, {kRot4});
    InvariantTransversal tr = invariant_transversal(rot);
    REQUIRE(tr.coset_reps.size() == 4);
    REQUIRE(tr.images.size() == 16);
    CHECK(tr.coset_reps[0] == z44.zero());
    CHECK(tr.images[0] == std::pair<Elem, Elem>{z44.zero(), z44.zero()});

    Subgroup om = omega(z44);
    std::set<Elem> socle(om.members.begin(), om.members.end());
    std::set<std::pair<Elem, Elem>> seen;
    for (const auto& [a, b] : tr.images) {
        CHECK(socle.count(a) == 1);
        CHECK(socle.count(b) == 1);
        seen.insert({a, b});
    }
    CHECK(seen.size() == 16);

    // Equivariance at a sample point for a sample group element.
    const ActionMatrix& g = rot.elements()[1];
    Elem x{1, 2};
    auto [a, b] = tr.images[z44.index_of(x)];
    auto [ga, gb] = tr.images[z44.index_of(g.apply(z44, x))];
    CHECK(ga == g.apply(z44, a));
    CHECK(gb == g.apply(z44, b));
}

TEST_CASE("invariant transversal on the rank 4 lattice") {
    AbelianPGroup g(2, {2, 2, 2, 2});
    const IntMatrix t15{{0, 0, 0, 3}, {1, 0, 0, 1}, {0, 1, 0, 2}, {0, 0, 1, 0}};
    ActionGroup a(g, {t15});
    CHECK(a.order() == 15);
    InvariantTransversal tr = invariant_transversal(a);
    CHECK(tr.coset_reps.size() == 16);
    CHECK(tr.images.size() == 256);
}

TEST_CASE("invariant transversal rejections") {
    AbelianPGroup z22(2, {1, 1});
    CHECK_THROWS_AS(invariant_transversal(ActionGroup(z22, {kRot2})), validation_error);

    AbelianPGroup z88(2, {3, 3});
    CHECK_THROWS_AS(invariant_transversal(ActionGroup(z88, {IntMatrix{{0, 7}, {1, 7}}})),
                    validation_error);

    AbelianPGroup z42(2, {2, 1});
    CHECK_THROWS_AS(invariant_transversal(ActionGroup(z42, {IntMatrix{{1, 0}, {0, 1}}})),
                    validation_error);

    AbelianPGroup z44(2, {2, 2});
    CHECK_THROWS_AS(invariant_transversal(ActionGroup(z44, {IntMatrix{{1, 1}, {0, 1}}})),
                    validation_error);
}

TEST_CASE("field of 128 elements under its multiplicative and frobenius maps") {
    Json doc = parse_json_file(fixture_path("field_128_action.json"));
    AbelianPGroup g = group_from_json(doc["group"]);
    std::vector<IntMatrix> gens;
    for (const Json& m : doc["generators"]) gens.push_back(int_matrix_from_json(m));
    REQUIRE(gens.size() == 2);

    CHECK(ActionGroup(g, {gens[0]}).order() == 127);
    CHECK(ActionGroup(g, {gens[1]}).order() == 7);
    ActionGroup full(g, gens);
    CHECK(full.order() == 889);
    CHECK(has_free_action(ActionGroup(g, {gens[0]})));
    CHECK_FALSE(has_free_action(full));

    // One nonzero orbit; every nonzero stabilizer is a frobenius conjugate.
    auto orbs = orbits(full);
    REQUIRE(orbs.size() == 2);
    CHECK(orbs[1].size == 127);
    CHECK(orbs[1].stabilizer_order == 7);
    CHECK_FALSE(regular_orbit_search(full).has_value());

    // The frobenius fixes exactly the prime subfield and moves a 64-element
    // complement.
    ActionGroup frob(g, {gens[1]});
    CHECK(fixed_points(frob).order() == 2);
    CHECK(commutator_part(frob).order() == 64);
}

TEST_CASE("bundled corpus satisfies the regular orbit property") {
    Json doc = parse_json_file(fixture_path("action_corpus.json"));
    REQUIRE(doc.contains("cases"));
    REQUIRE(doc["cases"].size() >= 20);

    for (const Json& c : doc["cases"]) {
        CAPTURE(c["name"].get<std::string>());
        AbelianPGroup g = group_from_json(c["group"]);
        std::vector<IntMatrix> gens;
        for (const Json& m : c["generators"]) gens.push_back(int_matrix_from_json(m));
        ActionGroup a(g, gens);

        REQUIRE(regorb_hypothesis(g));
        REQUIRE(a.order() == c["action_order"].get<unsigned long>());
        REQUIRE(a.order() % 2 == 1);
        REQUIRE(a.coprime_to_p());

        SplitCheck split = coprime_split_check(a);
        REQUIRE(split.holds);

        auto reg = regular_orbit_search(a);
        REQUIRE(reg.has_value());
        REQUIRE(stabilizer(a, *reg).size() == 1);

        unsigned long covered = 0;
        for (const auto& o : orbits(a)) covered += o.size;
        REQUIRE(covered == g.order());

        bool homocyclic_p2 = std::all_of(g.exponents().begin(), g.exponents().end(),
                                         [](unsigned e) { return e == 2; });
        if (homocyclic_p2) {
            InvariantTransversal tr = invariant_transversal(a);
            REQUIRE(tr.images.size() == g.order());
        }
    }
}

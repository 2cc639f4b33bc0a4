#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cartankit/int_matrix.hpp"

namespace cartankit {

// Element of an abelian p-group as a coordinate vector, i-th entry reduced
// modulo p^(e_i).  Canonical element order is lexicographic on coordinates.
using Elem = std::vector<unsigned long>;

// Direct sum of cyclic p-groups Z_{p^e1} + ... + Z_{p^er} with e1 >= ... >= er.
class AbelianPGroup {
public:
    AbelianPGroup(long p, std::vector<unsigned> exponents);

    long p() const { return p_; }
    const std::vector<unsigned>& exponents() const { return exponents_; }
    std::size_t rank() const { return exponents_.size(); }
    unsigned long modulus(std::size_t i) const { return moduli_[i]; }
    unsigned long order() const { return order_; }

    bool operator==(const AbelianPGroup& other) const {
        return p_ == other.p_ && exponents_ == other.exponents_;
    }

    // Lexicographic rank of an element; element_at inverts it.
    unsigned long index_of(const Elem& x) const;
    Elem element_at(unsigned long index) const;
    Elem reduce(const std::vector<long long>& coords) const;

    Elem zero() const { return Elem(rank(), 0); }
    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem scale(unsigned long long c, const Elem& x) const;

private:
    long p_ = 0;
    std::vector<unsigned> exponents_;
    std::vector<unsigned long> moduli_;
    unsigned long order_ = 1;
};

// Validated automorphism: column j holds the image of generator j, so the
// action on coordinates is x -> a x.  Entries are stored reduced modulo the
// row modulus p^(e_i).
class ActionMatrix {
public:
    ActionMatrix(const AbelianPGroup& g, const IntMatrix& m);
    static ActionMatrix identity_on(const AbelianPGroup& g);

    const std::vector<std::vector<unsigned long>>& entries() const { return a_; }
    bool is_identity() const;
    Elem apply(const AbelianPGroup& g, const Elem& x) const;
    IntMatrix to_int() const;

    bool operator==(const ActionMatrix& other) const = default;
    bool operator<(const ActionMatrix& other) const { return a_ < other.a_; }

private:
    explicit ActionMatrix(std::vector<std::vector<unsigned long>> a) : a_(std::move(a)) {}
    std::vector<std::vector<unsigned long>> a_;

    friend ActionMatrix compose(const AbelianPGroup& g, const ActionMatrix& first,
                                const ActionMatrix& second);
};

// first(second(x)); both are automorphisms of g.
ActionMatrix compose(const AbelianPGroup& g, const ActionMatrix& first,
                     const ActionMatrix& second);

// Generator matrices with their full closure, computed breadth first.
// elements()[0] is the identity; words()[i] lists generator indices whose
// left-to-right composition (earlier applied last) gives elements()[i].
class ActionGroup {
public:
    ActionGroup(AbelianPGroup group, const std::vector<IntMatrix>& generators);

    const AbelianPGroup& group() const { return group_; }
    const std::vector<ActionMatrix>& generators() const { return generators_; }
    const std::vector<ActionMatrix>& elements() const { return elements_; }
    const std::vector<std::vector<int>>& words() const { return words_; }
    unsigned long order() const { return elements_.size(); }
    bool coprime_to_p() const { return order() % (unsigned long)group_.p() != 0; }

private:
    AbelianPGroup group_;
    std::vector<ActionMatrix> generators_;
    std::vector<ActionMatrix> elements_;
    std::vector<std::vector<int>> words_;
};

struct Orbit {
    Elem representative;  // lexicographically least member
    unsigned long size = 0;
    unsigned long stabilizer_order = 0;
    std::vector<Elem> members;  // sorted
};

std::vector<Orbit> orbits(const ActionGroup& a);

// Indices into a.elements() of the full point stabilizer of u.
std::vector<std::size_t> stabilizer(const ActionGroup& a, const Elem& u);

struct Subgroup {
    std::vector<Elem> generators;
    std::vector<Elem> members;  // sorted, 0 first
    unsigned long order() const { return members.size(); }
};

Subgroup fixed_points(const ActionGroup& a);
Subgroup fixed_points(const AbelianPGroup& g, const std::vector<ActionMatrix>& by);
Subgroup commutator_part(const ActionGroup& a);
Subgroup commutator_part(const AbelianPGroup& g, const std::vector<ActionMatrix>& by);

struct SplitCheck {
    bool holds = false;
    unsigned long fixed_order = 0;
    unsigned long commutator_order = 0;
    unsigned long intersection_order = 0;
};

// Fixed points and commutator part intersect trivially and their orders
// multiply to |P|; needs |A| coprime to p.
SplitCheck coprime_split_check(const ActionGroup& a);

bool has_free_action(const ActionGroup& a);
// Free restriction to a subgroup: no nontrivial element of `closure` fixes a
// nonzero member of `subgroup`.
bool acts_freely_on(const AbelianPGroup& g, const std::vector<ActionMatrix>& closure,
                    const std::vector<Elem>& subgroup);

// First element in canonical order whose stabilizer is trivial.
std::optional<Elem> regular_orbit_search(const ActionGroup& a);

Subgroup omega(const AbelianPGroup& g, unsigned i = 1);
Subgroup frattini(const AbelianPGroup& g);
// Omega(P) inside Frattini(P); for abelian p-groups this is "all e_i >= 2".
bool regorb_hypothesis(const AbelianPGroup& g);

struct InvariantTransversal {
    // One representative per coset of Omega(P), indexed by coset (the coset
    // key is the coordinate vector mod p, ranked lexicographically).
    std::vector<Elem> coset_reps;
    // Per element index: the image pair in Omega(P) x Omega(P).
    std::vector<std::pair<Elem, Elem>> images;
};

// Equivariant bijection P -> Omega(P) x Omega(P) for homocyclic P of exponent
// exactly p^2 under a coprime action, built from an invariant transversal of
// P/Omega(P) (coset representatives found by averaging over the coset
// stabilizer).  The result is verified exhaustively before being returned.
InvariantTransversal invariant_transversal(const ActionGroup& a);

}  // namespace cartankit

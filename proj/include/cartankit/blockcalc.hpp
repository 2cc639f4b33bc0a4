#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartankit/int_matrix.hpp"
#include "cartankit/paction.hpp"
#include "cartankit/rat_matrix.hpp"

namespace cartankit {

// Local data attached to one orbit representative u: the centralizer of u in
// the acting group, the part of the defect group it moves, the part it fixes,
// and the simple-module count and Cartan matrix of the associated local block.
struct SubsectionDatum {
    Elem rep;
    unsigned long orbit_size = 0;
    unsigned long u_order = 0;
    unsigned long centralizer_order = 0;
    unsigned long commutator_order = 0;  // |[D, C_A(u)]|
    unsigned long z_part = 0;            // |C_D(C_A(u))|
    bool centralizer_free = false;       // C_A(u) acts freely on [D, C_A(u)]
    std::optional<long> l_value;
    std::optional<IntMatrix> cartan;     // when present: symmetric PD, l_value rows
};

struct BlockScenario {
    AbelianPGroup defect;
    ActionGroup action;
    // One entry per orbit, the trivial representative first, then in
    // canonical representative order.  Orbit sizes sum to |defect|.
    std::vector<SubsectionDatum> subsections;
    std::vector<std::string> assumptions;  // provenance of supplied values
};

// How l-values are assigned during inventory.  The built-in rule covers the
// free case only (l = |C_A(u)| when the centralizer acts freely on its
// commutator part); everything else must be supplied per representative.
struct LRule {
    bool free_rule = true;
    std::map<Elem, long> l_overrides;
    std::map<Elem, IntMatrix> cartan_overrides;
};

// Computes the per-orbit local data for the action on the defect group and
// assigns l-values by rule or override; a representative left without an
// l-value raises incomplete_scenario_error.
BlockScenario subsection_inventory(const AbelianPGroup& defect,
                                   const std::vector<IntMatrix>& action_generators,
                                   const LRule& rule = {});

// |C_D(A)| times the sum of l-values over representatives lying in [D, A].
Int k_from_subsections(const BlockScenario& s);

// The e x e matrix z_part * ((m - 1) / e + delta_ij); needs e | m - 1.
IntMatrix free_case_cartan(long z_part, long m, long e);

struct KbCheck {
    Rat minimum_value;
    bool holds = false;  // minimum_value >= l
};

// Minimum of x * (defect_order * C^-1) * x^T over nonzero integer vectors,
// compared against l.
KbCheck kb_check_min(const IntMatrix& cartan, const Int& defect_order, long l);

struct Mod8Result {
    long l = 0;  // largest admissible value; equals e for valid inputs
    bool unique = false;
    std::vector<long> solutions;  // ascending
};

// Solves (defect_order - 1) / e + l == defect_order (mod 8) for l in 1..e.
// defect_order must be a power of 2 and e one of {1, 3, 5, 7, 15} dividing
// defect_order - 1.
Mod8Result l_from_mod8(long defect_order, long e);

struct IbrBound {
    Rat lhs;  // (defect_order - 1) / e + l
    Rat rhs;  // (defect_order - 1) / l + l
    bool holds = false;
};

IbrBound ibr_bound_check(long defect_order, long e, long l);

// One joint solution of the orthogonality constraints: per nontrivial
// representative x a block Q_x with Q_x^T Q_x = C_x / z and cross blocks
// orthogonal; gamma_basis rows span the joint left kernel and
// candidate_cartan is their Gram matrix.
struct DecompositionSet {
    long k = 0;  // row count of each block
    std::vector<IntMatrix> blocks;
    IntMatrix gamma_basis;
    IntMatrix candidate_cartan;
    long multiplicity = 1;  // congruence-class size after deduplication
};

struct EnumerateOptions {
    bool dedupe = true;
    std::optional<long> k;  // row count override; otherwise derived
    unsigned long long budget = 10'000'000;
    // When set, receives the count of visited search nodes, also on budget
    // exhaustion.
    std::uint64_t* nodes_used = nullptr;
};

std::vector<DecompositionSet> decomposition_enumerate(const BlockScenario& s,
                                                      const EnumerateOptions& options = {});

struct GoodElement {
    Elem element;
    unsigned long commutator_order = 0;
    unsigned long centralizer_order = 0;
    bool centralizer_free = false;
};

// First element u in canonical order with |[D, C_A(u)]| <= threshold.
std::optional<GoodElement> find_good_element(const AbelianPGroup& defect,
                                             const std::vector<IntMatrix>& action_generators,
                                             unsigned long threshold);

struct MainCheck {
    std::vector<long> generator_dets;  // induced determinants on the socle, reduced mod p
    bool sl_members = false;           // every determinant is 1 mod p
    bool free = false;
};

// For a coprime action on a group of rank at most 2: reports whether each
// generator induces a determinant-one map on the socle and whether the whole
// action is free.
MainCheck theorem_main_check(const ActionGroup& quotient_action);

}  // namespace cartankit

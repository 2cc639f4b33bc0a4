#include "cartankit/blockcalc.hpp"

#include <algorithm>
#include <numeric>

#include "cartankit/embed.hpp"
#include "cartankit/errors.hpp"
#include "cartankit/exactlin.hpp"
#include "cartankit/qform.hpp"

namespace cartankit {

namespace {

std::string elem_string(const Elem& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

unsigned long element_order(const AbelianPGroup& g, const Elem& x) {
    unsigned long order = 1;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        unsigned long m = g.modulus(i);
        unsigned long cyc = m / std::gcd(x[i], m);  // std::gcd(0, m) == m
        order = std::lcm(order, cyc);
    }
    return order;
}

std::vector<ActionMatrix> stabilizer_matrices(const ActionGroup& a, const Elem& u) {
    std::vector<ActionMatrix> mats;
    for (std::size_t idx : stabilizer(a, u)) mats.push_back(a.elements()[idx]);
    return mats;
}

SubsectionDatum local_datum(const AbelianPGroup& g, const ActionGroup& a, const Orbit& orbit) {
    SubsectionDatum d;
    d.rep = orbit.representative;
    d.orbit_size = orbit.size;
    d.u_order = element_order(g, d.rep);
    std::vector<ActionMatrix> stab = stabilizer_matrices(a, d.rep);
    d.centralizer_order = stab.size();
    Subgroup comm = commutator_part(g, stab);
    Subgroup fixed = fixed_points(g, stab);
    d.commutator_order = comm.order();
    d.z_part = fixed.order();
    d.centralizer_free = acts_freely_on(g, stab, comm.members);
    return d;
}

}  // namespace

BlockScenario subsection_inventory(const AbelianPGroup& defect,
                                   const std::vector<IntMatrix>& action_generators,
                                   const LRule& rule) {
    ActionGroup action(defect, action_generators);
    if (!action.coprime_to_p())
        throw validation_error("inventory requires an action order coprime to p");

    BlockScenario scenario{defect, action, {}, {}};
    for (const Orbit& orbit : orbits(action)) {
        SubsectionDatum d = local_datum(defect, action, orbit);
        if (auto it = rule.l_overrides.find(d.rep); it != rule.l_overrides.end()) {
            d.l_value = it->second;
            scenario.assumptions.push_back("l" + elem_string(d.rep) + " supplied externally");
        } else if (rule.free_rule && d.centralizer_free) {
            d.l_value = (long)d.centralizer_order;
            scenario.assumptions.push_back("l" + elem_string(d.rep) + " from the free-action rule");
        } else {
            throw incomplete_scenario_error("no l-value for representative " + elem_string(d.rep));
        }
        if (auto it = rule.cartan_overrides.find(d.rep); it != rule.cartan_overrides.end()) {
            const IntMatrix& c = it->second;
            if (!c.is_symmetric() || (long)c.rows() != *d.l_value)
                throw validation_error("supplied Cartan matrix has the wrong shape");
            d.cartan = c;
            scenario.assumptions.push_back("Cartan" + elem_string(d.rep) + " supplied externally");
        } else if (rule.free_rule && d.centralizer_free &&
                   *d.l_value == (long)d.centralizer_order) {
            d.cartan = free_case_cartan((long)d.z_part, (long)d.commutator_order,
                                        (long)d.centralizer_order);
            scenario.assumptions.push_back("Cartan" + elem_string(d.rep) +
                                           " from the free-case formula");
        }
        scenario.subsections.push_back(std::move(d));
    }
    return scenario;
}

Int k_from_subsections(const BlockScenario& s) {
    if (s.subsections.empty()) throw incomplete_scenario_error("scenario has no subsections");
    const SubsectionDatum& trivial = s.subsections.front();
    if (trivial.rep != s.defect.zero())
        throw inconsistency_error("first subsection is not the trivial representative");
    if (trivial.z_part == 0) throw incomplete_scenario_error("trivial subsection lacks z_part");

    Subgroup comm = commutator_part(s.action);
    Int total = 0;
    for (const SubsectionDatum& d : s.subsections) {
        if (!std::binary_search(comm.members.begin(), comm.members.end(), d.rep)) continue;
        if (!d.l_value)
            throw incomplete_scenario_error("no l-value for representative " + elem_string(d.rep));
        total += Int(*d.l_value);
    }
    return Int((unsigned long)trivial.z_part) * total;
}

IntMatrix free_case_cartan(long z_part, long m, long e) {
    if (z_part < 1 || m < 1 || e < 1) throw validation_error("free-case parameters must be positive");
    if ((m - 1) % e != 0) throw validation_error("free-case formula needs e dividing m - 1");
    long off = (m - 1) / e;
    IntMatrix c(e, e);
    for (long i = 0; i < e; ++i)
        for (long j = 0; j < e; ++j) c(i, j) = Int(z_part) * Int(off + (i == j ? 1 : 0));
    return c;
}

KbCheck kb_check_min(const IntMatrix& cartan, const Int& defect_order, long l) {
    if ((long)cartan.rows() != l) throw shape_error("Cartan matrix must be l x l");
    if (defect_order <= 0) throw validation_error("defect order must be positive");
    RatMatrix scaled = Rat(defect_order) * inverse(RatMatrix::from_int(cartan));
    FormMinimum m = minimum(GramForm(scaled));
    return {m.value, m.value >= Rat(l)};
}

Mod8Result l_from_mod8(long defect_order, long e) {
    if (defect_order < 2 || (defect_order & (defect_order - 1)) != 0)
        throw validation_error("defect order must be a power of 2");
    if (e != 1 && e != 3 && e != 5 && e != 7 && e != 15)
        throw validation_error("e must be one of 1, 3, 5, 7, 15");
    if ((defect_order - 1) % e != 0) throw validation_error("e must divide defect order - 1");
    long base = (defect_order - 1) / e;
    Mod8Result r;
    for (long l = 1; l <= e; ++l)
        if ((base + l) % 8 == defect_order % 8) r.solutions.push_back(l);
    if (r.solutions.empty())
        throw inconsistency_error("no admissible l below e; input data is corrupt");
    r.l = r.solutions.back();
    r.unique = r.solutions.size() == 1;
    return r;
}

IbrBound ibr_bound_check(long defect_order, long e, long l) {
    if (defect_order < 2 || e < 1 || l < 1) throw validation_error("parameters must be positive");
    if ((defect_order - 1) % e != 0) throw validation_error("e must divide defect order - 1");
    IbrBound b;
    b.lhs = Rat(defect_order - 1) / Rat(e) + Rat(l);
    b.rhs = Rat(defect_order - 1) / Rat(l) + Rat(l);
    b.holds = b.lhs <= b.rhs;
    return b;
}

std::vector<DecompositionSet> decomposition_enumerate(const BlockScenario& s,
                                                      const EnumerateOptions& options) {
    if (s.subsections.empty()) throw incomplete_scenario_error("scenario has no subsections");
    const SubsectionDatum& trivial = s.subsections.front();
    if (trivial.rep != s.defect.zero())
        throw inconsistency_error("first subsection is not the trivial representative");
    if (trivial.z_part == 0) throw incomplete_scenario_error("trivial subsection lacks z_part");
    Int z((unsigned long)trivial.z_part);

    // Only representatives inside the moved part contribute blocks; the
    // fixed-point factor enters through the scalar z alone.
    Subgroup comm = commutator_part(s.action);

    std::vector<IntMatrix> scaled_cartans;
    for (std::size_t i = 1; i < s.subsections.size(); ++i) {
        const SubsectionDatum& d = s.subsections[i];
        if (!std::binary_search(comm.members.begin(), comm.members.end(), d.rep)) continue;
        if (d.u_order > 2)
            throw validation_error(
                "representative of order above 2: decomposition entries would not be integral");
        if (!d.cartan)
            throw incomplete_scenario_error("no Cartan matrix for representative " +
                                            elem_string(d.rep));
        const IntMatrix& c = *d.cartan;
        if (d.l_value && (long)c.rows() != *d.l_value)
            throw inconsistency_error("Cartan size disagrees with the l-value");
        IntMatrix scaled(c.rows(), c.cols());
        for (std::size_t r = 0; r < c.rows(); ++r)
            for (std::size_t q = 0; q < c.cols(); ++q) {
                if (c(r, q) % z != 0)
                    throw validation_error("Cartan entries must be divisible by the central order");
                scaled(r, q) = c(r, q) / z;
            }
        scaled_cartans.push_back(std::move(scaled));
    }

    long k;
    if (options.k) {
        k = *options.k;
    } else {
        Int full = k_from_subsections(s);
        if (full % z != 0) throw inconsistency_error("k is not divisible by the central order");
        k = (long)Int(full / z).get_si();
    }

    std::size_t total_cols = 0;
    EmbedOptions embed_opts;
    for (const IntMatrix& c : scaled_cartans) {
        embed_opts.nonzero_spans.push_back({total_cols, total_cols + c.cols()});
        total_cols += c.cols();
    }
    if (k < (long)total_cols) return {};
    embed_opts.row_count = (std::size_t)k;
    embed_opts.exact_rows = true;
    embed_opts.node_budget = options.budget;
    embed_opts.nodes_used = options.nodes_used;

    IntMatrix target = block_diagonal(scaled_cartans);
    std::vector<DecompositionSet> result;
    for (const Embedding& e : orthogonal_embeddings(target, embed_opts)) {
        DecompositionSet set;
        set.k = k;
        std::size_t col = 0;
        for (const IntMatrix& c : scaled_cartans) {
            IntMatrix block((std::size_t)k, c.cols());
            for (std::size_t r = 0; r < (std::size_t)k; ++r)
                for (std::size_t q = 0; q < c.cols(); ++q) block(r, q) = e.matrix(r, col + q);
            set.blocks.push_back(std::move(block));
            col += c.cols();
        }
        set.gamma_basis = kernel_basis(e.matrix);
        if (set.gamma_basis.rows() != (std::size_t)k - total_cols)
            throw inconsistency_error("joint kernel has unexpected rank");
        set.candidate_cartan = set.gamma_basis * set.gamma_basis.transposed();
        result.push_back(std::move(set));
    }

    if (!options.dedupe) return result;
    std::vector<DecompositionSet> classes;
    for (DecompositionSet& set : result) {
        bool merged = false;
        for (DecompositionSet& cls : classes)
            if (congruence(cls.candidate_cartan, set.candidate_cartan).congruent) {
                ++cls.multiplicity;
                merged = true;
                break;
            }
        if (!merged) classes.push_back(std::move(set));
    }
    return classes;
}

std::optional<GoodElement> find_good_element(const AbelianPGroup& defect,
                                             const std::vector<IntMatrix>& action_generators,
                                             unsigned long threshold) {
    ActionGroup action(defect, action_generators);
    if (!action.coprime_to_p())
        throw validation_error("good-element search requires an action order coprime to p");
    for (unsigned long idx = 0; idx < defect.order(); ++idx) {
        Elem u = defect.element_at(idx);
        std::vector<ActionMatrix> stab = stabilizer_matrices(action, u);
        Subgroup comm = commutator_part(defect, stab);
        if (comm.order() > threshold) continue;
        GoodElement good;
        good.element = u;
        good.commutator_order = comm.order();
        good.centralizer_order = stab.size();
        good.centralizer_free = acts_freely_on(defect, stab, comm.members);
        return good;
    }
    return std::nullopt;
}

MainCheck theorem_main_check(const ActionGroup& quotient_action) {
    const AbelianPGroup& g = quotient_action.group();
    if (g.rank() > 2) throw validation_error("main check handles rank at most 2");
    if (!quotient_action.coprime_to_p())
        throw validation_error("main check requires an action order coprime to p");
    long p = g.p();
    MainCheck check;
    check.sl_members = true;
    for (const ActionMatrix& m : quotient_action.generators()) {
        // Induced entries on the socle: a_ij * p^(e_j - e_i) taken mod p,
        // an exact integer by the homomorphism divisibility condition.
        std::vector<std::vector<long>> b(g.rank(), std::vector<long>(g.rank(), 0));
        for (std::size_t i = 0; i < g.rank(); ++i)
            for (std::size_t j = 0; j < g.rank(); ++j) {
                long v;
                unsigned ei = g.exponents()[i], ej = g.exponents()[j];
                if (ej > ei) {
                    v = 0;  // extra factor of p vanishes mod p
                } else if (ej == ei) {
                    v = (long)(m.entries()[i][j] % (unsigned long)p);
                } else {
                    unsigned long div = 1;
                    for (unsigned t = 0; t < ei - ej; ++t) div *= (unsigned long)p;
                    v = (long)(m.entries()[i][j] / div % (unsigned long)p);
                }
                b[i][j] = v;
            }
        long det = g.rank() == 1 ? b[0][0] : b[0][0] * b[1][1] - b[0][1] * b[1][0];
        det = ((det % p) + p) % p;
        check.generator_dets.push_back(det);
        if (det != 1) check.sl_members = false;
    }
    check.free = has_free_action(quotient_action);
    return check;
}

}  // namespace cartankit

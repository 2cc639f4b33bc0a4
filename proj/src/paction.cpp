#include "cartankit/paction.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "cartankit/errors.hpp"

namespace cartankit {

namespace {

constexpr unsigned long kOrderCap = 1ul << 20;
constexpr unsigned long kClosureCap = 1ul << 16;

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

unsigned long pow_ul(unsigned long base, unsigned exp) {
    unsigned long r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

// Inverse of a modulo m for gcd(a, m) = 1, by extended Euclid.
unsigned long inverse_mod(unsigned long a, unsigned long m) {
    long long t = 0, new_t = 1;
    long long r = (long long)m, new_r = (long long)(a % m);
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw validation_error("inverse_mod: arguments not coprime");
    return (unsigned long)((t % (long long)m + (long long)m) % (long long)m);
}

// Additive closure of generating vectors inside g, as sorted element indices.
std::vector<unsigned long> additive_closure(const AbelianPGroup& g,
                                            const std::vector<Elem>& gens) {
    std::vector<char> seen(g.order(), 0);
    std::queue<unsigned long> queue;
    seen[g.index_of(g.zero())] = 1;
    queue.push(g.index_of(g.zero()));
    while (!queue.empty()) {
        Elem x = g.element_at(queue.front());
        queue.pop();
        for (const Elem& h : gens) {
            unsigned long next = g.index_of(g.add(x, h));
            if (!seen[next]) {
                seen[next] = 1;
                queue.push(next);
            }
        }
    }
    std::vector<unsigned long> members;
    for (unsigned long i = 0; i < g.order(); ++i)
        if (seen[i]) members.push_back(i);
    return members;
}

Subgroup subgroup_from_gens(const AbelianPGroup& g, const std::vector<Elem>& gens) {
    Subgroup sub;
    std::vector<unsigned long> members = additive_closure(g, gens);
    sub.members.reserve(members.size());
    for (unsigned long i : members) sub.members.push_back(g.element_at(i));
    // Greedy minimal generating set from the sorted member list.
    std::vector<Elem> chosen;
    std::vector<unsigned long> span = additive_closure(g, chosen);
    for (const Elem& x : sub.members) {
        if (std::binary_search(span.begin(), span.end(), g.index_of(x))) continue;
        chosen.push_back(x);
        span = additive_closure(g, chosen);
        if (span.size() == members.size()) break;
    }
    sub.generators = std::move(chosen);
    return sub;
}

bool fixes(const AbelianPGroup& g, const ActionMatrix& a, const Elem& x) {
    return a.apply(g, x) == x;
}

}  // namespace

AbelianPGroup::AbelianPGroup(long p, std::vector<unsigned> exponents)
    : p_(p), exponents_(std::move(exponents)) {
    if (!is_prime(p_)) throw validation_error("group: p must be prime");
    if (exponents_.empty()) throw validation_error("group: empty exponent list");
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (exponents_[i] == 0) throw validation_error("group: zero exponent");
        if (i > 0 && exponents_[i] > exponents_[i - 1])
            throw validation_error("group: exponents must be weakly decreasing");
    }
    moduli_.reserve(exponents_.size());
    for (unsigned e : exponents_) {
        unsigned long m = pow_ul((unsigned long)p_, e);
        if (m > kOrderCap || order_ > kOrderCap / m)
            throw validation_error("group: order exceeds cap");
        moduli_.push_back(m);
        order_ *= m;
    }
}

unsigned long AbelianPGroup::index_of(const Elem& x) const {
    if (x.size() != rank()) throw shape_error("element: wrong coordinate count");
    unsigned long idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] >= moduli_[i]) throw validation_error("element: coordinate out of range");
        idx = idx * moduli_[i] + x[i];
    }
    return idx;
}

Elem AbelianPGroup::element_at(unsigned long index) const {
    if (index >= order_) throw validation_error("element: index out of range");
    Elem x(rank());
    for (std::size_t i = rank(); i-- > 0;) {
        x[i] = index % moduli_[i];
        index /= moduli_[i];
    }
    return x;
}

Elem AbelianPGroup::reduce(const std::vector<long long>& coords) const {
    if (coords.size() != rank()) throw shape_error("element: wrong coordinate count");
    Elem x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        long long m = (long long)moduli_[i];
        x[i] = (unsigned long)((coords[i] % m + m) % m);
    }
    return x;
}

Elem AbelianPGroup::add(const Elem& x, const Elem& y) const {
    Elem z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = (x[i] + y[i]) % moduli_[i];
    return z;
}

Elem AbelianPGroup::sub(const Elem& x, const Elem& y) const {
    Elem z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = (x[i] + moduli_[i] - y[i]) % moduli_[i];
    return z;
}

Elem AbelianPGroup::scale(unsigned long long c, const Elem& x) const {
    Elem z(rank());
    for (std::size_t i = 0; i < rank(); ++i)
        z[i] = (unsigned long)((c % moduli_[i]) * (x[i] % moduli_[i]) % moduli_[i]);
    return z;
}

ActionMatrix::ActionMatrix(const AbelianPGroup& g, const IntMatrix& m) {
    std::size_t r = g.rank();
    if (m.rows() != r || m.cols() != r) throw shape_error("action: matrix must be rank x rank");
    // Well-definedness: entry (i, j) must vanish mod p^(e_i - e_j) when e_i > e_j.
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (g.exponents()[i] > g.exponents()[j]) {
                Int need = Int((long)g.modulus(i)) / Int((long)g.modulus(j));
                if (m(i, j) % need != 0)
                    throw validation_error("action: entry violates divisibility, not a homomorphism");
            }
    a_.assign(r, std::vector<unsigned long>(r));
    for (std::size_t i = 0; i < r; ++i) {
        Int mod((long)g.modulus(i));
        for (std::size_t j = 0; j < r; ++j) {
            Int v = m(i, j) % mod;
            if (v < 0) v += mod;
            a_[i][j] = v.get_ui();
        }
    }
    // Exhaustive bijectivity check over the whole group.
    std::vector<char> seen(g.order(), 0);
    for (unsigned long idx = 0; idx < g.order(); ++idx) {
        unsigned long image = g.index_of(apply(g, g.element_at(idx)));
        if (seen[image]) throw validation_error("action: matrix is not bijective");
        seen[image] = 1;
    }
}

ActionMatrix ActionMatrix::identity_on(const AbelianPGroup& g) {
    std::vector<std::vector<unsigned long>> a(g.rank(), std::vector<unsigned long>(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) a[i][i] = 1;
    return ActionMatrix(std::move(a));
}

bool ActionMatrix::is_identity() const {
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = 0; j < a_.size(); ++j)
            if (a_[i][j] != (i == j ? 1u : 0u)) return false;
    return true;
}

Elem ActionMatrix::apply(const AbelianPGroup& g, const Elem& x) const {
    std::size_t r = a_.size();
    if (x.size() != r) throw shape_error("action: element has wrong coordinate count");
    Elem y(r);
    for (std::size_t i = 0; i < r; ++i) {
        unsigned long long acc = 0;
        unsigned long long m = g.modulus(i);
        for (std::size_t j = 0; j < r; ++j) acc += a_[i][j] % m * (x[j] % m) % m;
        y[i] = (unsigned long)(acc % m);
    }
    return y;
}

IntMatrix ActionMatrix::to_int() const {
    IntMatrix m(a_.size(), a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = 0; j < a_.size(); ++j) m(i, j) = Int((unsigned long)a_[i][j]);
    return m;
}

ActionMatrix compose(const AbelianPGroup& g, const ActionMatrix& first,
                     const ActionMatrix& second) {
    std::size_t r = g.rank();
    std::vector<std::vector<unsigned long>> c(r, std::vector<unsigned long>(r));
    for (std::size_t i = 0; i < r; ++i) {
        unsigned long long m = g.modulus(i);
        for (std::size_t j = 0; j < r; ++j) {
            unsigned long long acc = 0;
            for (std::size_t k = 0; k < r; ++k)
                acc += (unsigned long long)first.a_[i][k] % m * (second.a_[k][j] % m) % m;
            c[i][j] = (unsigned long)(acc % m);
        }
    }
    return ActionMatrix(std::move(c));
}

ActionGroup::ActionGroup(AbelianPGroup group, const std::vector<IntMatrix>& generators)
    : group_(std::move(group)) {
    generators_.reserve(generators.size());
    for (const IntMatrix& m : generators) generators_.emplace_back(group_, m);

    std::map<std::vector<std::vector<unsigned long>>, std::size_t> seen;
    elements_.push_back(ActionMatrix::identity_on(group_));
    words_.push_back({});
    seen.emplace(elements_[0].entries(), 0);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
        for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
            ActionMatrix next = compose(group_, elements_[head], generators_[gi]);
            if (seen.count(next.entries())) continue;
            if (elements_.size() >= kClosureCap)
                throw resource_limit_error("action closure exceeds element cap");
            std::vector<int> word = words_[head];
            word.push_back((int)gi);
            seen.emplace(next.entries(), elements_.size());
            elements_.push_back(std::move(next));
            words_.push_back(std::move(word));
        }
    }
}

std::vector<Orbit> orbits(const ActionGroup& a) {
    const AbelianPGroup& g = a.group();
    // Permutation table per generator, built once.
    std::vector<std::vector<unsigned long>> perm(a.generators().size());
    for (std::size_t gi = 0; gi < a.generators().size(); ++gi) {
        perm[gi].resize(g.order());
        for (unsigned long idx = 0; idx < g.order(); ++idx)
            perm[gi][idx] = g.index_of(a.generators()[gi].apply(g, g.element_at(idx)));
    }
    std::vector<Orbit> result;
    std::vector<char> visited(g.order(), 0);
    for (unsigned long start = 0; start < g.order(); ++start) {
        if (visited[start]) continue;
        std::vector<unsigned long> members;
        members.push_back(start);
        visited[start] = 1;
        for (std::size_t head = 0; head < members.size(); ++head)
            for (std::size_t gi = 0; gi < perm.size(); ++gi) {
                unsigned long next = perm[gi][members[head]];
                if (!visited[next]) {
                    visited[next] = 1;
                    members.push_back(next);
                }
            }
        std::sort(members.begin(), members.end());
        Orbit orbit;
        orbit.representative = g.element_at(members.front());
        orbit.size = members.size();
        if (a.order() % orbit.size != 0)
            throw inconsistency_error("orbit size does not divide the action order");
        orbit.stabilizer_order = a.order() / orbit.size;
        orbit.members.reserve(members.size());
        for (unsigned long idx : members) orbit.members.push_back(g.element_at(idx));
        result.push_back(std::move(orbit));
    }
    return result;
}

std::vector<std::size_t> stabilizer(const ActionGroup& a, const Elem& u) {
    std::vector<std::size_t> fixers;
    for (std::size_t i = 0; i < a.elements().size(); ++i)
        if (fixes(a.group(), a.elements()[i], u)) fixers.push_back(i);
    return fixers;
}

Subgroup fixed_points(const AbelianPGroup& g, const std::vector<ActionMatrix>& by) {
    std::vector<Elem> members;
    for (unsigned long idx = 0; idx < g.order(); ++idx) {
        Elem x = g.element_at(idx);
        bool fixed = true;
        for (const ActionMatrix& a : by)
            if (!fixes(g, a, x)) {
                fixed = false;
                break;
            }
        if (fixed) members.push_back(x);
    }
    return subgroup_from_gens(g, members);
}

Subgroup fixed_points(const ActionGroup& a) {
    return fixed_points(a.group(), a.generators());
}

Subgroup commutator_part(const AbelianPGroup& g, const std::vector<ActionMatrix>& by) {
    std::vector<Elem> gens;
    for (const ActionMatrix& a : by)
        for (std::size_t j = 0; j < g.rank(); ++j) {
            Elem basis = g.zero();
            basis[j] = 1;
            gens.push_back(g.sub(a.apply(g, basis), basis));
        }
    return subgroup_from_gens(g, gens);
}

Subgroup commutator_part(const ActionGroup& a) {
    return commutator_part(a.group(), a.generators());
}

SplitCheck coprime_split_check(const ActionGroup& a) {
    if (!a.coprime_to_p())
        throw validation_error("split check requires an action order coprime to p");
    const AbelianPGroup& g = a.group();
    Subgroup fixed = fixed_points(a);
    Subgroup comm = commutator_part(a);
    SplitCheck check;
    check.fixed_order = fixed.order();
    check.commutator_order = comm.order();
    for (const Elem& x : fixed.members)
        if (std::binary_search(comm.members.begin(), comm.members.end(), x))
            ++check.intersection_order;
    check.holds = check.intersection_order == 1 &&
                  check.fixed_order * check.commutator_order == g.order();
    return check;
}

bool has_free_action(const ActionGroup& a) {
    const AbelianPGroup& g = a.group();
    for (const ActionMatrix& m : a.elements()) {
        if (m.is_identity()) continue;
        for (unsigned long idx = 1; idx < g.order(); ++idx)
            if (fixes(g, m, g.element_at(idx))) return false;
    }
    return true;
}

bool acts_freely_on(const AbelianPGroup& g, const std::vector<ActionMatrix>& closure,
                    const std::vector<Elem>& subgroup) {
    for (const ActionMatrix& m : closure) {
        if (m.is_identity()) continue;
        for (const Elem& x : subgroup) {
            if (x == g.zero()) continue;
            if (fixes(g, m, x)) return false;
        }
    }
    return true;
}

std::optional<Elem> regular_orbit_search(const ActionGroup& a) {
    const AbelianPGroup& g = a.group();
    for (unsigned long idx = 0; idx < g.order(); ++idx) {
        Elem x = g.element_at(idx);
        bool regular = true;
        for (const ActionMatrix& m : a.elements()) {
            if (m.is_identity()) continue;
            if (fixes(g, m, x)) {
                regular = false;
                break;
            }
        }
        if (regular) return x;
    }
    return std::nullopt;
}

Subgroup omega(const AbelianPGroup& g, unsigned i) {
    std::vector<Elem> gens;
    for (std::size_t j = 0; j < g.rank(); ++j) {
        Elem basis = g.zero();
        unsigned e = g.exponents()[j];
        basis[j] = pow_ul((unsigned long)g.p(), e > i ? e - i : 0);
        if (basis[j] % g.modulus(j) != 0) gens.push_back(basis);
    }
    return subgroup_from_gens(g, gens);
}

Subgroup frattini(const AbelianPGroup& g) {
    std::vector<Elem> gens;
    for (std::size_t j = 0; j < g.rank(); ++j)
        if (g.exponents()[j] >= 2) {
            Elem basis = g.zero();
            basis[j] = (unsigned long)g.p();
            gens.push_back(basis);
        }
    return subgroup_from_gens(g, gens);
}

bool regorb_hypothesis(const AbelianPGroup& g) {
    for (unsigned e : g.exponents())
        if (e < 2) return false;
    return true;
}

InvariantTransversal invariant_transversal(const ActionGroup& a) {
    const AbelianPGroup& g = a.group();
    for (unsigned e : g.exponents())
        if (e != 2) throw validation_error("transversal requires a homocyclic group of exponent p^2");
    if (!a.coprime_to_p())
        throw validation_error("transversal requires an action order coprime to p");

    std::size_t r = g.rank();
    unsigned long p = (unsigned long)g.p();
    unsigned long psq = p * p;
    unsigned long cosets = pow_ul(p, (unsigned)r);

    auto key_rank = [&](const Elem& key) {
        unsigned long idx = 0;
        for (std::size_t i = 0; i < r; ++i) idx = idx * p + key[i];
        return idx;
    };
    auto key_of = [&](const Elem& x) {
        Elem key(r);
        for (std::size_t i = 0; i < r; ++i) key[i] = x[i] % p;
        return key;
    };
    auto key_at = [&](unsigned long idx) {
        Elem key(r);
        for (std::size_t i = r; i-- > 0;) {
            key[i] = idx % p;
            idx /= p;
        }
        return key;
    };

    std::vector<Elem> reps(cosets);
    std::vector<char> have(cosets, 0);
    for (unsigned long start = 0; start < cosets; ++start) {
        if (have[start]) continue;
        Elem base_key = key_at(start);
        // Coset stabilizer: closure elements fixing the key mod p.
        std::vector<const ActionMatrix*> coset_stab;
        for (const ActionMatrix& m : a.elements())
            if (key_of(m.apply(g, base_key)) == base_key) coset_stab.push_back(&m);
        // Average the canonical lift over the coset stabilizer.
        std::vector<unsigned long long> acc(r, 0);
        for (const ActionMatrix* m : coset_stab) {
            Elem y = m->apply(g, base_key);
            for (std::size_t i = 0; i < r; ++i) acc[i] += y[i];
        }
        unsigned long inv = inverse_mod((unsigned long)coset_stab.size() % psq, psq);
        Elem rep(r);
        for (std::size_t i = 0; i < r; ++i) rep[i] = (unsigned long)(acc[i] % psq * inv % psq);
        bool invariant = true;
        for (const ActionMatrix* m : coset_stab)
            if (!fixes(g, *m, rep)) {
                invariant = false;
                break;
            }
        if (!invariant) {
            // Fallback: scan the whole coset for a stabilizer-fixed element.
            Subgroup om = omega(g, 1);
            invariant = false;
            for (const Elem& w : om.members) {
                Elem candidate = g.add(base_key, w);
                bool ok = true;
                for (const ActionMatrix* m : coset_stab)
                    if (!fixes(g, *m, candidate)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    rep = candidate;
                    invariant = true;
                    break;
                }
            }
            if (!invariant) throw inconsistency_error("coset has no stabilizer-fixed representative");
        }
        // Propagate along the orbit of the coset; well defined because the
        // chosen representative is fixed by the coset stabilizer.
        reps[start] = rep;
        have[start] = 1;
        std::vector<unsigned long> frontier = {start};
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            Elem from_rep = reps[frontier[head]];
            for (const ActionMatrix& m : a.generators()) {
                Elem next_rep = m.apply(g, from_rep);
                unsigned long next_key = key_rank(key_of(next_rep));
                if (have[next_key]) {
                    if (reps[next_key] != next_rep)
                        throw inconsistency_error("coset representative propagation conflict");
                    continue;
                }
                reps[next_key] = next_rep;
                have[next_key] = 1;
                frontier.push_back(next_key);
            }
        }
    }

    InvariantTransversal result;
    result.coset_reps = reps;
    result.images.resize(g.order());
    for (unsigned long idx = 0; idx < g.order(); ++idx) {
        Elem x = g.element_at(idx);
        const Elem& rep = reps[key_rank(key_of(x))];
        result.images[idx] = {g.scale(p, rep), g.sub(x, rep)};
    }

    // Exhaustive verification: the pair map is a bijection and commutes with
    // every generator acting diagonally.
    std::vector<unsigned long long> pair_keys;
    pair_keys.reserve(g.order());
    for (const auto& [w1, w2] : result.images)
        pair_keys.push_back((unsigned long long)g.index_of(w1) * g.order() + g.index_of(w2));
    std::sort(pair_keys.begin(), pair_keys.end());
    if (std::adjacent_find(pair_keys.begin(), pair_keys.end()) != pair_keys.end())
        throw inconsistency_error("transversal image map is not injective");
    for (const ActionMatrix& m : a.generators())
        for (unsigned long idx = 0; idx < g.order(); ++idx) {
            Elem x = g.element_at(idx);
            const auto& [w1, w2] = result.images[idx];
            const auto& moved = result.images[g.index_of(m.apply(g, x))];
            if (moved.first != m.apply(g, w1) || moved.second != m.apply(g, w2))
                throw inconsistency_error("transversal image map is not equivariant");
        }
    return result;
}

}  // namespace cartankit

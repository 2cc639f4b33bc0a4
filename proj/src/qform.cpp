#include "cartankit/qform.hpp"

#include <algorithm>
#include <map>

#include "cartankit/exactlin.hpp"

namespace cartankit {

namespace {

constexpr std::size_t kEnumDimCap = 12;
constexpr std::size_t kCongruenceDimCap = 9;
constexpr std::uint64_t kEnumNodeCap = 50'000'000;

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Int round_rat(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

bool first_nonzero_positive(const std::vector<Int>& x) {
    for (const Int& v : x) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;  // zero vector has no sign
}

}  // namespace

GramForm::GramForm(RatMatrix g) : g_(std::move(g)) {
    if (!g_.is_symmetric()) throw validation_error("gram matrix must be symmetric");
    const std::size_t n = g_.rows();
    pivots_.resize(n);
    coeffs_ = RatMatrix(n, n);
    RatMatrix a = g_;
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) <= 0) throw validation_error("gram matrix is not positive definite");
        pivots_[i] = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) coeffs_(i, j) = a(i, j) / pivots_[i];
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = i + 1; l < n; ++l)
                a(k, l) -= a(k, i) * a(i, l) / pivots_[i];
    }
}

GramForm GramForm::from_int(const IntMatrix& g) { return GramForm(RatMatrix::from_int(g)); }

Rat GramForm::evaluate(const std::vector<Int>& x) const {
    const std::size_t n = dim();
    if (x.size() != n) throw shape_error("vector length differs from form dimension");
    Rat acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += Rat(x[i]) * g_(i, j) * Rat(x[j]);
    return acc;
}

std::vector<ShellVector> enumerate_bounded(const GramForm& g, const Rat& bound) {
    const std::size_t n = g.dim();
    if (n > kEnumDimCap)
        throw resource_limit_error("enumeration limited to dimension 12");
    std::vector<ShellVector> out;
    if (n == 0 || bound < 0) return out;

    std::vector<Int> x(n);
    std::uint64_t nodes = 0;

    // Levels run from the last coordinate down; the inner offset at level i
    // only involves already assigned coordinates.
    auto descend = [&](auto&& self, std::size_t level, const Rat& remaining) -> void {
        if (++nodes > kEnumNodeCap)
            throw resource_limit_error("enumeration node cap exceeded");
        const std::size_t i = level - 1;
        Rat c = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[j] != 0) c += g.coeff(i, j) * Rat(x[j]);
        auto admissible = [&](const Int& t) {
            Rat s = Rat(t) + c;
            return g.pivot(i) * s * s <= remaining;
        };
        auto emit = [&](const Int& t) {
            x[i] = t;
            Rat s = Rat(t) + c;
            Rat rest = remaining - g.pivot(i) * s * s;
            if (i == 0) {
                bool zero = std::all_of(x.begin(), x.end(),
                                        [](const Int& v) { return v == 0; });
                if (!zero) out.push_back({x, bound - rest});
            } else {
                self(self, i, rest);
            }
            x[i] = 0;
        };
        // The admissible t form an interval centred at -c, so the nearest
        // integer to -c is admissible whenever the interval is nonempty.
        Int center = round_rat(-c);
        if (!admissible(center)) return;
        for (Int t = center; admissible(t); ++t) emit(t);
        for (Int t = center - 1; admissible(t); --t) emit(t);
    };
    descend(descend, n, bound);

    std::erase_if(out, [](const ShellVector& s) { return !first_nonzero_positive(s.coords); });
    std::sort(out.begin(), out.end(), [](const ShellVector& a, const ShellVector& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.coords < b.coords;
    });
    return out;
}

FormMinimum minimum(const GramForm& g) {
    if (g.dim() == 0) throw validation_error("minimum of an empty form is undefined");
    Rat start = g.matrix()(0, 0);
    for (std::size_t i = 1; i < g.dim(); ++i) start = std::min(start, g.matrix()(i, i));
    std::vector<ShellVector> shell = enumerate_bounded(g, start);
    FormMinimum out;
    out.value = shell.front().value;
    for (const ShellVector& s : shell) {
        if (s.value != out.value) break;
        out.vectors.push_back(s.coords);
    }
    return out;
}

std::vector<std::pair<Int, long>> theta_prefix(const GramForm& g, const Int& bound) {
    if (!g.is_integral()) throw validation_error("theta counts need an integral form");
    std::map<Int, long> counts;
    for (const ShellVector& s : enumerate_bounded(g, Rat(bound)))
        counts[s.value.get_num()] += 2;  // representative stands for x and -x
    return {counts.begin(), counts.end()};
}

namespace {

// Sorted candidate lists per required diagonal value, both signs included.
struct CongruenceSearch {
    const IntMatrix& g1;
    const IntMatrix& g2;
    std::map<Int, std::vector<std::vector<Int>>> by_value;
    std::vector<std::vector<Int>> rows;
    bool found = false;

    bool place(std::size_t i) {
        const std::size_t n = g2.rows();
        if (i == n) {
            found = true;
            return true;
        }
        auto it = by_value.find(g2(i, i));
        if (it == by_value.end()) return false;
        for (const auto& cand : it->second) {
            if (i == 0 && !first_nonzero_positive(cand)) continue;  // -s is a witness too
            bool ok = true;
            for (std::size_t r = 0; r < i && ok; ++r) {
                Int prod = dot(row_times_matrix(rows[r], g1), cand);
                if (prod != g2(r, i)) ok = false;
            }
            if (!ok) continue;
            rows.push_back(cand);
            if (place(i + 1)) return true;
            rows.pop_back();
        }
        return false;
    }
};

}  // namespace

CongruenceResult congruence(const IntMatrix& g1, const IntMatrix& g2) {
    if (!g1.is_symmetric() || !g2.is_symmetric())
        throw validation_error("congruence needs symmetric matrices");
    if (g1.rows() != g2.rows()) return {false, std::nullopt, "dimension"};
    const std::size_t n = g1.rows();
    if (n > kCongruenceDimCap)
        throw resource_limit_error("congruence search limited to dimension 9");

    GramForm f1 = GramForm::from_int(g1);
    GramForm f2 = GramForm::from_int(g2);

    if (det(g1) != det(g2)) return {false, std::nullopt, "determinant"};
    if (snf(g1).diagonal != snf(g2).diagonal)
        return {false, std::nullopt, "elementary divisors"};
    FormMinimum m1 = minimum(f1);
    FormMinimum m2 = minimum(f2);
    if (m1.value != m2.value) return {false, std::nullopt, "minimum"};

    Int t = g1(0, 0);
    for (std::size_t i = 0; i < n; ++i) {
        t = std::max(t, g1(i, i));
        t = std::max(t, g2(i, i));
    }
    if (theta_prefix(f1, t) != theta_prefix(f2, t))
        return {false, std::nullopt, "theta prefix"};

    CongruenceSearch search{g1, g2, {}, {}, false};
    for (const ShellVector& s : enumerate_bounded(f1, Rat(t))) {
        auto& bucket = search.by_value[s.value.get_num()];
        bucket.push_back(s.coords);
        std::vector<Int> neg(s.coords.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -s.coords[i];
        bucket.push_back(std::move(neg));
    }
    if (!search.place(0)) return {false, std::nullopt, "exhaustive search"};

    IntMatrix witness = IntMatrix::from_rows(search.rows);
    if (witness * g1 * witness.transposed() != g2)
        throw inconsistency_error("congruence witness failed the defining identity");
    return {true, witness, ""};
}

Rat weighted_bound(const RatMatrix& weight, const RatMatrix& target) {
    if (weight.rows() != target.rows() || weight.cols() != target.cols())
        throw shape_error("weight and target shapes differ");
    if (!target.is_symmetric()) throw validation_error("weighted bound needs a symmetric target");
    GramForm check(weight);  // proves symmetry and positive definiteness
    const std::size_t n = weight.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (weight(i, i).get_den() != 1)
            throw validation_error("weight diagonal must be integral");
        for (std::size_t j = 0; j < n; ++j) {
            Rat doubled = Rat(2) * weight(i, j);
            if (doubled.get_den() != 1)
                throw validation_error("doubled weight entries must be integral");
        }
    }
    Rat acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += weight(i, j) * target(i, j);
    return acc;
}

}  // namespace cartankit

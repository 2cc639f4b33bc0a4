#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cartankit/blockcalc.hpp"
#include "cartankit/embed.hpp"
#include "cartankit/errors.hpp"
#include "cartankit/exactlin.hpp"
#include "cartankit/json_io.hpp"
#include "cartankit/paction.hpp"
#include "cartankit/qform.hpp"
#include "cartankit/verify.hpp"

namespace {

using namespace cartankit;

struct GlobalFlags {
    bool json = false;
    bool seedless = false;  // accepted for interface stability; all searches are deterministic
    std::string budget_text = "10000000";
};

struct Budget {
    std::uint64_t nodes = 10'000'000;
    bool max = false;
};

Budget parse_budget(const std::string& text) {
    if (text == "max") return {std::numeric_limits<std::uint64_t>::max(), true};
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw validation_error("--budget expects a backtracking node count or the word max");
    try {
        return {std::stoull(text), false};
    } catch (const std::out_of_range&) {
        throw validation_error("--budget value does not fit in 64 bits");
    }
}

// Uniform report: JSON object on --json, plain lines otherwise.  The exit
// code is 1 exactly when some verdict failed.
struct Report {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<std::pair<std::string, bool>> verdicts;
    std::vector<std::string> lines;
};

int emit(const GlobalFlags& g, const Report& r, std::chrono::steady_clock::time_point start) {
    bool all_pass = true;
    for (const auto& [claim, ok] : r.verdicts) all_pass = all_pass && ok;
    long ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (g.json) {
        Json out = Json::object();
        out["command"] = r.command;
        out["inputs"] = r.inputs;
        out["results"] = r.results;
        Json verdicts = Json::array();
        for (const auto& [claim, ok] : r.verdicts)
            verdicts.push_back(Json{{"claim", claim}, {"pass", ok}});
        out["verdicts"] = verdicts;
        out["timing_ms"] = ms;
        std::cout << out.dump(1) << "\n";
    } else {
        for (const std::string& line : r.lines) std::cout << line << "\n";
        for (const auto& [claim, ok] : r.verdicts)
            std::cout << (ok ? "pass: " : "FAIL: ") << claim << "\n";
    }
    return all_pass ? 0 : 1;
}

std::string join_row(const std::vector<Int>& row) {
    std::string out;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += " ";
        out += row[j].get_str();
    }
    return out;
}

void matrix_lines(std::vector<std::string>& lines, const std::string& label, const IntMatrix& m) {
    lines.push_back(label + " (" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    "):");
    for (std::size_t i = 0; i < m.rows(); ++i) lines.push_back("  " + join_row(m.row(i)));
}

std::string elem_text(const Elem& x) {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(x[i]);
    }
    return out + ")";
}

IntMatrix load_int_matrix(const std::string& path) {
    return int_matrix_from_json(parse_json_file(path));
}

RatMatrix load_rat_matrix(const std::string& path) {
    return rat_matrix_from_json(parse_json_file(path));
}

// Action input: either a bare JSON list of generator matrices together with
// --group, or an object {"group": .., "generators": ..}; an explicit --group
// overrides the embedded one.
std::pair<AbelianPGroup, std::vector<IntMatrix>> load_action(const std::string& group_path,
                                                             const std::string& action_path) {
    Json aj = parse_json_file(action_path);
    if (aj.is_object()) {
        ActionSpec spec = action_spec_from_json(aj);
        if (!group_path.empty())
            return {group_from_json(parse_json_file(group_path)), spec.generators};
        return {spec.group, spec.generators};
    }
    if (group_path.empty())
        throw validation_error("--group is required when the action file is a bare matrix list");
    AbelianPGroup g = group_from_json(parse_json_file(group_path));
    if (!aj.is_array()) throw validation_error("action file must hold a list of matrices");
    std::vector<IntMatrix> gens;
    for (const Json& m : aj) gens.push_back(int_matrix_from_json(m));
    return {g, gens};
}

int cmd_exactlin_snf(const GlobalFlags& g, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    IntMatrix a = load_int_matrix(path);
    SmithForm f = snf(a);
    Report r;
    r.command = "exactlin snf";
    r.inputs["matrix"] = json_of(a);
    Json diagonal = Json::array();
    for (const Int& d : f.diagonal) diagonal.push_back(json_of(d));
    r.results["diagonal"] = diagonal;
    r.results["rank"] = (long)f.rank();
    r.results["left"] = json_of(f.left);
    r.results["right"] = json_of(f.right);
    r.lines.push_back("diagonal: " + join_row(f.diagonal));
    r.lines.push_back("rank: " + std::to_string(f.rank()));
    matrix_lines(r.lines, "left", f.left);
    matrix_lines(r.lines, "right", f.right);
    return emit(g, r, start);
}

int cmd_exactlin_kernel(const GlobalFlags& g, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    IntMatrix a = load_int_matrix(path);
    IntMatrix k = kernel_basis(a);
    Report r;
    r.command = "exactlin kernel";
    r.inputs["matrix"] = json_of(a);
    r.results["kernel"] = json_of(k);
    r.results["rank"] = (long)k.rows();
    r.lines.push_back("kernel rank: " + std::to_string(k.rows()));
    matrix_lines(r.lines, "basis", k);
    return emit(g, r, start);
}

int cmd_exactlin_det(const GlobalFlags& g, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    IntMatrix a = load_int_matrix(path);
    Int d = det(a);
    Report r;
    r.command = "exactlin det";
    r.inputs["matrix"] = json_of(a);
    r.results["det"] = json_of(d);
    r.lines.push_back("det: " + d.get_str());
    return emit(g, r, start);
}

int cmd_qform_min(const GlobalFlags& g, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    RatMatrix m = load_rat_matrix(path);
    FormMinimum fm = minimum(GramForm(m));
    Report r;
    r.command = "qform min";
    r.inputs["form"] = json_of(m);
    r.results["minimum"] = json_of(fm.value);
    Json vectors = Json::array();
    for (const std::vector<Int>& v : fm.vectors) {
        Json row = Json::array();
        for (const Int& e : v) row.push_back(json_of(e));
        vectors.push_back(row);
    }
    r.results["vectors"] = vectors;
    r.lines.push_back("minimum: " + fm.value.get_str());
    r.lines.push_back("attained by " + std::to_string(fm.vectors.size()) + " vector pair(s):");
    for (const std::vector<Int>& v : fm.vectors) r.lines.push_back("  " + join_row(v));
    return emit(g, r, start);
}

int cmd_qform_congruent(const GlobalFlags& g, const std::string& path, const std::string& other) {
    auto start = std::chrono::steady_clock::now();
    IntMatrix a = load_rat_matrix(path).to_int();
    IntMatrix b = load_rat_matrix(other).to_int();
    CongruenceResult res = congruence(a, b);
    Report r;
    r.command = "qform congruent";
    r.inputs["form"] = json_of(a);
    r.inputs["other"] = json_of(b);
    r.results["congruent"] = res.congruent;
    r.results["evidence"] = res.evidence;
    r.results["witness"] = res.witness ? json_of(*res.witness) : Json();
    r.lines.push_back(std::string("congruent: ") + (res.congruent ? "yes" : "no"));
    r.lines.push_back("evidence: " + res.evidence);
    if (res.witness) matrix_lines(r.lines, "witness", *res.witness);
    r.verdicts.emplace_back("the two forms are integrally congruent", res.congruent);
    return emit(g, r, start);
}

int cmd_qform_bound(const GlobalFlags& g, const std::string& weight_path,
                    const std::string& form_path) {
    auto start = std::chrono::steady_clock::now();
    RatMatrix w = load_rat_matrix(weight_path);
    RatMatrix c = load_rat_matrix(form_path);
    Rat value = weighted_bound(w, c);
    Report r;
    r.command = "qform bound";
    r.inputs["weight"] = json_of(w);
    r.inputs["form"] = json_of(c);
    r.results["bound"] = json_of(value);
    r.lines.push_back("bound: " + value.get_str());
    return emit(g, r, start);
}

int cmd_qform_theta(const GlobalFlags& g, const std::string& path, long bound) {
    auto start = std::chrono::steady_clock::now();
    RatMatrix m = load_rat_matrix(path);
    std::vector<std::pair<Int, long>> coefficients = theta_prefix(GramForm(m), Int(bound));
    Report r;
    r.command = "qform theta";
    r.inputs["form"] = json_of(m);
    r.inputs["bound"] = bound;
    Json theta = Json::array();
    for (const auto& [value, count] : coefficients)
        theta.push_back(Json{{"value", json_of(value)}, {"count", count}});
    r.results["theta"] = theta;
    for (const auto& [value, count] : coefficients)
        r.lines.push_back("value " + value.get_str() + ": " + std::to_string(count));
    if (coefficients.empty()) r.lines.push_back("no values attained up to the bound");
    return emit(g, r, start);
}

int cmd_embed(const GlobalFlags& g, const std::string& target_path, long rows, bool exact_rows) {
    auto start = std::chrono::steady_clock::now();
    Budget budget = parse_budget(g.budget_text);
    IntMatrix target = load_int_matrix(target_path);
    EmbedOptions opts;
    if (rows >= 0) opts.row_count = (std::size_t)rows;
    opts.exact_rows = exact_rows;
    opts.node_budget = budget.nodes;
    std::uint64_t nodes = 0;
    opts.nodes_used = &nodes;
    std::vector<Embedding> embeddings = orthogonal_embeddings(target, opts);
    Report r;
    r.command = "embed";
    r.inputs["target"] = json_of(target);
    if (rows >= 0) r.inputs["rows"] = rows;
    r.inputs["exact_rows"] = exact_rows;
    r.results["classes"] = (long)embeddings.size();
    Json list = Json::array();
    for (const Embedding& e : embeddings) list.push_back(json_of(e.matrix));
    r.results["embeddings"] = list;
    r.results["nodes"] = (std::uint64_t)nodes;
    r.lines.push_back("classes: " + std::to_string(embeddings.size()));
    for (std::size_t i = 0; i < embeddings.size(); ++i)
        matrix_lines(r.lines, "class " + std::to_string(i), embeddings[i].matrix);
    return emit(g, r, start);
}

int cmd_paction_orbits(const GlobalFlags& g, const std::string& group_path,
                       const std::string& action_path) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    ActionGroup a(grp, gens);
    std::vector<Orbit> os = orbits(a);
    Report r;
    r.command = "paction orbits";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    r.results["action_order"] = a.order();
    Json list = Json::array();
    for (const Orbit& o : os)
        list.push_back(Json{{"representative", json_of(o.representative)},
                            {"size", o.size},
                            {"stabilizer_order", o.stabilizer_order}});
    r.results["orbits"] = list;
    r.lines.push_back("action order: " + std::to_string(a.order()));
    r.lines.push_back("orbits: " + std::to_string(os.size()));
    for (const Orbit& o : os)
        r.lines.push_back("  rep " + elem_text(o.representative) + " size " +
                          std::to_string(o.size) + " stabilizer " +
                          std::to_string(o.stabilizer_order));
    return emit(g, r, start);
}

int cmd_paction_free(const GlobalFlags& g, const std::string& group_path,
                     const std::string& action_path) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    ActionGroup a(grp, gens);
    bool free = has_free_action(a);
    Report r;
    r.command = "paction free";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    r.results["action_order"] = a.order();
    r.results["free"] = free;
    r.lines.push_back("action order: " + std::to_string(a.order()));
    r.verdicts.emplace_back("the action is free away from zero", free);
    return emit(g, r, start);
}

int cmd_paction_regular(const GlobalFlags& g, const std::string& group_path,
                        const std::string& action_path) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    ActionGroup a(grp, gens);
    std::optional<Elem> reg = regular_orbit_search(a);
    Report r;
    r.command = "paction regular";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    r.results["action_order"] = a.order();
    r.results["element"] = reg ? json_of(*reg) : Json();
    if (reg) r.lines.push_back("regular element: " + elem_text(*reg));
    r.verdicts.emplace_back("some orbit has trivial stabilizer", reg.has_value());
    return emit(g, r, start);
}

int cmd_paction_transversal(const GlobalFlags& g, const std::string& group_path,
                            const std::string& action_path) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    ActionGroup a(grp, gens);
    InvariantTransversal t = invariant_transversal(a);
    Report r;
    r.command = "paction transversal";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    Json reps = Json::array();
    for (const Elem& e : t.coset_reps) reps.push_back(json_of(e));
    r.results["coset_reps"] = reps;
    Json images = Json::array();
    for (const auto& [first, second] : t.images)
        images.push_back(Json{{"first", json_of(first)}, {"second", json_of(second)}});
    r.results["images"] = images;
    r.lines.push_back("coset representatives: " + std::to_string(t.coset_reps.size()));
    r.lines.push_back("image pairs: " + std::to_string(t.images.size()) +
                      " (bijection verified exhaustively)");
    return emit(g, r, start);
}

int cmd_paction_split(const GlobalFlags& g, const std::string& group_path,
                      const std::string& action_path) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    ActionGroup a(grp, gens);
    SplitCheck s = coprime_split_check(a);
    Report r;
    r.command = "paction split";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    r.results["fixed_order"] = s.fixed_order;
    r.results["commutator_order"] = s.commutator_order;
    r.results["intersection_order"] = s.intersection_order;
    r.results["holds"] = s.holds;
    r.lines.push_back("fixed points: " + std::to_string(s.fixed_order));
    r.lines.push_back("commutator part: " + std::to_string(s.commutator_order));
    r.lines.push_back("intersection: " + std::to_string(s.intersection_order));
    r.verdicts.emplace_back("fixed points and commutator part split the group", s.holds);
    return emit(g, r, start);
}

ScenarioSpec load_scenario(const std::string& path) {
    return scenario_spec_from_json(parse_json_file(path));
}

int cmd_block_inventory(const GlobalFlags& g, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    ScenarioSpec spec = load_scenario(path);
    BlockScenario s = subsection_inventory(spec.defect, spec.generators, spec.rule);
    Report r;
    r.command = "block inventory";
    r.inputs["scenario"] = parse_json_file(path);
    r.results["scenario"] = json_of(s);
    for (const SubsectionDatum& d : s.subsections) {
        std::string line = "rep " + elem_text(d.rep) + ": orbit " + std::to_string(d.orbit_size) +
                           ", centralizer " + std::to_string(d.centralizer_order);
        if (d.l_value) line += ", l " + std::to_string(*d.l_value);
        if (d.cartan)
            line += ", cartan " + std::to_string(d.cartan->rows()) + "x" +
                    std::to_string(d.cartan->cols());
        r.lines.push_back(line);
    }
    for (const std::string& a : s.assumptions) r.lines.push_back("assumption: " + a);
    return emit(g, r, start);
}

int cmd_block_k(const GlobalFlags& g, const std::string& path) {
    auto start = std::chrono::steady_clock::now();
    ScenarioSpec spec = load_scenario(path);
    BlockScenario s = subsection_inventory(spec.defect, spec.generators, spec.rule);
    Int k = k_from_subsections(s);
    Report r;
    r.command = "block k";
    r.inputs["scenario"] = parse_json_file(path);
    r.results["k"] = json_of(k);
    r.lines.push_back("k: " + k.get_str());
    return emit(g, r, start);
}

int cmd_block_enumerate(const GlobalFlags& g, const std::string& path, bool no_dedupe) {
    auto start = std::chrono::steady_clock::now();
    Budget budget = parse_budget(g.budget_text);
    ScenarioSpec spec = load_scenario(path);
    BlockScenario s = subsection_inventory(spec.defect, spec.generators, spec.rule);
    EnumerateOptions opts;
    opts.dedupe = !no_dedupe;
    opts.k = spec.k_bar;
    opts.budget = budget.nodes;
    std::uint64_t nodes = 0;
    opts.nodes_used = &nodes;
    std::vector<DecompositionSet> sets = decomposition_enumerate(s, opts);
    Report r;
    r.command = "block enumerate";
    r.inputs["scenario"] = parse_json_file(path);
    r.inputs["dedupe"] = !no_dedupe;
    r.results["classes"] = (long)sets.size();
    Json list = Json::array();
    for (const DecompositionSet& d : sets) list.push_back(json_of(d));
    r.results["sets"] = list;
    r.results["nodes"] = (std::uint64_t)nodes;
    r.lines.push_back("classes: " + std::to_string(sets.size()));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        r.lines.push_back("class " + std::to_string(i) + ": k " + std::to_string(sets[i].k) +
                          ", multiplicity " + std::to_string(sets[i].multiplicity));
        matrix_lines(r.lines, "  candidate cartan", sets[i].candidate_cartan);
    }
    return emit(g, r, start);
}

int cmd_block_kbcheck(const GlobalFlags& g, const std::string& cartan_path, long order, long l) {
    auto start = std::chrono::steady_clock::now();
    IntMatrix cartan = load_int_matrix(cartan_path);
    KbCheck res = kb_check_min(cartan, Int(order), l);
    Report r;
    r.command = "block kbcheck";
    r.inputs["cartan"] = json_of(cartan);
    r.inputs["order"] = order;
    r.inputs["l"] = l;
    r.results["minimum"] = json_of(res.minimum_value);
    r.results["holds"] = res.holds;
    r.lines.push_back("minimum of the scaled inverse form: " + res.minimum_value.get_str());
    r.verdicts.emplace_back("minimum is at least l", res.holds);
    return emit(g, r, start);
}

int cmd_block_goodelem(const GlobalFlags& g, const std::string& group_path,
                       const std::string& action_path, unsigned long threshold) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    std::optional<GoodElement> found = find_good_element(grp, gens, threshold);
    Report r;
    r.command = "block goodelem";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    r.inputs["threshold"] = threshold;
    if (found) {
        r.results["element"] = json_of(found->element);
        r.results["commutator_order"] = found->commutator_order;
        r.results["centralizer_order"] = found->centralizer_order;
        r.results["centralizer_free"] = found->centralizer_free;
        r.lines.push_back("element: " + elem_text(found->element));
        r.lines.push_back("commutator order: " + std::to_string(found->commutator_order));
        r.lines.push_back("centralizer order: " + std::to_string(found->centralizer_order));
        r.lines.push_back(std::string("centralizer acts freely: ") +
                          (found->centralizer_free ? "yes" : "no"));
    } else {
        r.results["element"] = Json();
    }
    r.verdicts.emplace_back("an element with a small commutator part exists", found.has_value());
    return emit(g, r, start);
}

int cmd_block_mainchk(const GlobalFlags& g, const std::string& group_path,
                      const std::string& action_path) {
    auto start = std::chrono::steady_clock::now();
    auto [grp, gens] = load_action(group_path, action_path);
    ActionGroup a(grp, gens);
    MainCheck res = theorem_main_check(a);
    Report r;
    r.command = "block mainchk";
    r.inputs["group"] = json_of(grp);
    r.inputs["generators"] = (long)gens.size();
    r.results["generator_dets"] = res.generator_dets;
    r.results["sl_members"] = res.sl_members;
    r.results["free"] = res.free;
    std::string dets;
    for (std::size_t i = 0; i < res.generator_dets.size(); ++i) {
        if (i) dets += " ";
        dets += std::to_string(res.generator_dets[i]);
    }
    r.lines.push_back("socle determinants mod p: " + dets);
    r.verdicts.emplace_back("every generator has socle determinant one", res.sl_members);
    r.verdicts.emplace_back("the action is free away from zero", res.free);
    return emit(g, r, start);
}

int cmd_verify(const GlobalFlags& g) {
    auto start = std::chrono::steady_clock::now();
    Budget budget = parse_budget(g.budget_text);
    VerifyOptions opts;
    opts.budget = budget.nodes;
    opts.extended = budget.max;
    std::vector<CheckResult> checks = run_verification(opts);
    Report r;
    r.command = "verify";
    r.inputs["budget"] = budget.max ? Json("max") : Json(budget.nodes);
    Json list = Json::array();
    int passed = 0, failed = 0, skipped = 0;
    for (const CheckResult& c : checks) {
        list.push_back(Json{{"number", c.number},
                            {"id", c.id},
                            {"status", to_string(c.status)},
                            {"detail", c.detail},
                            {"ms", (long)(c.seconds * 1000)}});
        r.lines.push_back(format_check_line(c));
        if (c.status == CheckStatus::pass) ++passed;
        if (c.status == CheckStatus::fail) ++failed;
        if (c.status == CheckStatus::skip) ++skipped;
        r.verdicts.emplace_back("check " + std::to_string(c.number) + " " + c.id,
                                c.status != CheckStatus::fail);
    }
    r.results["checks"] = list;
    r.results["passed"] = passed;
    r.results["failed"] = failed;
    r.results["skipped"] = skipped;
    r.lines.push_back(std::to_string(passed) + " passed, " + std::to_string(failed) +
                      " failed, " + std::to_string(skipped) + " skipped");
    if (!g.json) {
        for (const std::string& line : r.lines) std::cout << line << "\n";
        return failed ? 1 : 0;
    }
    r.verdicts.clear();  // per-check status already carried in results
    int code = emit(g, r, start);
    return failed ? 1 : code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic toolkit for Cartan matrix and block invariant checks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_flag("--json", g.json, "emit a machine readable JSON report");
    app.add_option("--budget", g.budget_text,
                   "backtracking node allowance, or the word max")
        ->capture_default_str();
    app.add_flag("--seedless", g.seedless,
                 "disable randomized search paths (all searches are already deterministic)");

    std::function<int()> action;
    auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    std::string matrix_path, form_path, other_path, weight_path, target_path;
    std::string group_path, action_path, scenario_path, cartan_path;
    long theta_bound = 0, embed_rows = -1, kb_order = 0, kb_l = 0;
    unsigned long threshold = 0;
    bool no_zero_rows = false, no_dedupe = false;

    CLI::App* exactlin = sub(&app, "exactlin", "integer matrix normal forms");
    exactlin->require_subcommand(1);
    CLI::App* snf_cmd = sub(exactlin, "snf", "diagonal form with unimodular transforms");
    snf_cmd->add_option("--matrix", matrix_path, "JSON matrix file")->required();
    snf_cmd->callback([&] { action = [&] { return cmd_exactlin_snf(g, matrix_path); }; });
    CLI::App* kernel_cmd = sub(exactlin, "kernel", "saturated left kernel basis");
    kernel_cmd->add_option("--matrix", matrix_path, "JSON matrix file")->required();
    kernel_cmd->callback([&] { action = [&] { return cmd_exactlin_kernel(g, matrix_path); }; });
    CLI::App* det_cmd = sub(exactlin, "det", "exact determinant");
    det_cmd->add_option("--matrix", matrix_path, "JSON matrix file")->required();
    det_cmd->callback([&] { action = [&] { return cmd_exactlin_det(g, matrix_path); }; });

    CLI::App* qform = sub(&app, "qform", "positive definite quadratic form queries");
    qform->require_subcommand(1);
    CLI::App* min_cmd = sub(qform, "min", "minimum over nonzero integer vectors");
    min_cmd->add_option("--form", form_path, "JSON symmetric matrix file")->required();
    min_cmd->callback([&] { action = [&] { return cmd_qform_min(g, form_path); }; });
    CLI::App* congruent_cmd = sub(qform, "congruent", "integral congruence test");
    congruent_cmd->add_option("--form", form_path, "JSON symmetric matrix file")->required();
    congruent_cmd->add_option("--other", other_path, "JSON symmetric matrix file")->required();
    congruent_cmd->callback(
        [&] { action = [&] { return cmd_qform_congruent(g, form_path, other_path); }; });
    CLI::App* bound_cmd = sub(qform, "bound", "entrywise weighted bound");
    bound_cmd->add_option("--weight", weight_path, "JSON weight matrix file")->required();
    bound_cmd->add_option("--form", form_path, "JSON symmetric matrix file")->required();
    bound_cmd->callback(
        [&] { action = [&] { return cmd_qform_bound(g, weight_path, form_path); }; });
    CLI::App* theta_cmd = sub(qform, "theta", "representation counts up to a bound");
    theta_cmd->add_option("--form", form_path, "JSON symmetric matrix file")->required();
    theta_cmd->add_option("--bound", theta_bound, "largest value to report")->required();
    theta_cmd->callback(
        [&] { action = [&] { return cmd_qform_theta(g, form_path, theta_bound); }; });

    CLI::App* embed_cmd = sub(&app, "embed", "factorizations target = q^T q up to equivalence");
    embed_cmd->add_option("--target", target_path, "JSON symmetric matrix file")->required();
    embed_cmd->add_option("--rows", embed_rows, "row budget for q");
    embed_cmd->add_flag("--no-zero-rows", no_zero_rows, "force exactly the given number of rows");
    embed_cmd->callback(
        [&] { action = [&] { return cmd_embed(g, target_path, embed_rows, no_zero_rows); }; });

    CLI::App* paction = sub(&app, "paction", "finite coprime actions on abelian p-groups");
    paction->require_subcommand(1);
    const char* group_help = "JSON group file {\"p\": .., \"exponents\": [..]}";
    const char* action_help = "JSON generator list, or object {\"group\", \"generators\"}";
    for (const char* name : {"orbits", "free", "regular", "transversal", "split"}) {
        CLI::App* c = sub(paction, name, "");
        c->add_option("--group", group_path, group_help);
        c->add_option("--action", action_path, action_help)->required();
    }
    paction->get_subcommand("orbits")->description("orbit decomposition with stabilizer orders");
    paction->get_subcommand("orbits")->callback(
        [&] { action = [&] { return cmd_paction_orbits(g, group_path, action_path); }; });
    paction->get_subcommand("free")->description("freeness away from zero");
    paction->get_subcommand("free")->callback(
        [&] { action = [&] { return cmd_paction_free(g, group_path, action_path); }; });
    paction->get_subcommand("regular")->description("first element with trivial stabilizer");
    paction->get_subcommand("regular")->callback(
        [&] { action = [&] { return cmd_paction_regular(g, group_path, action_path); }; });
    paction->get_subcommand("transversal")->description(
        "equivariant bijection onto the socle square");
    paction->get_subcommand("transversal")->callback(
        [&] { action = [&] { return cmd_paction_transversal(g, group_path, action_path); }; });
    paction->get_subcommand("split")->description("fixed times commutator splitting");
    paction->get_subcommand("split")->callback(
        [&] { action = [&] { return cmd_paction_split(g, group_path, action_path); }; });

    CLI::App* block = sub(&app, "block", "scenario evaluation for block invariants");
    block->require_subcommand(1);
    CLI::App* inventory_cmd = sub(block, "inventory", "per-orbit local data with l and Cartan fills");
    inventory_cmd->add_option("--scenario", scenario_path, "JSON scenario file")->required();
    inventory_cmd->callback([&] { action = [&] { return cmd_block_inventory(g, scenario_path); }; });
    CLI::App* k_cmd = sub(block, "k", "character count from the subsection inventory");
    k_cmd->add_option("--scenario", scenario_path, "JSON scenario file")->required();
    k_cmd->callback([&] { action = [&] { return cmd_block_k(g, scenario_path); }; });
    CLI::App* enumerate_cmd = sub(block, "enumerate", "joint decomposition candidates");
    enumerate_cmd->add_option("--scenario", scenario_path, "JSON scenario file")->required();
    enumerate_cmd->add_flag("--no-dedupe", no_dedupe, "report raw solutions, not congruence classes");
    enumerate_cmd->callback(
        [&] { action = [&] { return cmd_block_enumerate(g, scenario_path, no_dedupe); }; });
    CLI::App* kbcheck_cmd = sub(block, "kbcheck", "count bound from the scaled inverse form");
    kbcheck_cmd->add_option("--cartan", cartan_path, "JSON Cartan matrix file")->required();
    kbcheck_cmd->add_option("--order", kb_order, "defect group order")->required();
    kbcheck_cmd->add_option("--l", kb_l, "simple module count")->required();
    kbcheck_cmd->callback(
        [&] { action = [&] { return cmd_block_kbcheck(g, cartan_path, kb_order, kb_l); }; });
    CLI::App* goodelem_cmd = sub(block, "goodelem", "element with a small commutator part");
    goodelem_cmd->add_option("--group", group_path, group_help);
    goodelem_cmd->add_option("--action", action_path, action_help)->required();
    goodelem_cmd->add_option("--threshold", threshold, "largest admissible commutator order")
        ->required();
    goodelem_cmd->callback(
        [&] { action = [&] { return cmd_block_goodelem(g, group_path, action_path, threshold); }; });
    CLI::App* mainchk_cmd = sub(block, "mainchk", "socle determinants and freeness");
    mainchk_cmd->add_option("--group", group_path, group_help);
    mainchk_cmd->add_option("--action", action_path, action_help)->required();
    mainchk_cmd->callback(
        [&] { action = [&] { return cmd_block_mainchk(g, group_path, action_path); }; });

    CLI::App* verify_cmd = sub(&app, "verify", "run the bundled fixture verification suite");
    verify_cmd->callback([&] { action = [&] { return cmd_verify(g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const resource_limit_error& e) {
        std::cerr << "cartankit: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "cartankit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cartankit: " << e.what() << "\n";
        return 2;
    }
}

#include "cartankit/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>

#include "cartankit/errors.hpp"

namespace cartankit {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw validation_error("malformed input: " + what);
}

}  // namespace

Json json_of(const Int& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int((long)j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Int((unsigned long)j.get<std::uint64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            bad("not an integer literal: " + j.get<std::string>());
        }
    }
    bad("expected an integer entry");
}

Json json_of(const Rat& v) {
    if (v.get_den() == 1) return json_of(Rat(v).get_num());
    Json j;
    j["num"] = json_of(Rat(v).get_num());
    j["den"] = json_of(Rat(v).get_den());
    return j;
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from_json(j));
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den")) bad("a rational object needs \"num\" and \"den\"");
        Int den = int_from_json(j["den"]);
        if (den == 0) bad("zero denominator");
        Rat r(int_from_json(j["num"]), den);
        r.canonicalize();
        return r;
    }
    if (j.is_string()) {
        try {
            Rat r(j.get<std::string>());
            if (r.get_den() == 0) bad("zero denominator");
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            bad("not a rational literal: " + j.get<std::string>());
        }
    }
    bad("expected a rational entry");
}

Json json_of(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_of(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("a matrix is a nonempty array of rows");
    std::size_t rows = j.size();
    if (!j[0].is_array()) bad("a matrix row must be an array");
    std::size_t cols = j[0].size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(j[i][c]);
    }
    return m;
}

Json json_of(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_of(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix rat_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("a matrix is a nonempty array of rows");
    std::size_t rows = j.size();
    if (!j[0].is_array()) bad("a matrix row must be an array");
    std::size_t cols = j[0].size();
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rat_from_json(j[i][c]);
    }
    return m;
}

Json json_of(const Elem& x) {
    Json a = Json::array();
    for (unsigned long v : x) a.push_back(v);
    return a;
}

Elem elem_from_json(const Json& j) {
    if (!j.is_array()) bad("an element is an array of coordinates");
    Elem x;
    for (const Json& v : j) {
        if (!v.is_number_integer() && !v.is_number_unsigned()) bad("element coordinates are integers");
        long long c = v.get<long long>();
        if (c < 0) bad("element coordinates are nonnegative");
        x.push_back((unsigned long)c);
    }
    return x;
}

Json json_of(const AbelianPGroup& g) {
    Json j;
    j["p"] = g.p();
    j["exponents"] = g.exponents();
    return j;
}

AbelianPGroup group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("exponents"))
        bad("a group needs \"p\" and \"exponents\"");
    if (!j["p"].is_number_integer() && !j["p"].is_number_unsigned()) bad("p must be an integer");
    std::vector<unsigned> exps;
    if (!j["exponents"].is_array()) bad("exponents must be an array");
    for (const Json& e : j["exponents"]) {
        if (!e.is_number_integer() && !e.is_number_unsigned()) bad("exponents are integers");
        long long v = e.get<long long>();
        if (v < 1) bad("exponents are positive");
        exps.push_back((unsigned)v);
    }
    return AbelianPGroup(j["p"].get<long>(), std::move(exps));
}

ActionSpec action_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("generators"))
        bad("an action needs \"group\" and \"generators\"");
    ActionSpec spec{group_from_json(j["group"]), {}};
    if (!j["generators"].is_array()) bad("generators must be an array of matrices");
    for (const Json& m : j["generators"]) spec.generators.push_back(int_matrix_from_json(m));
    return spec;
}

ScenarioSpec scenario_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("defect")) bad("a scenario needs \"defect\"");
    ScenarioSpec spec{group_from_json(j["defect"]), {}, {}, {}, {}};
    const char* gen_key = j.contains("action")              ? "action"
                          : j.contains("action_generators") ? "action_generators"
                                                            : "generators";
    if (!j.contains(gen_key)) bad("a scenario needs \"action\"");
    if (!j[gen_key].is_array()) bad("the action must be an array of matrices");
    for (const Json& m : j[gen_key]) spec.generators.push_back(int_matrix_from_json(m));
    if (j.contains("subsections")) {
        if (!j["subsections"].is_array()) bad("subsections must be an array");
        for (const Json& o : j["subsections"]) {
            if (!o.is_object() || !o.contains("rep")) bad("a subsection needs \"rep\"");
            Elem rep = elem_from_json(o["rep"]);
            const char* l_key = o.contains("l") ? "l" : "l_value";
            if (o.contains(l_key) && !o[l_key].is_null()) {
                if (!o[l_key].is_number_integer() && !o[l_key].is_number_unsigned())
                    bad("a subsection l-value must be an integer");
                spec.rule.l_overrides[rep] = o[l_key].get<long>();
            }
            if (o.contains("cartan") && !o["cartan"].is_null())
                spec.rule.cartan_overrides[rep] = int_matrix_from_json(o["cartan"]);
        }
    }
    if (j.contains("k_bar")) {
        if (!j["k_bar"].is_number_integer() && !j["k_bar"].is_number_unsigned())
            bad("k_bar must be an integer");
        spec.k_bar = j["k_bar"].get<long>();
    }
    if (j.contains("assumptions")) {
        if (!j["assumptions"].is_array()) bad("assumptions must be an array of strings");
        for (const Json& a : j["assumptions"]) {
            if (!a.is_string()) bad("assumptions must be strings");
            spec.assumptions.push_back(a.get<std::string>());
        }
    }
    return spec;
}

Json json_of(const BlockScenario& s) {
    Json j;
    j["defect"] = json_of(s.defect);
    Json gens = Json::array();
    for (const ActionMatrix& m : s.action.generators()) gens.push_back(json_of(m.to_int()));
    j["action"] = std::move(gens);
    Json subs = Json::array();
    for (const SubsectionDatum& d : s.subsections) {
        Json o;
        o["rep"] = json_of(d.rep);
        o["orbit_size"] = d.orbit_size;
        o["u_order"] = d.u_order;
        o["centralizer_order"] = d.centralizer_order;
        o["commutator_order"] = d.commutator_order;
        o["z_part"] = d.z_part;
        o["centralizer_free"] = d.centralizer_free;
        o["l"] = d.l_value ? Json(*d.l_value) : Json(nullptr);
        o["cartan"] = d.cartan ? json_of(*d.cartan) : Json(nullptr);
        subs.push_back(std::move(o));
    }
    j["subsections"] = std::move(subs);
    j["assumptions"] = s.assumptions;
    return j;
}

Json json_of(const DecompositionSet& d) {
    Json j;
    j["k"] = d.k;
    Json blocks = Json::array();
    for (const IntMatrix& b : d.blocks) blocks.push_back(json_of(b));
    j["blocks"] = std::move(blocks);
    j["gamma_basis"] = json_of(d.gamma_basis);
    j["candidate_cartan"] = json_of(d.candidate_cartan);
    j["multiplicity"] = d.multiplicity;
    return j;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(e.what());  // carries byte position and line diagnostics
    }
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json_text(text);
}

std::string fixtures_dir() {
    if (const char* env = std::getenv("CARTANKIT_FIXTURES")) return env;
    return CARTANKIT_FIXTURES_DIR;
}

std::string fixture_path(const std::string& name) { return fixtures_dir() + "/" + name; }

}  // namespace cartankit

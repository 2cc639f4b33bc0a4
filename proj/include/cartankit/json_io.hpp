#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartankit/blockcalc.hpp"
#include "cartankit/int_matrix.hpp"
#include "cartankit/paction.hpp"
#include "cartankit/rat_matrix.hpp"

namespace cartankit {

using Json = nlohmann::ordered_json;

// Matrices serialize as arrays of rows; entries are JSON integers when they
// fit in 64 bits and decimal strings otherwise.  Rationals with denominator 1
// use the integer encoding, all others {"num": .., "den": ..}; the string
// form "num/den" is accepted on input.  Parsers throw validation_error on
// malformed input.

Json json_of(const Int& v);
Int int_from_json(const Json& j);
Json json_of(const Rat& v);
Rat rat_from_json(const Json& j);

Json json_of(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
Json json_of(const RatMatrix& m);
RatMatrix rat_matrix_from_json(const Json& j);

Json json_of(const Elem& x);
Elem elem_from_json(const Json& j);
Json json_of(const AbelianPGroup& g);
AbelianPGroup group_from_json(const Json& j);

// Action file: {"group": ..., "generators": [matrix, ...]}.
struct ActionSpec {
    AbelianPGroup group;
    std::vector<IntMatrix> generators;
};
ActionSpec action_spec_from_json(const Json& j);

// Scenario file: {"defect": group, "action": [matrix, ...],
// "subsections": [{"rep": [...], "l": n, "cartan": [[..]]}, ...],
// "k_bar": n, "assumptions": [...]}.  Subsection l-values and Cartan
// matrices act as overrides for subsection_inventory; unknown per-datum
// fields are ignored so a completed scenario round-trips.
struct ScenarioSpec {
    AbelianPGroup defect;
    std::vector<IntMatrix> generators;
    LRule rule;
    std::optional<long> k_bar;
    std::vector<std::string> assumptions;
};
ScenarioSpec scenario_spec_from_json(const Json& j);

Json json_of(const BlockScenario& s);
Json json_of(const DecompositionSet& d);

Json parse_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

// Bundled data directory: the CARTANKIT_FIXTURES environment variable when
// set, otherwise the build-time location of fixtures/.
std::string fixtures_dir();
std::string fixture_path(const std::string& name);

}  // namespace cartankit

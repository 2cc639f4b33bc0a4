#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

std::string scratch_path(const std::string& name) {
    return (fs::temp_directory_path() / ("cartankit_cli_" + name)).string();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string out_path = scratch_path("out.txt");
    std::string cmd = env + (env.empty() ? "" : " ") + CARTANKIT_CLI_PATH + " " + args + " > " +
                      out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    r.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(CARTANKIT_SOURCE_FIXTURES) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("exit codes follow the documented contract") {
    CHECK(run_cli("exactlin snf --matrix " + fixture("ones_plus_id_3.json")).exit_code == 0);
    CHECK(run_cli("qform congruent --form " + fixture("ones_plus_id_3.json") + " --other " +
                  fixture("ones_plus_id_3.json"))
              .exit_code == 0);
    // Same determinant and diagonal shape, different minimum: a true verdict failure.
    CHECK(run_cli("qform congruent --form " + fixture("ones_plus_id_3.json") + " --other " +
                  fixture("neg_ones_plus_4id_3.json"))
              .exit_code == 1);

    std::string bad = scratch_path("bad.json");
    std::ofstream(bad) << "{\"rows\": [1, 2";
    RunResult malformed = run_cli("exactlin det --matrix " + bad);
    CHECK(malformed.exit_code == 2);
    CHECK(contains(malformed.output, "malformed input"));
    CHECK(contains(malformed.output, "parse error"));

    CHECK(run_cli("exactlin det").exit_code == 2);        // missing required option
    CHECK(run_cli("nosuchcommand").exit_code == 2);       // unknown subcommand
    CHECK(run_cli("").exit_code == 2);                    // no subcommand at all
    CHECK(run_cli("verify --budget bogus").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    RunResult exhausted =
        run_cli("block enumerate --scenario " + fixture("scenario_16_9.json") + " --budget 1000");
    CHECK(exhausted.exit_code == 3);
    CHECK(contains(exhausted.output, "budget"));
}

TEST_CASE("json reports round trip byte for byte") {
    const std::string commands[] = {
        "exactlin snf --json --matrix " + fixture("ones_plus_id_3.json"),
        "qform min --json --form " + fixture("neg_ones_plus_4id_3.json"),
        "embed --json --target " + fixture("ones_plus_id_3.json"),
        "paction orbits --json --action " + fixture("field_128_action.json"),
        "block enumerate --json --scenario " + fixture("scenario_8_21.json"),
        "verify --json",
    };
    for (const std::string& cmd : commands) {
        CAPTURE(cmd);
        RunResult r = run_cli(cmd);
        REQUIRE(r.exit_code == 0);
        Json parsed = Json::parse(r.output);
        CHECK(parsed.dump(1) + "\n" == r.output);
        CHECK(parsed.contains("command"));
        CHECK(parsed.contains("results"));
        CHECK(parsed.contains("timing_ms"));
    }
}

TEST_CASE("report payloads carry the frozen values") {
    RunResult snf = run_cli("exactlin snf --json --matrix " + fixture("ones_plus_id_3.json"));
    REQUIRE(snf.exit_code == 0);
    Json j = Json::parse(snf.output);
    CHECK(j["results"]["diagonal"] == Json::array({1, 1, 4}));

    RunResult k = run_cli("block k --json --scenario " + fixture("scenario_8_21.json"));
    REQUIRE(k.exit_code == 0);
    CHECK(Json::parse(k.output)["results"]["k"] == 8);

    RunResult enumerate =
        run_cli("block enumerate --json --scenario " + fixture("scenario_8_21.json"));
    REQUIRE(enumerate.exit_code == 0);
    Json sets = Json::parse(enumerate.output)["results"];
    CHECK(sets["classes"] == 1);
    CHECK(sets["sets"][0]["k"] == 8);

    RunResult good = run_cli("block goodelem --json --action " + fixture("field_128_action.json") +
                             " --threshold 64");
    REQUIRE(good.exit_code == 0);
    Json ge = Json::parse(good.output)["results"];
    CHECK(ge["element"] == Json::array({0, 0, 0, 0, 0, 0, 1}));
    CHECK(ge["commutator_order"] == 64);
    CHECK(ge["centralizer_order"] == 7);
}

TEST_CASE("embed row options narrow the solution list") {
    RunResult all = run_cli("embed --json --target " + fixture("ones_plus_id_3.json"));
    REQUIRE(all.exit_code == 0);
    CHECK(Json::parse(all.output)["results"]["classes"] == 2);

    RunResult exact = run_cli("embed --json --target " + fixture("ones_plus_id_3.json") +
                              " --rows 4 --no-zero-rows");
    REQUIRE(exact.exit_code == 0);
    Json r = Json::parse(exact.output)["results"];
    CHECK(r["classes"] == 1);
    CHECK(r["embeddings"][0].size() == 4);
}

TEST_CASE("verify skips the extended check on the default budget") {
    RunResult r = run_cli("verify");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "SKIP  9"));
    CHECK(contains(r.output, "0 failed, 1 skipped"));
}

TEST_CASE("fixture directory override and tamper detection") {
    std::string copy_dir = scratch_path("fixtures_copy");
    fs::remove_all(copy_dir);
    fs::create_directories(copy_dir);
    for (const fs::directory_entry& entry : fs::directory_iterator(CARTANKIT_SOURCE_FIXTURES))
        fs::copy(entry.path(), fs::path(copy_dir) / entry.path().filename());

    std::string env = "CARTANKIT_FIXTURES=" + copy_dir;
    RunResult clean = run_cli("verify", env);
    CHECK(clean.exit_code == 0);
    CHECK(contains(clean.output, "0 failed"));

    // One corner entry changed: the affected check must fail, the rest stay green.
    std::string target = copy_dir + "/hex_form_6.json";
    Json matrix;
    std::ifstream(target) >> matrix;
    matrix[0][0] = matrix[0][0].get<long>() + 1;
    std::ofstream(target) << matrix.dump(1) << "\n";

    RunResult tampered = run_cli("verify", env);
    CHECK(tampered.exit_code == 1);
    CHECK(contains(tampered.output, "FAIL  1 hexagonal-form"));
    CHECK(contains(tampered.output, "PASS  2 tensor-square-minimum"));
    CHECK(contains(tampered.output, "1 failed"));
    fs::remove_all(copy_dir);
}

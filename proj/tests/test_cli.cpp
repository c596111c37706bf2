#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/io.hpp"

using rigidity::Json;

namespace {

const std::string kCli = RIGIDITY_CLI_PATH;
const std::string kFixtures = RIGIDITY_FIXTURE_DIR;

std::string q(const std::string& s) { return "\"" + s + "\""; }

std::string fixture(const std::string& name) { return q(kFixtures + "/" + name); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CommandResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string tag = "cli_capture_" + std::to_string(counter++);
    const std::string out_path = tag + ".out";
    const std::string err_path = tag + ".err";
    std::string cmd;
    if (!env.empty()) cmd += env + " ";
    cmd += q(kCli) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CommandResult r;
    if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

std::size_t field_count(const std::string& line) {
    std::size_t n = 1;
    for (char c : line)
        if (c == ',') ++n;
    return n;
}

}  // namespace

TEST_CASE("analyze prints the structural summary", "[cli]") {
    const CommandResult r = run_cli("analyze " + fixture("period3_to_shear.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("source: torus dimension 2, rank 1") != std::string::npos);
    CHECK(r.out.find("k-index 3") != std::string::npos);
    CHECK(r.out.find("ergodic: no") != std::string::npos);
    CHECK(r.out.find("stabilizer subgroup: index 3") != std::string::npos);
    CHECK(r.out.find("target: torus dimension 2, rank 1") != std::string::npos);
}

TEST_CASE("analyze shows the factor matrix when present", "[cli]") {
    const CommandResult r = run_cli("analyze " + fixture("shear_factor_identity.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("factor matrix:") != std::string::npos);
}

TEST_CASE("invalid documents exit with the parse code", "[cli]") {
    const CommandResult noncommuting = run_cli("analyze " + fixture("noncommuting_pair.json"));
    CHECK(noncommuting.exit_code == 2);
    CHECK(noncommuting.err.find("generators 1 and 2 do not commute") != std::string::npos);

    const CommandResult missing = run_cli("analyze no_such_file.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("cannot open") != std::string::npos);

    spill("cli_malformed.json", "{ not json");
    const CommandResult malformed = run_cli("decide cli_malformed.json");
    CHECK(malformed.exit_code == 2);
    CHECK(malformed.err.find("invalid JSON") != std::string::npos);
    std::remove("cli_malformed.json");

    const CommandResult nonabelian = run_cli("analyze " + fixture("affine_group_action.json"));
    CHECK(nonabelian.exit_code == 2);
    CHECK(nonabelian.err.find("do not commute") != std::string::npos);
}

TEST_CASE("decide defaults to the exact mode and is deterministic", "[cli]") {
    const CommandResult a = run_cli("decide " + fixture("period3_to_shear.json"));
    REQUIRE(a.exit_code == 0);
    const Json doc = rigidity::parse_text(a.out);
    CHECK(doc["kind"] == "decision");
    CHECK(doc["mode"] == "exact");
    CHECK(doc["exists_nonaffine"] == true);
    CHECK(doc["certificate"]["type"] == "NonAffineWitnessable");
    CHECK(doc["certificate"]["stabilizer"]["index"] == "3");

    const CommandResult b = run_cli("decide " + fixture("period3_to_shear.json"));
    CHECK(b.out == a.out);
}

TEST_CASE("decide reports refusals with their certificate", "[cli]") {
    const CommandResult ergodic = run_cli("decide " + fixture("catmap_to_identity.json"));
    REQUIRE(ergodic.exit_code == 0);
    CHECK(rigidity::parse_text(ergodic.out)["certificate"]["type"] == "SourceErgodic");

    const CommandResult no_fixed = run_cli("decide " + fixture("identity_to_catmap.json"));
    REQUIRE(no_fixed.exit_code == 0);
    CHECK(rigidity::parse_text(no_fixed.out)["certificate"]["type"] == "NoStabilizerFixedVector");

    const CommandResult almost =
        run_cli("decide --mode almost " + fixture("identity_to_catmap.json"));
    REQUIRE(almost.exit_code == 0);
    CHECK(rigidity::parse_text(almost.out)["certificate"]["type"] ==
          "NoFiniteOrbitTargetVector");

    const CommandResult disagree =
        run_cli("decide --mode almost " + fixture("identity_to_reflection.json"));
    REQUIRE(disagree.exit_code == 0);
    CHECK(rigidity::parse_text(disagree.out)["exists_nonaffine"] == true);
}

TEST_CASE("decide writes to a file when asked", "[cli]") {
    const CommandResult direct = run_cli("decide " + fixture("shear_to_identity.json"));
    REQUIRE(direct.exit_code == 0);
    const CommandResult filed =
        run_cli("decide " + fixture("shear_to_identity.json") + " -o cli_decision.json");
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp("cli_decision.json") == direct.out);
    std::remove("cli_decision.json");
}

TEST_CASE("cyclic mode agrees with exact on every rank-one fixture", "[cli]") {
    for (const char* name :
         {"identity_to_reflection.json", "shear_to_identity.json", "period3_to_shear.json",
          "catmap_to_identity.json", "identity_to_catmap.json"}) {
        const CommandResult exact = run_cli("decide --mode exact " + fixture(name));
        const CommandResult cyclic = run_cli("decide --mode cyclic " + fixture(name));
        REQUIRE(exact.exit_code == 0);
        REQUIRE(cyclic.exit_code == 0);
        CHECK(rigidity::parse_text(exact.out)["exists_nonaffine"] ==
              rigidity::parse_text(cyclic.out)["exists_nonaffine"]);
    }
}

TEST_CASE("cyclic mode needs a rank-one document", "[cli]") {
    const CommandResult r =
        run_cli("decide --mode cyclic " + fixture("rank2_shear_flip_to_identity.json"));
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("rank 1") != std::string::npos);
}

TEST_CASE("factor mode validates its matrix", "[cli]") {
    const CommandResult yes = run_cli("decide --mode factor " + fixture("shear_factor_identity.json"));
    REQUIRE(yes.exit_code == 0);
    const Json doc = rigidity::parse_text(yes.out);
    CHECK(doc["mode"] == "factor");
    CHECK(doc["exists_nonaffine"] == true);

    const CommandResult ergodic =
        run_cli("decide --mode factor " + fixture("catmap_factor_catmap.json"));
    REQUIRE(ergodic.exit_code == 0);
    CHECK(rigidity::parse_text(ergodic.out)["certificate"]["type"] == "TargetErgodic");

    const CommandResult missing = run_cli("decide --mode factor " + fixture("period3_to_shear.json"));
    CHECK(missing.exit_code == 3);
    CHECK(missing.err.find("factor_matrix") != std::string::npos);

    const CommandResult skew =
        run_cli("decide --mode factor " + fixture("shear_to_catmap_badfactor.json"));
    CHECK(skew.exit_code == 3);
    CHECK(skew.err.find("intertwine") != std::string::npos);
}

TEST_CASE("witness then verify round-trips through files", "[cli]") {
    const CommandResult built =
        run_cli("witness " + fixture("period3_to_shear.json") + " -o cli_witness.json");
    REQUIRE(built.exit_code == 0);

    const CommandResult again = run_cli("witness " + fixture("period3_to_shear.json"));
    REQUIRE(again.exit_code == 0);
    CHECK(again.out == slurp("cli_witness.json"));

    const CommandResult verified = run_cli("verify cli_witness.json");
    REQUIRE(verified.exit_code == 0);
    const Json report = rigidity::parse_text(verified.out);
    CHECK(report["pass"] == true);
    CHECK(report["samples"] == 1000);
    CHECK(report["seed"] == 42);

    const CommandResult fewer = run_cli("verify --samples 12 --seed 5 cli_witness.json");
    REQUIRE(fewer.exit_code == 0);
    const Json small = rigidity::parse_text(fewer.out);
    CHECK(small["samples"] == 12);
    CHECK(small["seed"] == 5);

    const CommandResult from_env = run_cli("verify cli_witness.json", "RIGIDITY_SAMPLES=7");
    REQUIRE(from_env.exit_code == 0);
    CHECK(rigidity::parse_text(from_env.out)["samples"] == 7);

    std::remove("cli_witness.json");
}

TEST_CASE("witness refuses undecidable systems with the certificate", "[cli]") {
    const CommandResult r = run_cli("witness " + fixture("identity_to_reflection.json"));
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("NoStabilizerFixedVector") != std::string::npos);

    const CommandResult ergodic = run_cli("witness " + fixture("catmap_to_identity.json"));
    CHECK(ergodic.exit_code == 4);
    CHECK(ergodic.err.find("SourceErgodic") != std::string::npos);
}

TEST_CASE("a corrupted witness document fails verification", "[cli]") {
    const CommandResult built = run_cli("witness " + fixture("period3_to_shear.json"));
    REQUIRE(built.exit_code == 0);
    Json doc = rigidity::parse_text(built.out);
    doc["direction"] = Json::array({"0", "1"});  // not fixed by the target
    spill("cli_corrupt.json", rigidity::canonical_dump(doc));

    const CommandResult verified = run_cli("verify cli_corrupt.json -o cli_corrupt_report.json");
    CHECK(verified.exit_code == 5);
    const Json report = rigidity::parse_text(slurp("cli_corrupt_report.json"));
    CHECK(report["pass"] == false);
    std::remove("cli_corrupt.json");
    std::remove("cli_corrupt_report.json");
}

TEST_CASE("grid sampling covers dimension one and two only", "[cli]") {
    const CommandResult built = run_cli("witness " + fixture("shear_to_identity.json"));
    REQUIRE(built.exit_code == 0);
    spill("cli_plane_witness.json", built.out);
    const CommandResult plane = run_cli("sample-map --grid 4 cli_plane_witness.json");
    REQUIRE(plane.exit_code == 0);
    CHECK(line_count(plane.out) == 16);
    CHECK(field_count(plane.out.substr(0, plane.out.find('\n'))) == 3);
    std::remove("cli_plane_witness.json");

    // dimension-one source sampled on a line
    Json circle;
    circle["kind"] = "system";
    circle["rank"] = 1;
    circle["source"]["dim"] = 1;
    circle["source"]["generators"] = Json::array({Json::array({Json::array({"-1"})})});
    circle["target"]["dim"] = 1;
    circle["target"]["generators"] = Json::array({Json::array({Json::array({"1"})})});
    spill("cli_circle.json", rigidity::canonical_dump(circle));
    const CommandResult line_witness = run_cli("witness cli_circle.json -o cli_line_witness.json");
    REQUIRE(line_witness.exit_code == 0);
    const CommandResult line = run_cli("sample-map --grid 8 cli_line_witness.json");
    REQUIRE(line.exit_code == 0);
    CHECK(line_count(line.out) == 8);
    CHECK(field_count(line.out.substr(0, line.out.find('\n'))) == 2);
    std::remove("cli_circle.json");
    std::remove("cli_line_witness.json");

    // three-dimensional sources have no grid rendering
    const CommandResult big_witness =
        run_cli("witness " + fixture("identity3_to_identity1.json") + " -o cli_big_witness.json");
    REQUIRE(big_witness.exit_code == 0);
    const CommandResult refused = run_cli("sample-map cli_big_witness.json");
    CHECK(refused.exit_code == 6);
    CHECK(refused.err.find("dimension 1 or 2") != std::string::npos);
    std::remove("cli_big_witness.json");
}

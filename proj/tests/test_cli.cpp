#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "logwt/cli.hpp"

using namespace logwt;

namespace {

std::string corpus(const std::string& name) { return std::string(LOGWT_SCENARIO_DIR) + "/" + name + ".json"; }

Json read_json(const std::string& path) {
    std::ifstream in(path);
    return Json::parse(in);
}

RunResult run_cmd(Command c, const std::string& scenario, std::optional<Track> t = std::nullopt) {
    RunConfig cfg;
    cfg.command = c;
    cfg.scenario_path = corpus(scenario);
    cfg.track = t;
    return run(cfg);
}

// A scenario file with one pullback broken, written to a temporary path.
std::string broken_triangle(const std::string& tag) {
    Json j = read_json(corpus("triangle"));
    j["pullbacks"][7]["matrix"] = Json::array({Json::array({"2"})});
    auto path = std::filesystem::temp_directory_path() / ("logwt-broken-" + tag + ".json");
    std::ofstream(path) << j.dump();
    return path.string();
}

std::string expect_invalid(const Json& j) {
    try {
        scenario_from_json(j);
    } catch (const ScenarioError& e) {
        return e.path;
    }
    return "<accepted>";
}

}  // namespace

TEST_CASE("scenario files round-trip") {
    for (const char* name : {"f5-conic-line", "triangle", "cone-plane", "line-k3-q", "line-k2-f3"}) {
        SncdScenario s = load_scenario(corpus(name));
        SncdScenario t = scenario_from_json(scenario_to_json(s));
        CHECK(t.name == s.name);
        CHECK(t.field == s.field);
        CHECK(t.r == s.r);
        CHECK(t.pullbacks == s.pullbacks);
        for (Mask m = 0; m < (1u << s.r); ++m) CHECK(t.table(m) == s.table(m));
        CHECK(scenario_to_json(t) == scenario_to_json(s));
    }
    SncdScenario f5 = load_scenario(corpus("f5-conic-line"));
    CHECK(f5.field == Field::prime(5));
    CHECK(f5.table(3) == HodgeTable{{{0, 0}, 2}});
}

TEST_CASE("validator errors name the field") {
    Json base = read_json(corpus("triangle"));
    Json j = base;
    j["field"] = "F4";
    CHECK(expect_invalid(j) == "field");
    j = base;
    j["strata"][2]["subset"] = Json::array({5});
    CHECK(expect_invalid(j) == "strata[2].subset[0]");
    j = base;
    j["pullbacks"][3]["matrix"] = Json::array({Json::array({"1", "0"})});
    CHECK(expect_invalid(j) == "pullbacks[3].matrix");
    j = base;
    j["pullbacks"][0]["matrix"] = Json::array({Json::array({"1/0"})});
    CHECK(expect_invalid(j) == "pullbacks[0].matrix[0][0]");
    j = base;
    j["pullbacks"].erase(0);
    CHECK(expect_invalid(j) == "pullbacks");
    j = base;
    j.erase("n");
    CHECK(expect_invalid(j) == "n");

    Json line = read_json(corpus("line-k3-q"));
    line["points"][2] = "0";
    CHECK(expect_invalid(line) == "points");
    line = read_json(corpus("line-k2-f5"));
    line["points"][1] = "1/2";
    CHECK(expect_invalid(line) == "points[1]");  // prime-field scalars are integer representatives
    line["points"][1] = "0";
    CHECK(expect_invalid(line) == "points");
    line = read_json(corpus("line-k2-q"));
    line["strata"] = Json::array();
    CHECK(expect_invalid(line) == "strata");
}

TEST_CASE("non-functorial pullback exits 2 with its path") {
    RunConfig cfg;
    cfg.command = Command::Weights;
    cfg.scenario_path = broken_triangle("lib");
    RunResult r = run(cfg);
    CHECK(r.exit_code == kExitInvalid);
    CHECK(r.report["status"] == "invalid-input");
    std::string path = r.report["error"]["path"].get<std::string>();
    CHECK(path.rfind("pullbacks[", 0) == 0);
    CHECK(path.find(".matrix") != std::string::npos);

    cfg.scenario_path = corpus("does-not-exist");
    CHECK(run(cfg).exit_code == kExitInvalid);
    cfg.scenario_path.clear();
    CHECK(run(cfg).exit_code == kExitInvalid);
}

TEST_CASE("the command line tool reports exit codes") {
    auto status = [](const std::string& args) {
        std::string cmd = std::string(LOGWT_TOOL) + " " + args + " > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    CHECK(status("weights --scenario " + broken_triangle("tool")) == 2);
    CHECK(status("compare --scenario " + corpus("line-k3-q")) == 0);
    CHECK(status("compare --scenario " + corpus("triangle")) == 2);
    CHECK(status("cone --scenario " + corpus("cone-line") + " --format human") == 0);
    CHECK(status("weights --scenario " + corpus("triangle") + " --track bogus") == 2);
    CHECK(status("frobnicate") == 2);
    auto out = std::filesystem::temp_directory_path() / "logwt-report.json";
    CHECK(status("dual-complex --scenario " + corpus("triangle") + " --out " + out.string()) == 0);
    CHECK(read_json(out.string())["agree"] == true);
}

TEST_CASE("compare on the three-point line") {
    RunResult r = run_cmd(Command::Compare, "line-k3-q");
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.report["diff"].empty());
    CHECK(r.report["tracks"].size() == 3);
    for (const auto& t : r.report["tracks"])
        for (const auto& p : t["pieces"]) {
            CHECK(p["match"] == true);
            CHECK(p["weight_side"]["graded"] == p["pole_order_side"]["graded"]);
        }
    // Gr^W_2 H^1 has the k - 1 = 2 residue classes.
    Json dr = r.report["tracks"][0]["pieces"][0]["weight_side"]["graded"];
    CHECK(dr == Json::parse("[[0,0,1],[2,1,2]]"));
}

TEST_CASE("weights on the F5 scenario") {
    RunResult r = run_cmd(Command::Weights, "f5-conic-line", Track::HodgeGraded);
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.report["grw0_compact"]["table"] == Json::parse("[[0,2,1]]"));
    CHECK(r.report["tracks"].size() == 1);
}

TEST_CASE("reports are deterministic") {
    for (Command c : {Command::Compare, Command::SpectralSequence, Command::Weights}) {
        RunResult a = run_cmd(c, "line-k2-f3"), b = run_cmd(c, "line-k2-f3");
        CHECK(a.text == b.text);
    }
    RunConfig cfg;
    cfg.command = Command::Selftest;
    cfg.seed = 3;
    cfg.selftest_scale = 0.1;
    RunResult a = run(cfg), b = run(cfg);
    CHECK(a.exit_code == kExitOk);
    CHECK(a.text == b.text);
    cfg.format = OutputFormat::Human;
    CHECK(run(cfg).text == render_human(a.report));
}

TEST_CASE("dual complex and cone commands") {
    RunResult tri = run_cmd(Command::DualComplex, "triangle");
    CHECK(tri.exit_code == kExitOk);
    CHECK(tri.report["faces"].size() == 6);
    CHECK(tri.report["reduced_cohomology"] == Json::parse("[[1,1]]"));
    CHECK(tri.report["agree"] == true);
    RunResult f5 = run_cmd(Command::DualComplex, "f5-conic-line");
    CHECK(f5.report["comparison_applicable"] == false);
    CHECK(f5.report["reduced_cohomology"].empty());

    RunResult plane = run_cmd(Command::Cone, "cone-plane");
    CHECK(plane.exit_code == kExitOk);
    CHECK(plane.report["weights"] == plane.report["closed_form"]);

    SncdScenario two = load_scenario(corpus("cone-line"));
    two.strata[0].components.push_back(projective_space_table(1));
    RunConfig cfg;
    cfg.command = Command::Cone;
    CHECK(run_on(cfg, two).exit_code == kExitInvalid);
}

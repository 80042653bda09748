// logwt: run a command on a scenario file and print the report.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "logwt/cli.hpp"

int main(int argc, char** argv) {
    using namespace logwt;
    CLI::App app{"Weight filtrations on log de Rham / Hodge cohomology, computed exactly"};
    std::string command, scenario, track = "all", format = "structured", out;
    std::uint64_t seed = 1;
    double scale = 1.0;
    app.add_option("command", command, "compare | weights | ss | dual-complex | cone | selftest")->required();
    app.add_option("--scenario", scenario, "scenario JSON file");
    app.add_option("--track", track, "dr | hodge | hodge-filtered | all");
    app.add_option("--format", format, "human | structured");
    app.add_option("--seed", seed, "seed for selftest");
    app.add_option("--scale", scale, "selftest size multiplier");
    app.add_option("--out", out, "write the report here instead of stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    RunConfig cfg;
    auto cmd = parse_command(command);
    if (!cmd) {
        std::cerr << "unknown command: " << command << "\n";
        return kExitInvalid;
    }
    cfg.command = *cmd;
    cfg.scenario_path = scenario;
    if (track != "all") {
        cfg.track = parse_track(track);
        if (!cfg.track) {
            std::cerr << "--track: expected dr, hodge, hodge-filtered or all\n";
            return kExitInvalid;
        }
    }
    if (format == "human") {
        cfg.format = OutputFormat::Human;
    } else if (format != "structured") {
        std::cerr << "--format: expected human or structured\n";
        return kExitInvalid;
    }
    cfg.seed = seed;
    cfg.selftest_scale = scale;

    RunResult r = run(cfg);
    if (r.exit_code == kExitInvalid && r.report.contains("error"))
        std::cerr << "invalid input at " << r.report["error"]["path"].get<std::string>() << ": "
                  << r.report["error"]["message"].get<std::string>() << "\n";
    if (out.empty()) {
        std::cout << r.text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return kExitInvalid;
        }
        f << r.text;
    }
    return r.exit_code;
}

#pragma once

// Scenario runner behind the logwt command line tool. run() never throws:
// invalid input becomes exit code 2 with the offending field in the report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logwt/scenario_io.hpp"

namespace logwt {

enum class Command { Compare, Weights, SpectralSequence, DualComplex, Cone, Selftest };
enum class OutputFormat { Human, Structured };

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr const char* kReportSchema = "logwt-report/1";

struct RunConfig {
    Command command = Command::Weights;
    std::string scenario_path;
    std::optional<Track> track;  // empty = all three
    OutputFormat format = OutputFormat::Structured;
    std::uint64_t seed = 1;
    double selftest_scale = 1.0;
};

struct RunResult {
    int exit_code = kExitOk;
    Json report;
    /// The report in the requested format, newline terminated.
    std::string text;
};

std::optional<Command> parse_command(const std::string& s);
std::string command_name(Command c);
std::optional<Track> parse_track(const std::string& s);  // "all" -> nullopt via caller

RunResult run(const RunConfig& cfg);
/// Same as run() but on an already loaded scenario (skips the file).
RunResult run_on(const RunConfig& cfg, const SncdScenario& s);

/// Indented plain-text rendering of a report.
std::string render_human(const Json& report);

}  // namespace logwt

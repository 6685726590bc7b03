#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace eulerprod {

/// Everything that determines a run's output. `params` holds the subcommand's
/// options (including format and threads) exactly as they were resolved.
struct RunConfig {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 1;
};

void to_json(nlohmann::json& j, const RunConfig& v);
void from_json(const nlohmann::json& j, RunConfig& v);

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2, exit_domain = 3, exit_budget = 4 };

/// Runs the command line (without the program name). Results go to `out`, or to
/// the --output file; errors go to `err` as {"error": {"kind", "message"}, ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a JSON document written by run_cli back into its config and results.
std::pair<RunConfig, nlohmann::json> parse_run_output(const std::string& text);

}  // namespace eulerprod

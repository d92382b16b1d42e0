#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "harness/artifacts.hpp"
#include "harness/config.hpp"

namespace wq::harness {

enum class Command { PhononSim, Wigner, PhotonField, HelicityCheck, ThermalRelax, Verify };

std::string_view to_string(Command command);
std::optional<Command> command_from_string(std::string_view name);
const std::vector<std::string>& command_names();

/// Exit codes shared by the CLI and its tests.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int parse = 2;
inline constexpr int validation = 3;
inline constexpr int numeric = 4;
} // namespace exit_code

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    /// "<=", ">=" or "in" (value within [threshold, upper])
    std::string relation = "<=";
    double upper = 0.0;
    bool passed = false;
};

nlohmann::json to_json(const Check& check);

struct Outcome {
    ArtifactSet artifacts;
    /// The command's main report; also written as one of the artifacts.
    nlohmann::json report;
    std::vector<Check> checks;
    int exit_status = exit_code::ok;
};

using Logger = std::function<void(std::string_view)>;

/// Runs one subcommand entirely in memory. Throws ValidationError / NumericError on failure.
/// effective_config.json is always part of the artifacts.
Outcome run_command(Command command, const ScenarioConfig& config, const Logger& log = {});

/// The invariant suite behind `verify`, selected by config.suite.
std::vector<Check> run_suite(const ScenarioConfig& config, const Logger& log = {});

} // namespace wq::harness

#pragma once

// Run configuration for the command-line front end.
//
// Values are resolved in increasing precedence: built-in defaults, the
// config file, the QSWITCH_SEED environment variable (seed only), then
// command-line flags.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qswitch/thermal.hpp"

namespace qswitch {

enum class Command { sweep, capacity, turning_point, nonmarkov, emulate, validate };
enum class OutputFormat { csv, json };
/// State handed to the tomography emulator.
enum class ProbeState { protocol, gibbs };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitValidation = 4,
};

inline constexpr const char* kSeedEnvVar = "QSWITCH_SEED";

std::string command_name(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::sweep;
  std::vector<Temperature> temperatures;
  double p = 0.5;
  double strength = 0.5;
  std::size_t grid = 101;
  std::uint64_t shots = 10'000;
  bool exact = false;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
  bool full_precision = false;
  bool switch_on = true;
  ProbeState state = ProbeState::protocol;
  bool inject_fault = false;
};

/// Flag values; unset members fall through to lower-precedence sources.
struct ConfigOverrides {
  std::vector<std::string> temperatures;
  std::optional<double> p;
  std::optional<double> strength;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> shots;
  std::optional<bool> exact;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<bool> full_precision;
  std::optional<bool> switch_on;
  std::optional<std::string> state;
  std::optional<bool> inject_fault;
};

/// Built-in defaults for a command.
RunConfig default_config(Command command);

/// Parses a JSON config file with optional sections "physics", "sweep",
/// "emulate" and "output". Throws IoError / UsageError.
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Applies the precedence chain and range-checks every field (UsageError).
RunConfig resolve_config(Command command, const ConfigOverrides& flags,
                         const nlohmann::json* file, const std::optional<std::string>& env_seed);

}  // namespace qswitch

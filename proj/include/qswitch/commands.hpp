#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/emulator.hpp"
#include "qswitch/run_config.hpp"
#include "qswitch/sweep.hpp"

namespace qswitch {

/// Everything a command produces. Nothing touches the filesystem until
/// commit(), which is the single writer.
struct CommandResult {
  int exit_code = kExitOk;
  std::string stdout_text;
  std::string log_text;  // diagnostics for stderr
  std::vector<std::pair<std::string, std::string>> files;  // path, contents
};

CommandResult run_command(const RunConfig& cfg);

/// Writes files (creating parent directories) and stdout text. Throws
/// IoError on failure.
void commit(const CommandResult& result, std::ostream& out);

// Rendering shared with tests.

/// "%.6f" with negative zero printed as zero.
std::string format_fixed(double value);
std::string format_number(double value, bool full_precision);

inline constexpr const char* kSweepHeader = "s,i_on,i_off,delta_i,a_c";
std::string sweep_csv(const std::vector<SweepRecord>& records, bool full_precision);
std::string count_tables_csv(const std::vector<std::vector<CountTable>>& trials);

struct ValidationLine {
  std::string check;
  std::string temperature;  // "-" when not temperature-specific
  std::string s;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

inline constexpr double kValidationTolerance = 1e-10;

/// Invariant battery over temperatures x uniform s-grid: channel
/// completeness, Gibbs fixed point, switch completeness, energy
/// conservation, free-coherence route agreement and subadditivity.
/// `inject_fault` swaps in an incomplete Kraus set for the first channel
/// check as a negative control.
std::vector<ValidationLine> run_validation(const std::vector<Temperature>& temperatures,
                                           std::size_t grid_points, bool inject_fault);

}  // namespace qswitch

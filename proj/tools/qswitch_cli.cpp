// qswitch: command-line front end for the switched thermal channel model.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qswitch/commands.hpp"
#include "qswitch/errors.hpp"
#include "qswitch/kernels.hpp"
#include "qswitch/run_config.hpp"

namespace {

using qswitch::Command;
using qswitch::ConfigOverrides;

struct FlagSet {
  ConfigOverrides overrides;
  std::string config_path;
  bool switch_off = false;
};

// Options shared by every subcommand. Optional members are left unset when
// the flag is absent so lower-precedence sources can fill them.
void add_common(CLI::App* sub, FlagSet& flags) {
  sub->add_option("-T,--temperature", flags.overrides.temperatures,
                  "Bath temperature: zero, inf or a positive kT (repeatable)");
  sub->add_option("-p,--p", flags.overrides.p, "Input mixing weight p in [0,1]");
  sub->add_option("-o,--output", flags.overrides.output,
                  "Output file (directory for emulate); stdout when omitted");
  sub->add_option("-f,--format", flags.overrides.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--full-precision", flags.overrides.full_precision,
                "Emit 17 significant digits instead of 6 decimals");
  sub->add_option("-c,--config", flags.config_path, "JSON config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information transmission through thermal channels in a quantum switch"};
  app.require_subcommand(1);
  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected SIMD kernel variant to stderr");

  FlagSet flags;
  std::optional<Command> command;

  auto* sweep = app.add_subcommand("sweep", "I(A:CM), Delta I and A_C versus s");
  add_common(sweep, flags);
  sweep->add_option("-n,--grid", flags.overrides.grid, "Number of s grid points");
  sweep->callback([&] { command = Command::sweep; });

  auto* capacity = app.add_subcommand("capacity", "Maximize I(A:CM) over the input family");
  add_common(capacity, flags);
  capacity->add_option("-s,--strength", flags.overrides.strength, "Thermalization strength s");
  capacity->add_flag("--switch-off", flags.switch_off, "Definite order control |0><0|");
  capacity->callback([&] { command = Command::capacity; });

  auto* tp = app.add_subcommand("turning-point", "Locate the minimum of I(A:CM) in s");
  add_common(tp, flags);
  tp->add_flag("--switch-off", flags.switch_off, "Definite order control |0><0|");
  tp->callback([&] { command = Command::turning_point; });

  auto* nm = app.add_subcommand("nonmarkov", "Information backflow after the turning point");
  add_common(nm, flags);
  nm->add_flag("--switch-off", flags.switch_off, "Definite order control |0><0|");
  nm->callback([&] { command = Command::nonmarkov; });

  auto* emulate = app.add_subcommand("emulate", "Tomography with shot noise and MC error bars");
  add_common(emulate, flags);
  emulate->add_option("-s,--strength", flags.overrides.strength, "Thermalization strength s");
  emulate->add_option("--shots", flags.overrides.shots, "Shots per measurement setting");
  emulate->add_flag("--exact", flags.overrides.exact, "Use exact outcome probabilities");
  emulate->add_option("--trials", flags.overrides.trials, "Monte Carlo trials");
  emulate->add_option("--seed", flags.overrides.seed, "Master random seed");
  emulate->add_option("--state", flags.overrides.state, "protocol or gibbs")
      ->check(CLI::IsMember({"protocol", "gibbs"}));
  emulate->add_flag("--switch-off", flags.switch_off, "Definite order control |0><0|");
  emulate->callback([&] { command = Command::emulate; });

  auto* validate = app.add_subcommand("validate", "Run the invariant battery");
  add_common(validate, flags);
  validate->add_option("-n,--grid", flags.overrides.grid, "Number of s grid points");
  validate->add_flag("--inject-fault", flags.overrides.inject_fault,
                     "Replace one channel with an incomplete Kraus set (negative control)");
  validate->callback([&] { command = Command::validate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qswitch::kExitOk : qswitch::kExitUsage;
  }

  if (show_kernels) {
    std::cerr << "kernels: " << qswitch::kernels::isa_name(qswitch::kernels::active_isa())
              << "\n";
  }

  try {
    if (flags.switch_off) flags.overrides.switch_on = false;
    std::optional<nlohmann::json> file;
    if (!flags.config_path.empty()) file = qswitch::load_config_file(flags.config_path);
    std::optional<std::string> env_seed;
    if (const char* env = std::getenv(qswitch::kSeedEnvVar)) env_seed = env;

    const qswitch::RunConfig cfg =
        qswitch::resolve_config(*command, flags.overrides, file ? &*file : nullptr, env_seed);
    const qswitch::CommandResult result = qswitch::run_command(cfg);
    qswitch::commit(result, std::cout);
    std::cerr << result.log_text;
    return result.exit_code;
  } catch (const qswitch::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return qswitch::kExitUsage;
  } catch (const qswitch::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return qswitch::kExitIo;
  } catch (const qswitch::ValidityError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return qswitch::kExitValidation;
  }
}

#include "qswitch/run_config.hpp"

#include <charconv>
#include <fstream>

#include "qswitch/errors.hpp"

namespace qswitch {

namespace {

constexpr std::pair<Command, const char*> kCommandNames[] = {
    {Command::sweep, "sweep"},         {Command::capacity, "capacity"},
    {Command::turning_point, "turning-point"}, {Command::nonmarkov, "nonmarkov"},
    {Command::emulate, "emulate"},     {Command::validate, "validate"},
};

std::vector<Temperature> parse_temperatures(const std::vector<std::string>& labels) {
  std::vector<Temperature> out;
  for (const auto& l : labels) out.push_back(Temperature::parse(l));
  return out;
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError(std::string(source) + ": seed must be an unsigned 64-bit integer");
  }
  return seed;
}

template <class T>
void take(const nlohmann::json& section, const char* key, T& field) {
  if (section.contains(key)) {
    try {
      field = section.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw UsageError(std::string("config: bad value for '") + key + "'");
    }
  }
}

const nlohmann::json& section_of(const nlohmann::json& root, const char* name) {
  static const nlohmann::json kEmpty = nlohmann::json::object();
  if (!root.contains(name)) return kEmpty;
  const auto& s = root.at(name);
  if (!s.is_object()) throw UsageError(std::string("config: section '") + name + "' must be a table");
  return s;
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::csv;
  if (f == "json") return OutputFormat::json;
  throw UsageError("output format must be csv or json, got '" + f + "'");
}

ProbeState parse_state(const std::string& s) {
  if (s == "protocol") return ProbeState::protocol;
  if (s == "gibbs") return ProbeState::gibbs;
  throw UsageError("emulated state must be protocol or gibbs, got '" + s + "'");
}

void apply_file(RunConfig& cfg, const nlohmann::json& root) {
  if (!root.is_object()) throw UsageError("config: top level must be a table");
  const auto& physics = section_of(root, "physics");
  if (physics.contains("temperature")) {
    const auto& t = physics.at("temperature");
    std::vector<std::string> labels;
    if (t.is_array()) {
      for (const auto& item : t) labels.push_back(item.is_string() ? item.get<std::string>() : item.dump());
    } else {
      labels.push_back(t.is_string() ? t.get<std::string>() : t.dump());
    }
    cfg.temperatures = parse_temperatures(labels);
  }
  take(physics, "p", cfg.p);
  take(physics, "s", cfg.strength);
  take(physics, "switch_on", cfg.switch_on);

  take(section_of(root, "sweep"), "grid", cfg.grid);

  const auto& emulate = section_of(root, "emulate");
  take(emulate, "shots", cfg.shots);
  take(emulate, "exact", cfg.exact);
  take(emulate, "trials", cfg.trials);
  take(emulate, "seed", cfg.seed);
  if (emulate.contains("state")) {
    std::string s;
    take(emulate, "state", s);
    cfg.state = parse_state(s);
  }

  const auto& output = section_of(root, "output");
  take(output, "path", cfg.output);
  if (output.contains("format")) {
    std::string f;
    take(output, "format", f);
    cfg.format = parse_format(f);
  }
  take(output, "full_precision", cfg.full_precision);
}

void check_ranges(const RunConfig& cfg) {
  ThermalizationStrength check_s(cfg.strength);
  UnitInterval<struct PCheck> check_p(cfg.p);
  (void)check_s;
  (void)check_p;
  if (cfg.temperatures.empty()) throw UsageError("at least one temperature is required");
  if (cfg.grid < 2) throw UsageError("grid needs at least two points");
  if (cfg.shots == 0) throw UsageError("shots must be positive");
  if (cfg.trials < 2) throw UsageError("trials must be at least 2");
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kCommandNames) {
    if (name == n) return cmd;
  }
  throw UsageError("unknown command '" + name + "'");
}

RunConfig default_config(Command command) {
  RunConfig cfg;
  cfg.command = command;
  switch (command) {
    case Command::validate:
      cfg.temperatures = {Temperature::zero(), Temperature::infinite(), Temperature::finite(1.0)};
      cfg.grid = 11;
      break;
    case Command::emulate:
      cfg.temperatures = {Temperature::infinite()};
      break;
    default:
      cfg.temperatures = {Temperature::zero(), Temperature::infinite()};
      break;
  }
  return cfg;
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  try {
    return nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path.string() + ": " + e.what());
  }
}

RunConfig resolve_config(Command command, const ConfigOverrides& flags,
                         const nlohmann::json* file, const std::optional<std::string>& env_seed) {
  RunConfig cfg = default_config(command);
  if (file) apply_file(cfg, *file);
  if (env_seed && !env_seed->empty()) cfg.seed = parse_seed(*env_seed, kSeedEnvVar);

  if (!flags.temperatures.empty()) cfg.temperatures = parse_temperatures(flags.temperatures);
  if (flags.p) cfg.p = *flags.p;
  if (flags.strength) cfg.strength = *flags.strength;
  if (flags.grid) cfg.grid = *flags.grid;
  if (flags.shots) cfg.shots = *flags.shots;
  if (flags.exact) cfg.exact = *flags.exact;
  if (flags.trials) cfg.trials = *flags.trials;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.output) cfg.output = *flags.output;
  if (flags.format) cfg.format = parse_format(*flags.format);
  if (flags.full_precision) cfg.full_precision = *flags.full_precision;
  if (flags.switch_on) cfg.switch_on = *flags.switch_on;
  if (flags.state) cfg.state = parse_state(*flags.state);
  if (flags.inject_fault) cfg.inject_fault = *flags.inject_fault;

  check_ranges(cfg);
  return cfg;
}

}  // namespace qswitch

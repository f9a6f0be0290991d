#include "qswitch/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qswitch/errors.hpp"
#include "qswitch/info_measures.hpp"

namespace qswitch {

namespace {

using nlohmann::json;

double json_number(double v, bool full_precision) {
  if (full_precision) return v;
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

std::string switch_label(bool on) { return on ? "on" : "off"; }

std::string suffixed_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const std::string stem = p.stem().string() + "_" + suffix;
  return (p.parent_path() / (stem + p.extension().string())).string();
}

// Routes single-document output to the file or stdout.
void emit(CommandResult& result, const RunConfig& cfg, std::string text) {
  if (cfg.output.empty()) {
    result.stdout_text += text;
  } else {
    result.files.emplace_back(cfg.output, std::move(text));
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------------ sweep --

json sweep_json(const Temperature& t, double p, const std::vector<SweepRecord>& records,
                bool full) {
  json rows = json::array();
  for (const auto& r : records) {
    json row{{"s", json_number(r.s, full)},
             {"i_on", json_number(r.i_on, full)},
             {"i_off", json_number(r.i_off, full)},
             {"delta_i", json_number(r.delta_i, full)},
             {"a_c", json_number(r.a_c, full)}};
    if (auto f = free_energy_of_coherence(r.a_c, t)) row["f_coh"] = json_number(*f, full);
    rows.push_back(std::move(row));
  }
  return json{{"temperature", t.label()},
              {"p", p},
              {"control_on", "|+><+|"},
              {"control_off", "|0><0|"},
              {"coherence_basis", "computational"},
              {"unit", "bits"},
              {"records", std::move(rows)}};
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  CommandResult result;
  json doc{{"sweeps", json::array()}};
  for (const auto& t : cfg.temperatures) {
    SweepConfig sc;
    sc.temperature = t;
    sc.p = MixingWeight(cfg.p);
    sc.grid = uniform_grid(cfg.grid);
    const auto records = run_sweep(sc);
    if (cfg.format == OutputFormat::json) {
      doc["sweeps"].push_back(sweep_json(t, cfg.p, records, cfg.full_precision));
      continue;
    }
    std::string csv = sweep_csv(records, cfg.full_precision);
    if (cfg.temperatures.size() == 1) {
      emit(result, cfg, std::move(csv));
    } else if (cfg.output.empty()) {
      result.stdout_text += "# temperature=" + t.label() + "\n" + csv;
    } else {
      result.files.emplace_back(suffixed_path(cfg.output, t.label()), std::move(csv));
    }
  }
  if (cfg.format == OutputFormat::json) emit(result, cfg, dump(doc));
  return result;
}

// --------------------------------------------------------------- reports --

// Renders rows of named fields as CSV or as a JSON array under `key`.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cell_text(const json& v, bool full) {
  if (v.is_number_float()) return format_number(v.get<double>(), full);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

std::string render(const Table& table, const RunConfig& cfg, const std::string& key,
                   json metadata = json::object()) {
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      os << (i ? "," : "") << table.columns[i];
    }
    os << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << cell_text(row[i], cfg.full_precision);
      }
      os << "\n";
    }
    return os.str();
  }
  json arr = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const json& v = row[i];
      obj[table.columns[i]] =
          v.is_number_float() ? json(json_number(v.get<double>(), cfg.full_precision)) : v;
    }
    arr.push_back(std::move(obj));
  }
  json doc{{key, std::move(arr)}};
  if (!metadata.empty()) doc["metadata"] = std::move(metadata);
  return dump(doc);
}

CommandResult cmd_capacity(const RunConfig& cfg) {
  Table table{{"temperature", "s", "switch", "p_star", "i_star", "grid_p_star", "grid_i_star",
               "oracle_gap"},
              {}};
  std::string space;
  for (const auto& t : cfg.temperatures) {
    const CapacityResult r =
        holevo_over_family(t, ThermalizationStrength(cfg.strength), cfg.switch_on);
    space = r.search_space;
    table.rows.push_back({t.label(), cfg.strength, switch_label(cfg.switch_on), r.p_star,
                          r.i_star, r.grid_p_star, r.grid_i_star, r.oracle_gap});
  }
  CommandResult result;
  emit(result, cfg,
       render(table, cfg, "capacity",
              json{{"search_space", space},
                   {"optimizer", "golden-section, tolerance 1e-6 in p"},
                   {"oracle", "1001-point grid scan"}}));
  return result;
}

std::string join_points(const std::vector<double>& pts, bool full) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += (i ? ";" : "") + format_number(pts[i], full);
  }
  return out.empty() ? "none" : out;
}

CommandResult cmd_turning_point(const RunConfig& cfg) {
  Table table{{"temperature", "switch", "s_tp", "i_tp", "ambiguous", "points"}, {}};
  CommandResult result;
  const ControlState control = cfg.switch_on ? ControlState::on() : ControlState::off();
  for (const auto& t : cfg.temperatures) {
    const TurningPointReport tp = find_turning_point(t, MixingWeight(cfg.p), cfg.switch_on);
    json s_tp = nullptr;
    json i_tp = nullptr;
    if (auto first = tp.first()) {
      s_tp = *first;
      i_tp = protocol_information(t, ThermalizationStrength(*first), MixingWeight(cfg.p), control);
    }
    if (tp.ambiguous()) {
      result.log_text += "warning: " + std::to_string(tp.points.size()) +
                         " turning points at T=" + t.label() + "\n";
    }
    table.rows.push_back({t.label(), switch_label(cfg.switch_on), s_tp, i_tp,
                          tp.ambiguous(),
                          join_points(tp.points, cfg.full_precision)});
  }
  emit(result, cfg, render(table, cfg, "turning_points"));
  return result;
}

CommandResult cmd_nonmarkov(const RunConfig& cfg) {
  Table table{{"temperature", "switch", "s_tp", "n_endpoint", "n_integrated", "residual",
               "monotone_after_tp"},
              {}};
  for (const auto& t : cfg.temperatures) {
    const NonMarkovianity n = non_markovianity(t, MixingWeight(cfg.p), cfg.switch_on);
    table.rows.push_back({t.label(), switch_label(cfg.switch_on),
                          n.s_tp ? json(*n.s_tp) : json(nullptr), n.endpoint_difference,
                          n.integrated, n.residual, n.monotone_after_tp});
  }
  CommandResult result;
  emit(result, cfg,
       render(table, cfg, "non_markovianity",
              json{{"measure", "integral of dI(A:CM)/ds from the turning point to s=1"},
                   {"integration_step", kBackflowStep},
                   {"derivative_step", kSlopeStep}}));
  return result;
}

CommandResult cmd_validate(const RunConfig& cfg) {
  const auto lines = run_validation(cfg.temperatures, cfg.grid, cfg.inject_fault);
  Table table{{"check", "temperature", "s", "residual", "tolerance", "status"}, {}};
  std::size_t failed = 0;
  for (const auto& l : lines) {
    if (!l.passed()) ++failed;
    // Residuals are printed in scientific notation; fixed-point would hide them.
    char residual[32];
    std::snprintf(residual, sizeof residual, "%.3e", l.residual);
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.0e", l.tolerance);
    table.rows.push_back({l.check, l.temperature, l.s, std::string(residual), std::string(tol),
                          l.passed() ? "ok" : "FAIL"});
  }
  CommandResult result;
  emit(result, cfg, render(table, cfg, "checks"));
  result.log_text += "validation: " + std::to_string(lines.size()) + " checks, " +
                     std::to_string(failed) + " failed\n";
  if (failed > 0) result.exit_code = kExitValidation;
  return result;
}

CommandResult cmd_emulate(const RunConfig& cfg) {
  const Temperature& t = cfg.temperatures.front();
  const ThermalizationStrength s(cfg.strength);
  const ControlState control = cfg.switch_on ? ControlState::on() : ControlState::off();
  const DensityMatrix truth = cfg.state == ProbeState::gibbs
                                  ? gibbs_probe_state(t, s, control)
                                  : protocol_state(t, s, MixingWeight(cfg.p), control);
  std::vector<std::vector<CountTable>> tables;
  const std::optional<std::uint64_t> shots =
      cfg.exact ? std::nullopt : std::optional<std::uint64_t>(cfg.shots);
  const MonteCarloMetrics m =
      monte_carlo_metrics(truth, shots, cfg.trials, RandomSeed{cfg.seed}, &tables);

  Table table{{"metric", "mean", "stddev"}, {}};
  table.rows.push_back({"mutual_information", m.information.mean, m.information.stddev});
  table.rows.push_back({"free_coherence", m.coherence.mean, m.coherence.stddev});
  table.rows.push_back({"fidelity", m.fidelity.mean, m.fidelity.stddev});
  table.rows.push_back({"root_fidelity", m.root_fidelity.mean, m.root_fidelity.stddev});
  const json metadata{
      {"temperature", t.label()},
      {"s", cfg.strength},
      {"p", cfg.p},
      {"switch", switch_label(cfg.switch_on)},
      {"state", cfg.state == ProbeState::gibbs ? "gibbs" : "protocol"},
      {"shots", cfg.exact ? json("exact") : json(cfg.shots)},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"estimator", "linear inversion"},
      {"projection", "eigenvalue truncation then trace renormalization"},
      {"fidelity", "squared Uhlmann; root_fidelity is the amplitude convention"}};
  std::string metrics = render(table, cfg, "metrics", metadata);

  CommandResult result;
  if (cfg.output.empty()) {
    result.stdout_text = std::move(metrics);
    return result;
  }
  const std::filesystem::path dir(cfg.output);
  const char* ext = cfg.format == OutputFormat::json ? "metrics.json" : "metrics.csv";
  result.files.emplace_back((dir / ext).string(), std::move(metrics));
  if (!tables.empty()) {
    result.files.emplace_back((dir / "counts.csv").string(), count_tables_csv(tables));
  }
  return result;
}

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string format_number(double value, bool full_precision) {
  if (!full_precision) return format_fixed(value);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRecord>& records, bool full_precision) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : records) {
    out += format_number(r.s, full_precision) + "," + format_number(r.i_on, full_precision) +
           "," + format_number(r.i_off, full_precision) + "," +
           format_number(r.delta_i, full_precision) + "," + format_number(r.a_c, full_precision) +
           "\n";
  }
  return out;
}

std::string count_tables_csv(const std::vector<std::vector<CountTable>>& trials) {
  std::ostringstream os;
  os << "trial,setting,shots";
  for (std::size_t o = 0; o < kOutcomes; ++o) os << ",c" << o;
  os << "\n";
  for (std::size_t k = 0; k < trials.size(); ++k) {
    for (const auto& t : trials[k]) {
      os << k << "," << t.setting.label() << "," << t.shots;
      for (auto c : t.counts) os << "," << c;
      os << "\n";
    }
  }
  return os.str();
}

std::vector<ValidationLine> run_validation(const std::vector<Temperature>& temperatures,
                                           std::size_t grid_points, bool inject_fault) {
  std::vector<ValidationLine> lines;
  const std::vector<double> grid = uniform_grid(grid_points);
  const auto s_label = [](double s) { return format_fixed(s); };
  const Basis control_basis = computational_basis(2);
  bool fault_pending = inject_fault;

  for (double sv : grid) {
    const ThermalizationStrength s(sv);
    lines.push_back({"energy_conservation", "-", s_label(sv), energy_conservation_check(s),
                     kValidationTolerance});
  }
  for (const auto& t : temperatures) {
    const DensityMatrix tau = gibbs_state(t);
    for (double sv : grid) {
      const ThermalizationStrength s(sv);
      KrausChannel eps = thermal_channel(t, s);
      if (fault_pending) {
        eps = KrausChannel({Complex{0.5, 0.0} * ComplexMatrix::identity(2)});
        fault_pending = false;
      }
      const ChannelReport report = validate_channel(eps);
      lines.push_back({"channel_completeness", t.label(), s_label(sv),
                       std::max(report.completeness_residual, report.trace_preservation_residual),
                       kValidationTolerance});
      lines.push_back({"gibbs_fixed_point", t.label(), s_label(sv),
                       trace_distance(apply_channel(eps, tau.matrix()), tau.matrix()),
                       kValidationTolerance});

      const KrausChannel joint = joint_switch_kraus(eps, eps);
      lines.push_back({"switch_completeness", t.label(), s_label(sv),
                       validate_channel(joint).completeness_residual, kValidationTolerance});

      const DensityMatrix out = protocol_state(t, s, MixingWeight(0.5), ControlState::on());
      const DensityMatrix rho_c = partial_trace(out, {kControlLabel});
      lines.push_back({"free_coherence_routes", t.label(), s_label(sv),
                       std::abs(free_coherence(rho_c, control_basis) -
                                free_coherence_entropy_route(rho_c, control_basis)),
                       kValidationTolerance});
      const double excess = vn_entropy(out) - vn_entropy(partial_trace(out, {kAncillaLabel})) -
                            vn_entropy(partial_trace(out, {kCarrierLabel, kControlLabel}));
      lines.push_back({"subadditivity", t.label(), s_label(sv), std::max(excess, 0.0),
                       kValidationTolerance});
    }
  }
  return lines;
}

CommandResult run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::sweep: return cmd_sweep(cfg);
    case Command::capacity: return cmd_capacity(cfg);
    case Command::turning_point: return cmd_turning_point(cfg);
    case Command::nonmarkov: return cmd_nonmarkov(cfg);
    case Command::emulate: return cmd_emulate(cfg);
    case Command::validate: return cmd_validate(cfg);
  }
  throw UsageError("unknown command");
}

void commit(const CommandResult& result, std::ostream& out) {
  for (const auto& [path, contents] : result.files) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << contents;
    f.flush();
    if (!f) throw IoError("failed writing " + path);
  }
  out << result.stdout_text;
  out.flush();
}

}  // namespace qswitch

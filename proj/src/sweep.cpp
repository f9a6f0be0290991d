#include "qswitch/sweep.hpp"

#include <cmath>

#include "qswitch/errors.hpp"
#include "qswitch/parallel.hpp"

namespace qswitch {

namespace {

// Slopes smaller than this are treated as flat when looking for sign changes.
constexpr double kFlatSlope = 1e-9;
constexpr double kBisectionWidth = 1e-10;

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw UsageError("sweep grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw UsageError("sweep grid leaves [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw UsageError("sweep grid must be strictly increasing");
    }
  }
}

double info_at(const Temperature& t, MixingWeight p, const ControlState& control, double s) {
  return protocol_information(t, ThermalizationStrength(s), p, control);
}

}  // namespace

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw UsageError("grid needs at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  validate_grid(cfg.grid);
  const Basis control_basis = computational_basis(2);
  return parallel_map(cfg.grid.size(), [&](std::size_t i) {
    const ThermalizationStrength s(cfg.grid[i]);
    const DensityMatrix on = protocol_state(cfg.temperature, s, cfg.p, cfg.omega_on);
    const DensityMatrix off = protocol_state(cfg.temperature, s, cfg.p, cfg.omega_off);
    SweepRecord r;
    r.s = s;
    r.i_on = mutual_information(on, protocol_bipartition());
    r.i_off = mutual_information(off, protocol_bipartition());
    r.delta_i = r.i_on - r.i_off;
    r.a_c = free_coherence(partial_trace(on, {kControlLabel}), control_basis);
    return r;
  });
}

double information_slope(const Temperature& t, MixingWeight p, const ControlState& control,
                         double s) {
  static_cast<void>(ThermalizationStrength(s));  // range check
  const double h = kSlopeStep;
  const auto f = [&](double x) { return info_at(t, p, control, x); };
  if (s - h < 0.0) return (-3.0 * f(s) + 4.0 * f(s + h) - f(s + 2 * h)) / (2 * h);
  if (s + h > 1.0) return (3.0 * f(s) - 4.0 * f(s - h) + f(s - 2 * h)) / (2 * h);
  return (f(s + h) - f(s - h)) / (2 * h);
}

TurningPointReport find_turning_point(const Temperature& t, MixingWeight p, bool switch_on) {
  const ControlState control = switch_on ? ControlState::on() : ControlState::off();
  const std::vector<double> grid = uniform_grid(kDefaultGridPoints);
  const std::vector<double> slopes = parallel_map(
      grid.size(), [&](std::size_t i) { return information_slope(t, p, control, grid[i]); });

  TurningPointReport report;
  // Walk the grid remembering the last clearly negative slope so a flat
  // stretch between a decrease and an increase still counts as one turn.
  std::optional<std::size_t> last_negative;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (slopes[i] < -kFlatSlope) {
      last_negative = i;
    } else if (slopes[i] > kFlatSlope && last_negative) {
      double lo = grid[*last_negative];
      double hi = grid[i];
      while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        if (information_slope(t, p, control, mid) < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      report.points.push_back(0.5 * (lo + hi));
      last_negative.reset();
    }
  }
  return report;
}

NonMarkovianity non_markovianity(const Temperature& t, MixingWeight p, bool switch_on) {
  NonMarkovianity n;
  const TurningPointReport tp = find_turning_point(t, p, switch_on);
  if (tp.points.empty()) return n;

  const ControlState control = switch_on ? ControlState::on() : ControlState::off();
  const double s_tp = tp.points.front();
  n.s_tp = s_tp;
  n.i_at_tp = info_at(t, p, control, s_tp);
  n.endpoint_difference = info_at(t, p, control, 1.0) - n.i_at_tp;

  const auto intervals =
      static_cast<std::size_t>(std::ceil((1.0 - s_tp) / kBackflowStep));
  const double h = (1.0 - s_tp) / static_cast<double>(std::max<std::size_t>(intervals, 1));
  const std::vector<double> slopes = parallel_map(intervals + 1, [&](std::size_t k) {
    const double s = k == intervals ? 1.0 : s_tp + h * static_cast<double>(k);
    return information_slope(t, p, control, s);
  });
  double integral = 0.0;
  for (std::size_t k = 0; k < slopes.size(); ++k) {
    if (slopes[k] < -kFlatSlope) n.monotone_after_tp = false;
    const double w = (k == 0 || k + 1 == slopes.size()) ? 0.5 : 1.0;
    integral += w * std::max(slopes[k], 0.0);
  }
  n.integrated = integral * h;
  n.residual = std::abs(n.endpoint_difference - n.integrated);
  return n;
}

}  // namespace qswitch

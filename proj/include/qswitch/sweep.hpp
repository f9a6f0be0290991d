#pragma once

// Thermalization-strength sweeps of I(A:CM), the turning point of the
// switch-on curve and the backflow measure
//
//   N = integral_{s_tp}^{1} (dI/ds) ds   over the increasing part.

#include <optional>
#include <vector>

#include "qswitch/info_measures.hpp"

namespace qswitch {

struct SweepRecord {
  double s = 0.0;
  double i_on = 0.0;
  double i_off = 0.0;
  double delta_i = 0.0;
  double a_c = 0.0;
};

inline constexpr std::size_t kDefaultGridPoints = 101;

/// `points` evenly spaced values on [0, 1], endpoints included (points >= 2).
std::vector<double> uniform_grid(std::size_t points);

struct SweepConfig {
  Temperature temperature = Temperature::zero();
  MixingWeight p{0.5};
  std::vector<double> grid = uniform_grid(kDefaultGridPoints);
  ControlState omega_on = ControlState::on();
  ControlState omega_off = ControlState::off();
};

/// One record per grid point; the grid must be strictly increasing in [0, 1].
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

inline constexpr double kSlopeStep = 1e-4;

/// dI/ds by central differences with step 1e-4, switching to a second-order
/// one-sided stencil within one step of either end of [0, 1].
double information_slope(const Temperature& t, MixingWeight p, const ControlState& control,
                         double s);

struct TurningPointReport {
  std::vector<double> points;  // slope changes sign from - to +, ascending
  bool ambiguous() const { return points.size() > 1; }
  std::optional<double> first() const {
    return points.empty() ? std::nullopt : std::optional<double>(points.front());
  }
};

/// Coarse scan of the slope on the default grid followed by bisection of
/// each bracketed sign change.
TurningPointReport find_turning_point(const Temperature& t, MixingWeight p,
                                      bool switch_on = true);

struct NonMarkovianity {
  std::optional<double> s_tp;
  double i_at_tp = 0.0;
  double endpoint_difference = 0.0;  // I(1) - I(s_tp)
  double integrated = 0.0;           // trapezoid of max(dI/ds, 0) on [s_tp, 1]
  double residual = 0.0;             // |endpoint_difference - integrated|
  bool monotone_after_tp = true;
  double value() const { return endpoint_difference; }
};

inline constexpr double kBackflowStep = 1e-3;

/// Zero in both routes when no turning point exists.
NonMarkovianity non_markovianity(const Temperature& t, MixingWeight p, bool switch_on = true);

}  // namespace qswitch

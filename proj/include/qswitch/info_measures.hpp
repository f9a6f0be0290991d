#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/quantum_switch.hpp"
#include "qswitch/thermal.hpp"

namespace qswitch {

/// Weight p of |gg> in the correlated input p|gg><gg| + (1-p)|ee><ee|.
using MixingWeight = UnitInterval<struct MixingWeightTag>;

inline const std::string kAncillaLabel = "A";
inline const std::string kCarrierLabel = "M";

/// Disjoint label sets covering a layout.
struct Bipartition {
  std::vector<std::string> x;
  std::vector<std::string> y;
};

/// A | (M, C)
Bipartition protocol_bipartition();

using Basis = std::vector<StateVector>;
Basis computational_basis(std::size_t dim);

/// Correlated classical input on (A, M).
DensityMatrix input_state(MixingWeight p);

/// S(X) + S(Y) - S(XY), in bits.
double mutual_information(const DensityMatrix& rho, const Bipartition& part);

/// Removes coherence between the basis vectors: sum_k P_k rho P_k.
/// The basis must be orthonormal within 1e-10 and span the space.
DensityMatrix dephase(const DensityMatrix& rho, const Basis& basis);

/// Tr[rho (log2 rho - log2 D(rho))] evaluated with matrix logarithms.
double free_coherence(const DensityMatrix& rho, const Basis& basis);
/// S(D(rho)) - S(rho); independent route to the same quantity.
double free_coherence_entropy_route(const DensityMatrix& rho, const Basis& basis);
/// kT * A_C, defined only for finite temperatures.
std::optional<double> free_energy_of_coherence(double a_c, const Temperature& t);

/// Output on (A, M, C) of the switched thermal channel with identical baths.
DensityMatrix protocol_state(const Temperature& t, ThermalizationStrength s, MixingWeight p,
                             const ControlState& control);
/// Gibbs-preservation probe on (A, M, C): tau_T on A, and tau_T on M sent
/// through the switch.
DensityMatrix gibbs_probe_state(const Temperature& t, ThermalizationStrength s,
                                const ControlState& control);

/// I(A : CM) of protocol_state.
double protocol_information(const Temperature& t, ThermalizationStrength s, MixingWeight p,
                            const ControlState& control);

struct CapacityResult {
  double p_star = 0.0;
  double i_star = 0.0;
  // 1001-point grid scan over p, run on every call.
  double grid_p_star = 0.0;
  double grid_i_star = 0.0;
  double oracle_gap = 0.0;  // |i_star - grid_i_star|
  std::string search_space = "correlated diagonal inputs p|gg><gg| + (1-p)|ee><ee|";
};

inline constexpr double kCapacityTolerance = 1e-6;
inline constexpr std::size_t kCapacityGridPoints = 1001;

/// Maximizes I(A:CM) over p by golden-section search (tolerance 1e-6 in p)
/// and cross-checks against a uniform grid scan.
CapacityResult holevo_over_family(const Temperature& t, ThermalizationStrength s,
                                  bool switch_on);

}  // namespace qswitch

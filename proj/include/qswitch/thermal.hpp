#pragma once

// Thermodynamically free qubit channels from a single-collision model.
//
// A system qubit with H_S = diag(-1, +1) (gap fixed to 1, basis |g>, |e>)
// collides once with a bath qubit drawn from the Gibbs state tau_T through
// the partial swap U(s) = sqrt(1 - s^2) I + i s SWAP. Tracing out the bath
// qubit gives the channel epsilon(T, s) with Kraus operators
//
//   E_{k,l} = sqrt(p_l) <k|_B U |l>_B
//           = sqrt(p_l) (sqrt(1 - s^2) delta_{kl} I + i s |l><k|),
//
// k, l in {g, e}, p_l the Gibbs populations. U commutes with
// H_S ⊗ I + I ⊗ H_B, so epsilon is a thermal operation and fixes tau_T.

#include <array>
#include <string>
#include <vector>

#include "qswitch/errors.hpp"
#include "qswitch/linalg.hpp"

namespace qswitch {

/// Closed interval [0, 1] scalar with a distinct type per role.
template <class Tag>
class UnitInterval {
 public:
  constexpr UnitInterval() = default;
  explicit UnitInterval(double v);
  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }  // NOLINT: read-only view

 private:
  double value_ = 0.0;
};

/// Thermalization strength s of the partial swap.
using ThermalizationStrength = UnitInterval<struct ThermalizationStrengthTag>;

/// Bath temperature; kT measured in units of the qubit gap.
class Temperature {
 public:
  enum class Kind { zero, infinite, finite };

  static Temperature zero() { return Temperature(Kind::zero, 0.0); }
  static Temperature infinite() { return Temperature(Kind::infinite, 0.0); }
  /// kT > 0, otherwise UsageError.
  static Temperature finite(double kt);
  /// "zero", "inf"/"infinite" or a positive decimal kT.
  static Temperature parse(const std::string& text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  /// Only meaningful for finite temperatures.
  double kt() const { return kt_; }
  /// Inverse of parse(): "zero", "inf" or the shortest decimal for kT.
  std::string label() const;

  /// Populations (p_g, p_e) of the Gibbs state of H = diag(-1, +1).
  std::array<double, 2> gibbs_populations() const;

  friend bool operator==(const Temperature&, const Temperature&) = default;

 private:
  Temperature(Kind kind, double kt) : kind_(kind), kt_(kt) {}
  Kind kind_;
  double kt_;
};

/// Completely positive map given by square Kraus operators of equal dim.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops);
  static KrausChannel identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> ops_;
};

struct ChannelReport {
  double completeness_residual = 0.0;        // max|sum K^dag K - I|
  double trace_preservation_residual = 0.0;  // max over basis projectors |Tr eps(|i><i|) - 1|
  bool accepted = false;                     // both <= kStateTolerance
};

/// diag(-1, +1) in (|g>, |e>) order.
ComplexMatrix qubit_hamiltonian();

DensityMatrix gibbs_state(const Temperature& t);

/// Two-qubit SWAP on system ⊗ bath.
ComplexMatrix swap_gate();
ComplexMatrix partial_swap_unitary(ThermalizationStrength s);

/// max|[U(s), H_S ⊗ I + I ⊗ H_B]|
double energy_conservation_check(ThermalizationStrength s);

/// Four Kraus operators in order (k,l) = (g,g), (g,e), (e,g), (e,e).
/// Zero-population operators are kept as exact zero matrices.
KrausChannel thermal_channel(const Temperature& t, ThermalizationStrength s);

/// Sum_i K_i rho K_i^dag on the raw matrix.
ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho);
/// Output keeps rho's layout and is validated as a state.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// later ∘ earlier, Kraus set {L_i E_j} ordered with i slowest.
KrausChannel compose(const KrausChannel& later, const KrausChannel& earlier);

ChannelReport validate_channel(const KrausChannel& ch);

// ---------------------------------------------------------------------------

template <class Tag>
UnitInterval<Tag>::UnitInterval(double v) : value_(v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw UsageError("value " + std::to_string(v) + " outside [0, 1]");
  }
}

}  // namespace qswitch

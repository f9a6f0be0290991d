#pragma once

// Quantum switch of two qubit channels controlled by a qubit C.
//
//   S_omega(E, F)(rho) = sum_ij W_ij (rho ⊗ omega) W_ij^dag,
//   W_ij = E_i F_j ⊗ |0><0| + F_j E_i ⊗ |1><1|.
//
// switched_channel(eps1, eps2, omega) takes E = eps2 and F = eps1, so the
// |0> branch applies eps1 first and then eps2; |1> reverses the order.

#include <span>
#include <string>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/thermal.hpp"

namespace qswitch {

inline const std::string kControlLabel = "C";

/// Single-qubit control state omega.
class ControlState {
 public:
  explicit ControlState(DensityMatrix omega);
  /// |+><+|: both orders in superposition.
  static ControlState on();
  /// |0><0|: definite order, eps1 then eps2.
  static ControlState off();

  const DensityMatrix& omega() const { return omega_; }

 private:
  DensityMatrix omega_;
};

/// W_ij for all (i, j), i slowest. Operators act on carrier ⊗ control.
std::vector<ComplexMatrix> switch_kraus(std::span<const ComplexMatrix> e_ops,
                                        std::span<const ComplexMatrix> f_ops);

/// The switch with a fixed control, viewed as a map from the carrier to
/// carrier ⊗ control.
class SwitchedChannel {
 public:
  SwitchedChannel(const KrausChannel& eps1, const KrausChannel& eps2, ControlState control);

  /// Kraus set {W_ij} on carrier ⊗ control.
  const KrausChannel& kraus() const { return kraus_; }
  const ControlState& control() const { return control_; }

  /// Output layout: rho's layout followed by the control qubit "C".
  DensityMatrix operator()(const DensityMatrix& rho) const;

 private:
  KrausChannel kraus_;
  ControlState control_;
};

SwitchedChannel switched_channel(const KrausChannel& eps1, const KrausChannel& eps2,
                                 const ControlState& control);

/// Kraus operators I_A ⊗ W_ij acting on A ⊗ M ⊗ C.
KrausChannel joint_switch_kraus(const KrausChannel& eps1, const KrausChannel& eps2);

/// Applies the switch to the second qubit of a two-qubit state, leaving the
/// first untouched. rho_am must carry a two-qubit layout; the output layout
/// is (A, M, C) with the input's labels for the first two factors.
DensityMatrix apply_switch_joint(const DensityMatrix& rho_am, const KrausChannel& eps1,
                                 const KrausChannel& eps2, const ControlState& control);

}  // namespace qswitch

#include "qswitch/quantum_switch.hpp"

#include <cmath>

#include "qswitch/errors.hpp"

namespace qswitch {

namespace {

const ComplexMatrix& control_projector(std::size_t branch) {
  static const ComplexMatrix kP0 = ComplexMatrix::unit(2, 0, 0);
  static const ComplexMatrix kP1 = ComplexMatrix::unit(2, 1, 1);
  return branch == 0 ? kP0 : kP1;
}

SubsystemLayout control_layout() { return SubsystemLayout{{kControlLabel, 2}}; }

}  // namespace

ControlState::ControlState(DensityMatrix omega) : omega_(std::move(omega)) {
  if (omega_.dim() != 2) throw UsageError("ControlState: control must be a qubit");
  omega_ = omega_.relabeled(control_layout());
}

ControlState ControlState::on() {
  const double a = 1.0 / std::sqrt(2.0);
  const Complex plus[] = {a, a};
  return ControlState(DensityMatrix(ComplexMatrix::projector(plus)));
}

ControlState ControlState::off() {
  return ControlState(DensityMatrix(ComplexMatrix::unit(2, 0, 0)));
}

std::vector<ComplexMatrix> switch_kraus(std::span<const ComplexMatrix> e_ops,
                                        std::span<const ComplexMatrix> f_ops) {
  for (const auto& op : e_ops) {
    if (op.dim() != 2) throw UsageError("switch_kraus: channels must act on a qubit");
  }
  for (const auto& op : f_ops) {
    if (op.dim() != 2) throw UsageError("switch_kraus: channels must act on a qubit");
  }
  std::vector<ComplexMatrix> w;
  w.reserve(e_ops.size() * f_ops.size());
  for (const auto& e : e_ops) {
    for (const auto& f : f_ops) {
      ComplexMatrix wij = kron(e * f, control_projector(0));
      wij += kron(f * e, control_projector(1));
      w.push_back(std::move(wij));
    }
  }
  return w;
}

SwitchedChannel::SwitchedChannel(const KrausChannel& eps1, const KrausChannel& eps2,
                                 ControlState control)
    : kraus_(switch_kraus(eps2.ops(), eps1.ops())), control_(std::move(control)) {}

DensityMatrix SwitchedChannel::operator()(const DensityMatrix& rho) const {
  if (rho.dim() != 2) throw UsageError("switched channel: carrier must be a qubit");
  const DensityMatrix input = tensor(rho, control_.omega());
  return apply_channel(kraus_, input);
}

SwitchedChannel switched_channel(const KrausChannel& eps1, const KrausChannel& eps2,
                                 const ControlState& control) {
  return SwitchedChannel(eps1, eps2, control);
}

KrausChannel joint_switch_kraus(const KrausChannel& eps1, const KrausChannel& eps2) {
  const std::vector<ComplexMatrix> w = switch_kraus(eps2.ops(), eps1.ops());
  const ComplexMatrix id = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> ops;
  ops.reserve(w.size());
  for (const auto& wij : w) ops.push_back(kron(id, wij));
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_switch_joint(const DensityMatrix& rho_am, const KrausChannel& eps1,
                                 const KrausChannel& eps2, const ControlState& control) {
  const auto& parts = rho_am.layout().parts();
  if (parts.size() != 2 || parts[0].dim != 2 || parts[1].dim != 2) {
    throw UsageError("apply_switch_joint: expected a two-qubit (A, M) layout");
  }
  if (rho_am.layout().contains(kControlLabel)) {
    throw UsageError("apply_switch_joint: input already carries a control label");
  }
  const DensityMatrix input = tensor(rho_am, control.omega());
  return apply_channel(joint_switch_kraus(eps1, eps2), input);
}

}  // namespace qswitch

#include "qswitch/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qswitch/errors.hpp"

namespace qswitch {

Bipartition protocol_bipartition() {
  return Bipartition{{kAncillaLabel}, {kCarrierLabel, kControlLabel}};
}

Basis computational_basis(std::size_t dim) {
  Basis basis(dim, StateVector(dim));
  for (std::size_t i = 0; i < dim; ++i) basis[i][i] = 1.0;
  return basis;
}

DensityMatrix input_state(MixingWeight p) {
  return DensityMatrix(ComplexMatrix::diagonal({p.value(), 0.0, 0.0, 1.0 - p.value()}),
                       SubsystemLayout::qubits({kAncillaLabel, kCarrierLabel}));
}

double mutual_information(const DensityMatrix& rho, const Bipartition& part) {
  if (part.x.empty() || part.y.empty()) {
    throw UsageError("mutual_information: both sides of the bipartition must be nonempty");
  }
  std::set<std::string> seen;
  for (const auto* side : {&part.x, &part.y}) {
    for (const auto& label : *side) {
      rho.layout().index_of(label);
      if (!seen.insert(label).second) {
        throw UsageError("mutual_information: label '" + label + "' appears twice");
      }
    }
  }
  if (seen.size() != rho.layout().size()) {
    throw UsageError("mutual_information: bipartition does not cover the layout");
  }
  return vn_entropy(partial_trace(rho, part.x)) + vn_entropy(partial_trace(rho, part.y)) -
         vn_entropy(rho);
}

namespace {

void require_orthonormal(const Basis& basis, std::size_t dim) {
  if (basis.size() != dim) throw UsageError("dephase: basis does not span the space");
  for (std::size_t i = 0; i < dim; ++i) {
    if (basis[i].size() != dim) throw UsageError("dephase: basis vector has wrong length");
    for (std::size_t j = i; j < dim; ++j) {
      Complex overlap{};
      for (std::size_t k = 0; k < dim; ++k) overlap += std::conj(basis[i][k]) * basis[j][k];
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > kStateTolerance) {
        throw UsageError("dephase: basis is not orthonormal");
      }
    }
  }
}

// log2 on the support; zero eigenvalues map to zero.
ComplexMatrix support_log2(const ComplexMatrix& m) {
  EigenSystem es = eig_hermitian(m);
  es.values = clamp_spectrum(es.values);
  return apply_spectral(es, [](double x) { return x > 0.0 ? std::log2(x) : 0.0; });
}

}  // namespace

DensityMatrix dephase(const DensityMatrix& rho, const Basis& basis) {
  require_orthonormal(basis, rho.dim());
  ComplexMatrix out(rho.dim());
  for (const auto& v : basis) {
    const ComplexMatrix proj = ComplexMatrix::projector(v);
    out += proj * rho.matrix() * proj;
  }
  return DensityMatrix(std::move(out), rho.layout());
}

double free_coherence(const DensityMatrix& rho, const Basis& basis) {
  const DensityMatrix dephased = dephase(rho, basis);
  const ComplexMatrix diff = support_log2(rho.matrix()) - support_log2(dephased.matrix());
  return (rho.matrix() * diff).trace().real();
}

double free_coherence_entropy_route(const DensityMatrix& rho, const Basis& basis) {
  return vn_entropy(dephase(rho, basis)) - vn_entropy(rho);
}

std::optional<double> free_energy_of_coherence(double a_c, const Temperature& t) {
  if (!t.is_finite()) return std::nullopt;
  return t.kt() * a_c;
}

DensityMatrix protocol_state(const Temperature& t, ThermalizationStrength s, MixingWeight p,
                             const ControlState& control) {
  const KrausChannel eps = thermal_channel(t, s);
  return apply_switch_joint(input_state(p), eps, eps, control);
}

DensityMatrix gibbs_probe_state(const Temperature& t, ThermalizationStrength s,
                                const ControlState& control) {
  const DensityMatrix tau = gibbs_state(t);
  const DensityMatrix in = tensor(tau.relabeled(SubsystemLayout{{kAncillaLabel, 2}}),
                                  tau.relabeled(SubsystemLayout{{kCarrierLabel, 2}}));
  const KrausChannel eps = thermal_channel(t, s);
  return apply_switch_joint(in, eps, eps, control);
}

double protocol_information(const Temperature& t, ThermalizationStrength s, MixingWeight p,
                            const ControlState& control) {
  return mutual_information(protocol_state(t, s, p, control), protocol_bipartition());
}

CapacityResult holevo_over_family(const Temperature& t, ThermalizationStrength s,
                                  bool switch_on) {
  const ControlState control = switch_on ? ControlState::on() : ControlState::off();
  const KrausChannel joint = joint_switch_kraus(thermal_channel(t, s), thermal_channel(t, s));
  const auto info = [&](double p) {
    const DensityMatrix in = tensor(input_state(MixingWeight(p)), control.omega());
    return mutual_information(apply_channel(joint, in), protocol_bipartition());
  };

  CapacityResult result;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = info(x1);
  double f2 = info(x2);
  while (hi - lo > kCapacityTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = info(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = info(x1);
    }
  }
  result.p_star = 0.5 * (lo + hi);
  result.i_star = info(result.p_star);
  // The maximum can sit on the boundary of [0, 1].
  for (double edge : {0.0, 1.0}) {
    const double f = info(edge);
    if (f > result.i_star) {
      result.p_star = edge;
      result.i_star = f;
    }
  }

  result.grid_i_star = -1.0;
  for (std::size_t k = 0; k < kCapacityGridPoints; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(kCapacityGridPoints - 1);
    const double f = info(p);
    if (f > result.grid_i_star) {
      result.grid_i_star = f;
      result.grid_p_star = p;
    }
  }
  result.oracle_gap = std::abs(result.i_star - result.grid_i_star);
  return result;
}

}  // namespace qswitch

#include "qswitch/thermal.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace qswitch {

Temperature Temperature::finite(double kt) {
  if (!(kt > 0.0) || !std::isfinite(kt)) {
    throw UsageError("finite temperature requires 0 < kT < inf");
  }
  return Temperature(Kind::finite, kt);
}

Temperature Temperature::parse(const std::string& text) {
  if (text == "zero" || text == "0") return zero();
  if (text == "inf" || text == "infinite") return infinite();
  double kt = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, kt);
  if (ec != std::errc{} || ptr != last) {
    throw UsageError("temperature must be 'zero', 'inf' or a positive kT, got '" + text + "'");
  }
  return finite(kt);
}

std::string Temperature::label() const {
  switch (kind_) {
    case Kind::zero: return "zero";
    case Kind::infinite: return "inf";
    case Kind::finite: break;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, kt_);
  return std::string(buf, res.ptr);
}

std::array<double, 2> Temperature::gibbs_populations() const {
  switch (kind_) {
    case Kind::zero: return {1.0, 0.0};
    case Kind::infinite: return {0.5, 0.5};
    case Kind::finite: break;
  }
  // p_g = e^{1/kT} / Z, p_e = e^{-1/kT} / Z, written to avoid overflow.
  const double p_e = 1.0 / (1.0 + std::exp(2.0 / kt_));
  return {1.0 - p_e, p_e};
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw UsageError("KrausChannel: no operators");
  dim_ = ops_.front().dim();
  for (const auto& k : ops_) {
    if (k.dim() != dim_) throw UsageError("KrausChannel: operators differ in dimension");
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return KrausChannel({ComplexMatrix::identity(dim)});
}

ComplexMatrix qubit_hamiltonian() { return ComplexMatrix::diagonal({-1.0, 1.0}); }

DensityMatrix gibbs_state(const Temperature& t) {
  const auto [p_g, p_e] = t.gibbs_populations();
  return DensityMatrix(ComplexMatrix::diagonal({p_g, p_e}));
}

ComplexMatrix swap_gate() {
  return ComplexMatrix{{1, 0, 0, 0},
                       {0, 0, 1, 0},
                       {0, 1, 0, 0},
                       {0, 0, 0, 1}};
}

ComplexMatrix partial_swap_unitary(ThermalizationStrength s) {
  const double c = std::sqrt(1.0 - s * s);
  ComplexMatrix u = ComplexMatrix::identity(4);
  u *= c;
  u.add_scaled(Complex{0.0, s}, swap_gate());
  return u;
}

double energy_conservation_check(ThermalizationStrength s) {
  const ComplexMatrix h = qubit_hamiltonian();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix h_total = kron(h, id) + kron(id, h);
  const ComplexMatrix u = partial_swap_unitary(s);
  return (u * h_total - h_total * u).max_abs();
}

KrausChannel thermal_channel(const Temperature& t, ThermalizationStrength s) {
  const auto pops = t.gibbs_populations();
  const double c = std::sqrt(1.0 - s * s);
  std::vector<ComplexMatrix> ops;
  ops.reserve(4);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t l = 0; l < 2; ++l) {
      ComplexMatrix e(2);
      if (k == l) e = Complex{c, 0.0} * ComplexMatrix::identity(2);
      e.add_scaled(Complex{0.0, s}, ComplexMatrix::unit(2, l, k));
      e *= std::sqrt(pops[l]);
      ops.push_back(std::move(e));
    }
  }
  return KrausChannel(std::move(ops));
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.dim() != ch.dim()) throw UsageError("apply_channel: dimension mismatch");
  ComplexMatrix out(rho.dim());
  for (const auto& k : ch.ops()) out += sandwich(k, rho);
  return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(apply_channel(ch, rho.matrix()), rho.layout());
}

KrausChannel compose(const KrausChannel& later, const KrausChannel& earlier) {
  if (later.dim() != earlier.dim()) throw UsageError("compose: dimension mismatch");
  std::vector<ComplexMatrix> ops;
  ops.reserve(later.ops().size() * earlier.ops().size());
  for (const auto& l : later.ops()) {
    for (const auto& e : earlier.ops()) ops.push_back(l * e);
  }
  return KrausChannel(std::move(ops));
}

ChannelReport validate_channel(const KrausChannel& ch) {
  const std::size_t n = ch.dim();
  ComplexMatrix gram(n);
  for (const auto& k : ch.ops()) gram += k.adjoint() * k;
  ChannelReport report;
  report.completeness_residual = max_abs_diff(gram, ComplexMatrix::identity(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Complex tr = apply_channel(ch, ComplexMatrix::unit(n, i, i)).trace();
    report.trace_preservation_residual =
        std::max(report.trace_preservation_residual, std::abs(tr - Complex{1.0, 0.0}));
  }
  report.accepted = report.completeness_residual <= kStateTolerance &&
                    report.trace_preservation_residual <= kStateTolerance;
  return report;
}

}  // namespace qswitch

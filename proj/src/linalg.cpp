#include "qswitch/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qswitch/errors.hpp"
#include "qswitch/kernels.hpp"

namespace qswitch {

// ---------------------------------------------------------------- matrix --

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw UsageError("ComplexMatrix: entry count is not dim*dim");
  }
  if (!is_finite()) throw ValidityError("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw UsageError("ComplexMatrix: rows must form a square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!is_finite()) throw ValidityError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> entries) {
  return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t row, std::size_t col) {
  if (row >= dim || col >= dim) throw UsageError("ComplexMatrix::unit: index out of range");
  ComplexMatrix m(dim);
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::hermiticity_residual() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  return add_scaled(1.0, rhs);
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  return add_scaled(-1.0, rhs);
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  kernels::cscale(scale, data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(Complex scale, const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw UsageError("ComplexMatrix: dimension mismatch");
  kernels::caxpy(scale, rhs.data_, data_);
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw UsageError("ComplexMatrix: dimension mismatch in product");
  ComplexMatrix out(lhs.dim_);
  kernels::cmatmul(lhs.data_, rhs.data_, out.data_, lhs.dim_, lhs.dim_, lhs.dim_);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw UsageError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  std::span<Complex> dst = out.data();
  std::span<const Complex> src = b.data();
  for (std::size_t ar = 0; ar < na; ++ar) {
    for (std::size_t br = 0; br < nb; ++br) {
      const std::size_t row = ar * nb + br;
      for (std::size_t ac = 0; ac < na; ++ac) {
        kernels::cscale(a(ar, ac), src.subspan(br * nb, nb),
                        dst.subspan(row * na * nb + ac * nb, nb));
      }
    }
  }
  return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  if (factors.size() == 0) throw UsageError("kron: no factors");
  auto it = factors.begin();
  ComplexMatrix out = *it;
  for (++it; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

ComplexMatrix sandwich(const ComplexMatrix& k, const ComplexMatrix& rho) {
  return k * rho * k.adjoint();
}

// ---------------------------------------------------------------- layout --

SubsystemLayout::SubsystemLayout(std::vector<Part> parts) : parts_(std::move(parts)) {
  std::set<std::string> seen;
  for (const Part& p : parts_) {
    if (p.dim == 0) throw UsageError("SubsystemLayout: zero dimension for '" + p.label + "'");
    if (!seen.insert(p.label).second) {
      throw UsageError("SubsystemLayout: duplicate label '" + p.label + "'");
    }
  }
}

SubsystemLayout::SubsystemLayout(std::initializer_list<Part> parts)
    : SubsystemLayout(std::vector<Part>(parts)) {}

SubsystemLayout SubsystemLayout::flat(std::size_t dim) { return SubsystemLayout{{"0", dim}}; }

SubsystemLayout SubsystemLayout::qubits(std::initializer_list<std::string> labels) {
  std::vector<Part> parts;
  for (const auto& l : labels) parts.push_back({l, 2});
  return SubsystemLayout(std::move(parts));
}

std::size_t SubsystemLayout::total_dim() const {
  return std::accumulate(parts_.begin(), parts_.end(), std::size_t{1},
                         [](std::size_t acc, const Part& p) { return acc * p.dim; });
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].label == label) return i;
  }
  throw UsageError("unknown subsystem label '" + label + "'");
}

bool SubsystemLayout::contains(const std::string& label) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Part& p) { return p.label == label; });
}

std::vector<std::string> SubsystemLayout::labels() const {
  std::vector<std::string> out;
  for (const Part& p : parts_) out.push_back(p.label);
  return out;
}

SubsystemLayout SubsystemLayout::appended(const SubsystemLayout& other) const {
  std::vector<Part> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return SubsystemLayout(std::move(parts));
}

// ---------------------------------------------------------------- states --

namespace {

void validate_state(const ComplexMatrix& m) {
  if (m.dim() == 0) throw ValidityError("density matrix: empty");
  if (!m.is_finite()) throw ValidityError("density matrix: non-finite entry");
  const double herm = m.hermiticity_residual();
  if (herm > kStateTolerance) {
    std::ostringstream os;
    os << "density matrix: Hermiticity residual " << herm;
    throw ValidityError(os.str());
  }
  const double tr_err = std::abs(m.trace() - Complex{1.0, 0.0});
  if (tr_err > kStateTolerance) {
    std::ostringstream os;
    os << "density matrix: trace deviates from 1 by " << tr_err;
    throw ValidityError(os.str());
  }
  const EigenSystem es = eig_hermitian(m);
  if (es.values.front() < -kStateTolerance) {
    std::ostringstream os;
    os << "density matrix: eigenvalue " << es.values.front() << " below PSD tolerance";
    throw ValidityError(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (layout_.total_dim() != matrix_.dim()) {
    throw UsageError("DensityMatrix: layout dimension does not match matrix");
  }
  validate_state(matrix_);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : DensityMatrix(matrix, SubsystemLayout::flat(matrix.dim())) {}

DensityMatrix DensityMatrix::relabeled(SubsystemLayout layout) const {
  return DensityMatrix(matrix_, std::move(layout));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()), a.layout().appended(b.layout()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::string> keep) {
  if (keep.empty()) throw UsageError("partial_trace: keep list is empty");
  if (layout.total_dim() != m.dim()) {
    throw UsageError("partial_trace: layout dimension does not match matrix");
  }
  const auto& parts = layout.parts();
  std::vector<bool> kept(parts.size(), false);
  for (const std::string& label : keep) {
    const std::size_t idx = layout.index_of(label);
    if (kept[idx]) throw UsageError("partial_trace: label '" + label + "' repeated");
    kept[idx] = true;
  }

  // Split every full index into (kept index, traced index), both big-endian.
  const std::size_t n = m.dim();
  std::vector<std::size_t> keep_idx(n);
  std::vector<std::size_t> trace_idx(n);
  std::size_t keep_dim = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (kept[i]) keep_dim *= parts[i].dim;
  }
  for (std::size_t full = 0; full < n; ++full) {
    std::size_t rest = full;
    std::size_t k = 0, kstride = 1, t = 0, tstride = 1;
    for (std::size_t i = parts.size(); i-- > 0;) {
      const std::size_t digit = rest % parts[i].dim;
      rest /= parts[i].dim;
      if (kept[i]) {
        k += digit * kstride;
        kstride *= parts[i].dim;
      } else {
        t += digit * tstride;
        tstride *= parts[i].dim;
      }
    }
    keep_idx[full] = k;
    trace_idx[full] = t;
  }

  ComplexMatrix out(keep_dim);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (trace_idx[r] == trace_idx[c]) out(keep_idx[r], keep_idx[c]) += m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.layout(), keep);
  std::vector<SubsystemLayout::Part> parts;
  for (const auto& p : rho.layout().parts()) {
    if (std::find(keep.begin(), keep.end(), p.label) != keep.end()) parts.push_back(p);
  }
  return DensityMatrix(std::move(reduced), SubsystemLayout(std::move(parts)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep) {
  return partial_trace(rho, std::span<const std::string>(keep.begin(), keep.size()));
}

// ------------------------------------------------------------- spectrum --

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  if (m.dim() == 0) throw UsageError("eig_hermitian: empty matrix");
  if (m.hermiticity_residual() > kHermitianInputTolerance) {
    throw UsageError("eig_hermitian: matrix is not Hermitian");
  }
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) throw ValidityError("eig_hermitian: no convergence");

  EigenSystem es{std::vector<double>(m.dim()), ComplexMatrix(m.dim())};
  for (Eigen::Index k = 0; k < n; ++k) {
    es.values[k] = solver.eigenvalues()(k);
    for (Eigen::Index r = 0; r < n; ++r) es.vectors(r, k) = solver.eigenvectors()(r, k);
  }
  return es;
}

std::vector<double> clamp_spectrum(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) {
    if (v < -kStateTolerance) {
      std::ostringstream os;
      os << "eigenvalue " << v << " below PSD tolerance";
      throw ValidityError(os.str());
    }
    if (v < 0.0) v = 0.0;
  }
  return out;
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : clamp_spectrum(probabilities)) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double binary_entropy(double p) {
  const double probs[] = {p, 1.0 - p};
  return shannon_entropy(probs);
}

double vn_entropy(const ComplexMatrix& rho) {
  return shannon_entropy(eig_hermitian(rho).values);
}

double vn_entropy(const DensityMatrix& rho) { return vn_entropy(rho.matrix()); }

namespace {

void require_same_dims(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw UsageError(std::string(what) + ": dimension mismatch");
}

}  // namespace

double root_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dims(rho, sigma, "fidelity");
  const EigenSystem es = eig_hermitian(rho.matrix());
  const std::vector<double> lam = clamp_spectrum(es.values);
  EigenSystem clamped{lam, es.vectors};
  const ComplexMatrix sqrt_rho = apply_spectral(clamped, [](double x) { return std::sqrt(x); });
  ComplexMatrix inner = sandwich(sqrt_rho, sigma.matrix());
  const EigenSystem inner_es = eig_hermitian(inner);
  double f = 0.0;
  for (double v : inner_es.values) {
    if (v > 0.0) f += std::sqrt(v);
  }
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = root_fidelity(rho, sigma);
  return f * f;
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw UsageError("trace_distance: dimension mismatch");
  const EigenSystem es = eig_hermitian(rho - sigma);
  double sum = 0.0;
  for (double v : es.values) sum += std::abs(v);
  return 0.5 * sum;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dims(rho, sigma, "trace_distance");
  return trace_distance(rho.matrix(), sigma.matrix());
}

}  // namespace qswitch

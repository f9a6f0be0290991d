#pragma once

// Dense complex linear algebra for small (<= 16 x 16) quantum states and
// operators. Basis index 0 is |g> (or |0>) and index 1 is |e> (or |1>) on
// every qubit; multi-qubit indices are big-endian in layout order.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qswitch {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kHermitianInputTolerance = 1e-8;

/// Square, row-major complex matrix with finite entries.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> entries);
  static ComplexMatrix diagonal(std::initializer_list<double> entries);
  /// |v><v|
  static ComplexMatrix projector(std::span<const Complex> v);
  /// |row><col| in a dim-dimensional space.
  static ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;
  bool is_finite() const;
  /// max |m_ij - conj(m_ji)|
  double hermiticity_residual() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);
  /// this += scale * rhs
  ComplexMatrix& add_scaled(Complex scale, const ComplexMatrix& rhs);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|; throws UsageError on dimension mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// a ⊗ b
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);

/// K rho K^dagger
ComplexMatrix sandwich(const ComplexMatrix& k, const ComplexMatrix& rho);

/// Ordered, labeled tensor factors. Labels are unique and dims positive.
class SubsystemLayout {
 public:
  struct Part {
    std::string label;
    std::size_t dim;
    friend bool operator==(const Part&, const Part&) = default;
  };

  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Part> parts);
  SubsystemLayout(std::initializer_list<Part> parts);
  /// Single unlabeled-by-convention factor ("0") of the given dim.
  static SubsystemLayout flat(std::size_t dim);
  /// Qubits with the given labels.
  static SubsystemLayout qubits(std::initializer_list<std::string> labels);

  const std::vector<Part>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  std::size_t total_dim() const;
  /// Position of label; throws UsageError when absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;
  std::vector<std::string> labels() const;
  SubsystemLayout appended(const SubsystemLayout& other) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<Part> parts_;
};

/// Trace-one positive-semidefinite Hermitian matrix tied to a layout.
///
/// Construction validates against kStateTolerance: Hermitian residual,
/// |trace - 1| and minimum eigenvalue >= -tolerance. Violations throw
/// ValidityError; a layout whose total dim differs from the matrix dim
/// throws UsageError.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, SubsystemLayout layout);
  /// Single-factor layout.
  explicit DensityMatrix(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return matrix_.dim(); }

  /// Same matrix, relabeled; dims must agree.
  DensityMatrix relabeled(SubsystemLayout layout) const;

 private:
  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

/// rho ⊗ sigma with concatenated layouts.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`, factors in their original layout order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep);
/// Raw-matrix variant used where the operand is not (yet) a valid state.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::string> keep);

struct EigenSystem {
  std::vector<double> values;   // ascending
  ComplexMatrix vectors;        // orthonormal columns, column k <-> values[k]
};

/// Eigen-decomposition of a Hermitian matrix (residual <= 1e-8 required,
/// UsageError otherwise). The Hermitian part is decomposed.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// V diag(f(lambda)) V^dagger
template <class F>
ComplexMatrix apply_spectral(const EigenSystem& es, F&& f);

/// Eigenvalues in (-1e-10, 0) become 0; anything more negative throws
/// ValidityError.
std::vector<double> clamp_spectrum(std::span<const double> values);

/// -sum lambda log2 lambda with 0 log 0 = 0, in bits.
double vn_entropy(const DensityMatrix& rho);
double vn_entropy(const ComplexMatrix& rho);
/// Same functional on an explicit probability vector.
double shannon_entropy(std::span<const double> probabilities);
double binary_entropy(double p);

/// Squared Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// Amplitude convention, Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double root_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2) sum |lambda_i(rho - sigma)|
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

// ---------------------------------------------------------------------------

template <class F>
ComplexMatrix apply_spectral(const EigenSystem& es, F&& f) {
  const std::size_t n = es.vectors.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(es.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = es.vectors(r, k) * fk;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(es.vectors(c, k));
    }
  }
  return out;
}

}  // namespace qswitch

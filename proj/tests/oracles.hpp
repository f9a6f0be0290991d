#pragma once

// Test-only reference computations. Nothing here calls the library's
// eigensolver, partial trace or Kraus machinery.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qswitch/linalg.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

inline Dense to_dense(const qswitch::ComplexMatrix& m) {
  Dense d(m.dim(), std::vector<Complex>(m.dim()));
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) d[r][c] = m(r, c);
  return d;
}

inline qswitch::ComplexMatrix from_dense(const Dense& d) {
  qswitch::ComplexMatrix m(d.size());
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < d.size(); ++c) m(r, c) = d[r][c];
  return m;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense out(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Dense adjoint(const Dense& a) {
  const std::size_t n = a.size();
  Dense out(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j][i] = std::conj(a[i][j]);
  return out;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi on the real symmetric
/// embedding [[Re, -Im], [Im, Re]], whose spectrum repeats each eigenvalue.
inline std::vector<double> hermitian_eigenvalues(const Dense& h) {
  const std::size_t n = h.size();
  const std::size_t m = 2 * n;
  std::vector<std::vector<double>> a(m, std::vector<double>(m));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      a[r][c] = h[r][c].real();
      a[r + n][c + n] = h[r][c].real();
      a[r][c + n] = -h[r][c].imag();
      a[r + n][c] = h[r][c].imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = a[i][i];
  std::sort(diag.begin(), diag.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < m; i += 2) out.push_back(0.5 * (diag[i] + diag[i + 1]));
  return out;
}

inline double entropy_bits(const Dense& rho) {
  double s = 0.0;
  for (double v : hermitian_eigenvalues(rho)) {
    if (v > 1e-14) s -= v * std::log2(v);
  }
  return s;
}

/// Reduced matrix of a qubit register keeping the listed qubit positions
/// (0 = most significant), by explicit index arithmetic.
inline Dense reduce_qubits(const Dense& rho, std::size_t qubits, const std::vector<std::size_t>& keep) {
  const std::size_t n = rho.size();
  const std::size_t kd = std::size_t{1} << keep.size();
  Dense out(kd, std::vector<Complex>(kd));
  auto bit = [&](std::size_t idx, std::size_t q) { return (idx >> (qubits - 1 - q)) & 1U; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      bool traced_equal = true;
      for (std::size_t q = 0; q < qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end() && bit(r, q) != bit(c, q)) {
          traced_equal = false;
        }
      }
      if (!traced_equal) continue;
      std::size_t kr = 0, kc = 0;
      for (std::size_t q : keep) {
        kr = (kr << 1) | bit(r, q);
        kc = (kc << 1) | bit(c, q);
      }
      out[kr][kc] += rho[r][c];
    }
  }
  return out;
}

/// Tr_B[U (rho ⊗ diag(p_g, p_e)) U^dag] with U = sqrt(1-s^2) I + i s SWAP.
inline Dense collision_channel(const Dense& rho, double p_g, double p_e, double s) {
  const double c = std::sqrt(1.0 - s * s);
  Dense u(4, std::vector<Complex>(4));
  for (std::size_t i = 0; i < 4; ++i) u[i][i] = c;
  // SWAP maps |ab> -> |ba>; index = 2a + b.
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) u[2 * b + a][2 * a + b] += Complex{0.0, s};
  const double tau[2] = {p_g, p_e};
  Dense joint(4, std::vector<Complex>(4));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < 2; ++k) joint[2 * a + k][2 * b + k] = rho[a][b] * tau[k];
  const Dense evolved = matmul(matmul(u, joint), adjoint(u));
  Dense out(2, std::vector<Complex>(2));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < 2; ++k) out[a][b] += evolved[2 * a + k][2 * b + k];
  return out;
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

// ----------------------------------------------------------- generators --

inline qswitch::ComplexMatrix random_ginibre(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  qswitch::ComplexMatrix m(n);
  for (auto& z : m.data()) z = Complex{g(rng), g(rng)};
  return m;
}

/// Random full-rank density matrix G G^dag / Tr.
inline qswitch::ComplexMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  const qswitch::ComplexMatrix g = random_ginibre(n, rng);
  qswitch::ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  qswitch::ComplexMatrix sym = rho + rho.adjoint();
  sym *= 0.5;
  return sym;
}

inline qswitch::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const qswitch::ComplexMatrix g = random_ginibre(n, rng);
  qswitch::ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

/// Unitary from Gram-Schmidt on the columns of a Ginibre matrix.
inline qswitch::ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  qswitch::ComplexMatrix g = random_ginibre(n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap{};
      for (std::size_t r = 0; r < n; ++r) overlap += std::conj(g(r, prev)) * g(r, c);
      for (std::size_t r = 0; r < n; ++r) g(r, c) -= overlap * g(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
  }
  return g;
}

}  // namespace oracle

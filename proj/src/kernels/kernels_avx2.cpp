// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "qswitch/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace qswitch::kernels::detail {
namespace {

// One __m256d holds two complex<double> as [re0, im0, re1, im1].
// (ar + i ai) * (br + i bi) = fmaddsub(ar, b, ai * swap(b)).
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d b_swapped = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, b_swapped));
}

void cmatmul_avx2(const Complex* a, const Complex* b, Complex* c,
                  std::size_t rows, std::size_t inner, std::size_t cols) {
  const std::size_t vec_cols = cols & ~std::size_t{1};
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * cols);
    std::size_t j = 0;
    for (; j < vec_cols; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < inner; ++k) {
        const Complex aik = a[i * inner + k];
        const __m256d ar = _mm256_set1_pd(aik.real());
        const __m256d ai = _mm256_set1_pd(aik.imag());
        const __m256d bv = _mm256_loadu_pd(
            reinterpret_cast<const double*>(b + k * cols + j));
        acc = _mm256_add_pd(acc, cmul_bcast(ar, ai, bv));
      }
      _mm256_storeu_pd(crow + 2 * j, acc);
    }
    for (; j < cols; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t k = 0; k < inner; ++k) {
        const Complex aik = a[i * inner + k];
        const Complex bkj = b[k * cols + j];
        re += aik.real() * bkj.real() - aik.imag() * bkj.imag();
        im += aik.real() * bkj.imag() + aik.imag() * bkj.real();
      }
      c[i * cols + j] = Complex{re, im};
    }
  }
}

void caxpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    double* yp = reinterpret_cast<double*>(y + i);
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    _mm256_storeu_pd(yp, _mm256_add_pd(_mm256_loadu_pd(yp), cmul_bcast(ar, ai, xv)));
  }
  for (; i < n; ++i) {
    y[i] += Complex{alpha.real() * x[i].real() - alpha.imag() * x[i].imag(),
                    alpha.real() * x[i].imag() + alpha.imag() * x[i].real()};
  }
}

void cscale_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i), cmul_bcast(ar, ai, xv));
  }
  for (; i < n; ++i) {
    y[i] = Complex{alpha.real() * x[i].real() - alpha.imag() * x[i].imag(),
                   alpha.real() * x[i].imag() + alpha.imag() * x[i].real()};
  }
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable* avx2_table() {
  static constexpr KernelTable kTable{cmatmul_avx2, caxpy_avx2, cscale_avx2,
                                      dot_avx2};
  return &kTable;
}

}  // namespace qswitch::kernels::detail

#else

namespace qswitch::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace qswitch::kernels::detail

#endif

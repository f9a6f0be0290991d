#include "qswitch/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace qswitch::kernels::detail {
namespace {

// One float64x2_t holds a single complex<double> as [re, im].
inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
  const float64x2_t ar = vdupq_laneq_f64(a, 0);
  const float64x2_t ai = vdupq_laneq_f64(a, 1);
  const float64x2_t b_swapped = vextq_f64(b, b, 1);         // [bi, br]
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(vmulq_f64(ar, b), vmulq_f64(ai, b_swapped), sign);
}

void cmatmul_neon(const Complex* a, const Complex* b, Complex* c,
                  std::size_t rows, std::size_t inner, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < inner; ++k) {
        const float64x2_t av = vld1q_f64(reinterpret_cast<const double*>(a + i * inner + k));
        const float64x2_t bv = vld1q_f64(reinterpret_cast<const double*>(b + k * cols + j));
        acc = vaddq_f64(acc, cmul(av, bv));
      }
      vst1q_f64(reinterpret_cast<double*>(c + i * cols + j), acc);
    }
  }
}

void caxpy_neon(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const float64x2_t av = vld1q_f64(reinterpret_cast<const double*>(&alpha));
  for (std::size_t i = 0; i < n; ++i) {
    double* yp = reinterpret_cast<double*>(y + i);
    const float64x2_t xv = vld1q_f64(reinterpret_cast<const double*>(x + i));
    vst1q_f64(yp, vaddq_f64(vld1q_f64(yp), cmul(av, xv)));
  }
}

void cscale_neon(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const float64x2_t av = vld1q_f64(reinterpret_cast<const double*>(&alpha));
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(reinterpret_cast<const double*>(x + i));
    vst1q_f64(reinterpret_cast<double*>(y + i), cmul(av, xv));
  }
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable* neon_table() {
  static constexpr KernelTable kTable{cmatmul_neon, caxpy_neon, cscale_neon,
                                      dot_neon};
  return &kTable;
}

}  // namespace qswitch::kernels::detail

#else

namespace qswitch::kernels::detail {
const KernelTable* neon_table() { return nullptr; }
}  // namespace qswitch::kernels::detail

#endif

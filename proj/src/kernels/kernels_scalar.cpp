#include "qswitch/kernels.hpp"

namespace qswitch::kernels::detail {
namespace {

void cmatmul_scalar(const Complex* a, const Complex* b, Complex* c,
                    std::size_t rows, std::size_t inner, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    Complex* crow = c + i * cols;
    for (std::size_t j = 0; j < cols; ++j) crow[j] = Complex{};
    for (std::size_t k = 0; k < inner; ++k) {
      const Complex aik = a[i * inner + k];
      const Complex* brow = b + k * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        // Spelled out so the reference path never goes through the
        // Annex G NaN-recovery branch of operator*.
        const double re = aik.real() * brow[j].real() - aik.imag() * brow[j].imag();
        const double im = aik.real() * brow[j].imag() + aik.imag() * brow[j].real();
        crow[j] += Complex{re, im};
      }
    }
  }
}

void caxpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] += Complex{re, im};
  }
}

void cscale_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] = Complex{re, im};
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static constexpr KernelTable kTable{cmatmul_scalar, caxpy_scalar,
                                      cscale_scalar, dot_scalar};
  return kTable;
}

}  // namespace qswitch::kernels::detail

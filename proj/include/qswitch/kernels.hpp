#pragma once

// Arithmetic inner loops shared by the linear-algebra layer.
//
// Every kernel has a scalar reference implementation; vectorized variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled into separate
// translation units and selected once at startup from CPUID. Setting
// QSWITCH_KERNELS=scalar|avx2|neon in the environment forces a variant
// (falling back to scalar when the request is not supported).
//
// Matrices are dense, row-major, interleaved complex<double>.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qswitch::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  // c[rows x cols] = a[rows x inner] * b[inner x cols]; c must not alias a or b.
  void (*cmatmul)(const Complex* a, const Complex* b, Complex* c,
                  std::size_t rows, std::size_t inner, std::size_t cols);
  // y += alpha * x
  void (*caxpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  // y = alpha * x
  void (*cscale)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
};

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

// Variant tables. Requesting an unsupported or uncompiled ISA returns the
// scalar table.
const KernelTable& table(Isa isa);

Isa active_isa();
const KernelTable& active();

// Span wrappers over active() with size checks.
void cmatmul(std::span<const Complex> a, std::span<const Complex> b,
             std::span<Complex> c, std::size_t rows, std::size_t inner,
             std::size_t cols);
void caxpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
void cscale(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
double dot(std::span<const double> x, std::span<const double> y);

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace qswitch::kernels

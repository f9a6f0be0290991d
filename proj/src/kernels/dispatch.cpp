#include <cstdlib>
#include <string>

#include "qswitch/errors.hpp"
#include "qswitch/kernels.hpp"

namespace qswitch::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "scalar";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      if (detail::avx2_table() == nullptr) return false;
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
      // NEON is architectural on AArch64.
      return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_supported(isa)) return detail::scalar_table();
  switch (isa) {
    case Isa::avx2: return *detail::avx2_table();
    case Isa::neon: return *detail::neon_table();
    case Isa::scalar: break;
  }
  return detail::scalar_table();
}

namespace {

Isa detect() {
  if (const char* forced = std::getenv("QSWITCH_KERNELS")) {
    const std::string request{forced};
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (request == isa_name(isa)) return isa_supported(isa) ? isa : Isa::scalar;
    }
  }
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa kIsa = detect();
  return kIsa;
}

const KernelTable& active() {
  static const KernelTable& kTable = table(active_isa());
  return kTable;
}

void cmatmul(std::span<const Complex> a, std::span<const Complex> b,
             std::span<Complex> c, std::size_t rows, std::size_t inner,
             std::size_t cols) {
  if (a.size() != rows * inner || b.size() != inner * cols ||
      c.size() != rows * cols) {
    throw UsageError("cmatmul: operand sizes do not match the stated shape");
  }
  active().cmatmul(a.data(), b.data(), c.data(), rows, inner, cols);
}

void caxpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != y.size()) throw UsageError("caxpy: length mismatch");
  active().caxpy(alpha, x.data(), y.data(), x.size());
}

void cscale(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != y.size()) throw UsageError("cscale: length mismatch");
  active().cscale(alpha, x.data(), y.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("dot: length mismatch");
  return active().dot(x.data(), y.data(), x.size());
}

}  // namespace qswitch::kernels

#include "zpl/simd.hpp"

#include "zpl/padic.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace zpl::simd {

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Isa initial() {
  const char* env = std::getenv("ZPL_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial()};
  return isa;
}

}  // namespace

Isa active() { return current().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) throw Error(Err::Unsupported, "AVX2 is not available on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

void add_mod(int32_t* y, const int32_t* x, int n, int32_t q) {
  if (active() == Isa::Avx2) return avx2::add_mod(y, x, n, q);
  scalar::add_mod(y, x, n, q);
}

void matvec_mod(const int32_t* A, int rows, int cols, const int32_t* x, int32_t q, int32_t* y) {
  if (q > kMaxModulus) throw Error(Err::Domain, "modulus too large for the vector kernels");
  if (active() == Isa::Avx2) return avx2::matvec_mod(A, rows, cols, x, q, y);
  scalar::matvec_mod(A, rows, cols, x, q, y);
}

bool all_zero(const int32_t* v, int n) {
  if (active() == Isa::Avx2) return avx2::all_zero(v, n);
  return scalar::all_zero(v, n);
}

namespace scalar {

void add_mod(int32_t* y, const int32_t* x, int n, int32_t q) {
  for (int i = 0; i < n; ++i) {
    int32_t s = y[i] + x[i];
    y[i] = s >= q ? s - q : s;
  }
}

void matvec_mod(const int32_t* A, int rows, int cols, const int32_t* x, int32_t q, int32_t* y) {
  for (int i = 0; i < rows; ++i) y[i] = 0;
  for (int j = 0; j < cols; ++j) {
    int32_t xj = x[j];
    if (xj == 0) continue;
    const int32_t* a = A + static_cast<long>(j) * rows;
    for (int i = 0; i < rows; ++i) y[i] = (y[i] + a[i] * xj) % q;
  }
}

bool all_zero(const int32_t* v, int n) {
  for (int i = 0; i < n; ++i)
    if (v[i]) return false;
  return true;
}

}  // namespace scalar

}  // namespace zpl::simd

#pragma once

#include <cstdint>

namespace zpl::simd {

// Kernels over residues mod q with entries in [0, q) and q < 2^11.
enum class Isa { Scalar, Avx2 };
const char* isa_name(Isa isa);

bool avx2_available();
// Best available unless overridden by set_active or ZPL_SIMD=scalar.
Isa active();
void set_active(Isa isa);

inline constexpr int32_t kMaxModulus = 2048;

// y[i] = (y[i] + x[i]) mod q
void add_mod(int32_t* y, const int32_t* x, int n, int32_t q);
// y = A x mod q with A column-major (rows x cols)
void matvec_mod(const int32_t* A, int rows, int cols, const int32_t* x, int32_t q, int32_t* y);
bool all_zero(const int32_t* v, int n);

namespace scalar {
void add_mod(int32_t* y, const int32_t* x, int n, int32_t q);
void matvec_mod(const int32_t* A, int rows, int cols, const int32_t* x, int32_t q, int32_t* y);
bool all_zero(const int32_t* v, int n);
}  // namespace scalar

namespace avx2 {
void add_mod(int32_t* y, const int32_t* x, int n, int32_t q);
void matvec_mod(const int32_t* A, int rows, int cols, const int32_t* x, int32_t q, int32_t* y);
bool all_zero(const int32_t* v, int n);
}  // namespace avx2

}  // namespace zpl::simd

#include "zpl/simd.hpp"

#include <immintrin.h>

namespace zpl::simd::avx2 {

void add_mod(int32_t* y, const int32_t* x, int n, int32_t q) {
  const __m256i vq = _mm256_set1_epi32(q);
  const __m256i vq1 = _mm256_set1_epi32(q - 1);
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i s = _mm256_add_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i)),
                                 _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i)));
    __m256i over = _mm256_cmpgt_epi32(s, vq1);
    s = _mm256_sub_epi32(s, _mm256_and_si256(over, vq));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), s);
  }
  for (; i < n; ++i) {
    int32_t s = y[i] + x[i];
    y[i] = s >= q ? s - q : s;
  }
}

// acc + a*x stays below 2^23, so the float quotient floors to the true
// quotient or one less; a single correction step fixes it.
static inline __m256i reduce(__m256i v, __m256 invq, __m256i vq, __m256i vq1) {
  __m256 f = _mm256_floor_ps(_mm256_mul_ps(_mm256_cvtepi32_ps(v), invq));
  __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(_mm256_cvtps_epi32(f), vq));
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, vq));
  __m256i over = _mm256_cmpgt_epi32(r, vq1);
  return _mm256_sub_epi32(r, _mm256_and_si256(over, vq));
}

void matvec_mod(const int32_t* A, int rows, int cols, const int32_t* x, int32_t q, int32_t* y) {
  const __m256i vq = _mm256_set1_epi32(q);
  const __m256i vq1 = _mm256_set1_epi32(q - 1);
  const __m256 invq = _mm256_set1_ps(1.0f / static_cast<float>(q));
  int i = 0;
  for (; i + 8 <= rows; i += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (int j = 0; j < cols; ++j) {
      if (x[j] == 0) continue;
      __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(A + static_cast<long>(j) * rows + i));
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(a, _mm256_set1_epi32(x[j])));
      acc = reduce(acc, invq, vq, vq1);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), acc);
  }
  for (; i < rows; ++i) {
    int32_t acc = 0;
    for (int j = 0; j < cols; ++j) acc = (acc + A[static_cast<long>(j) * rows + i] * x[j]) % q;
    y[i] = acc;
  }
}

bool all_zero(const int32_t* v, int n) {
  __m256i acc = _mm256_setzero_si256();
  int i = 0;
  for (; i + 8 <= n; i += 8) acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i)));
  if (!_mm256_testz_si256(acc, acc)) return false;
  for (; i < n; ++i)
    if (v[i]) return false;
  return true;
}

}  // namespace zpl::simd::avx2

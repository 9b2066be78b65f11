// Compiled with -mavx2. Only reached through the dispatcher after a CPU check.
#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "alcove/simd.hpp"

namespace alcove::simd::detail {

namespace {

// Inclusive prefix minimum of the four lanes, lane 0 first.
inline __m256d prefix_min4(__m256d v) {
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d s1 = _mm256_permute4x64_pd(v, _MM_SHUFFLE(2, 1, 0, 0));
  s1 = _mm256_blend_pd(s1, inf, 0b0001);
  v = _mm256_min_pd(v, s1);
  __m256d s2 = _mm256_permute4x64_pd(v, _MM_SHUFFLE(1, 0, 0, 0));
  s2 = _mm256_blend_pd(s2, inf, 0b0011);
  return _mm256_min_pd(v, s2);
}

inline __m256d node_times(std::size_t j, double step) {
  const double t0 = static_cast<double>(j) * step;
  const double t1 = static_cast<double>(j + 1) * step;
  const double t2 = static_cast<double>(j + 2) * step;
  const double t3 = static_cast<double>(j + 3) * step;
  return _mm256_setr_pd(t0, t1, t2, t3);
}

}  // namespace

double reflect_scan_avx2(const double* in, double* out, std::size_t n, double step, bool wall_one,
                         double factor) {
  const __m256d fac = _mm256_set1_pd(factor);
  __m256d carry = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d f = _mm256_loadu_pd(in + j);
    const __m256d g = wall_one ? f : _mm256_sub_pd(node_times(j, step), f);
    __m256d m = prefix_min4(g);
    m = _mm256_min_pd(m, carry);
    const __m256d r = wall_one ? _mm256_sub_pd(f, _mm256_mul_pd(fac, m))
                               : _mm256_add_pd(f, _mm256_mul_pd(fac, m));
    _mm256_storeu_pd(out + j, r);
    carry = _mm256_permute4x64_pd(m, _MM_SHUFFLE(3, 3, 3, 3));
  }
  double tail = _mm256_cvtsd_f64(carry);
  for (; j < n; ++j) {
    const double f = in[j];
    const double g = wall_one ? f : static_cast<double>(j) * step - f;
    tail = std::min(tail, g);
    out[j] = wall_one ? f - factor * tail : f + factor * tail;
  }
  return tail;
}

double running_min_avx2(const double* in, std::size_t n, double step, bool wall_one) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  if (wall_one) {
    for (; j + 4 <= n; j += 4) acc = _mm256_min_pd(_mm256_loadu_pd(in + j), acc);
  } else {
    for (; j + 4 <= n; j += 4)
      acc = _mm256_min_pd(_mm256_sub_pd(node_times(j, step), _mm256_loadu_pd(in + j)), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; j < n; ++j) m = std::min(m, wall_one ? in[j] : static_cast<double>(j) * step - in[j]);
  return m;
}

void sine_series_avx2(const double* c, std::size_t nc, const double* cs, const double* sn,
                      double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cv = _mm256_loadu_pd(cs + i);
    const __m256d two_c = _mm256_add_pd(cv, cv);
    __m256d b1 = _mm256_setzero_pd();
    __m256d b2 = _mm256_setzero_pd();
    for (std::size_t k = nc; k-- > 0;) {
      const __m256d b0 =
          _mm256_sub_pd(_mm256_add_pd(_mm256_set1_pd(c[k]), _mm256_mul_pd(two_c, b1)), b2);
      b2 = b1;
      b1 = b0;
    }
    _mm256_storeu_pd(out + i, _mm256_mul_pd(b1, _mm256_loadu_pd(sn + i)));
  }
  if (i < n) sine_series_scalar(c, nc, cs + i, sn + i, out + i, n - i);
}

}  // namespace alcove::simd::detail

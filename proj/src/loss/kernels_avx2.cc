// Copyright 2026 The slotaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 + FMA loss kernels. This translation unit is compiled with
// -mavx2 -mfma and only entered after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>

#include "slotaug/loss_kernels.h"

namespace slotaug {
namespace avx2 {
namespace {

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.44269504088896338700e+00;
constexpr double kSqrt2 = 1.41421356237309504880e+00;
// Below this exp() is flushed to zero; 2^n stays a normal number above it.
constexpr double kExpFloor = -708.0;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Natural log of positive finite lanes, subnormals included.
//
// x = m * 2^e with m in [sqrt(1/2), sqrt(2)), then
// log(m) = 2 atanh(s) = 2 (s + s^3/3 + s^5/5 + ...), s = (m - 1) / (m + 1).
// |s| <= 0.1716, so eleven odd terms reach double precision.
inline __m256d log_pd(__m256d x) {
  const __m256d small = _mm256_cmp_pd(x, _mm256_set1_pd(DBL_MIN), _CMP_LT_OQ);
  x = _mm256_blendv_pd(x, _mm256_mul_pd(x, _mm256_set1_pd(0x1p52)), small);
  const __m256d e_adjust = _mm256_and_pd(small, _mm256_set1_pd(-52.0));

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
  const __m256i exponent = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exponent, magic)),
      _mm256_set1_pd(0x1p52));
  e = _mm256_add_pd(_mm256_sub_pd(e, _mm256_set1_pd(1023.0)), e_adjust);

  const __m256i mantissa = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mantissa);  // [1, 2)
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s =
      _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d poly = _mm256_set1_pd(1.0 / 21.0);
  for (int k = 9; k >= 0; --k) {
    poly = _mm256_fmadd_pd(poly, z, _mm256_set1_pd(1.0 / (2 * k + 1)));
  }
  const __m256d log_m = _mm256_mul_pd(_mm256_add_pd(s, s), poly);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi),
                         _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), log_m));
}

// exp of lanes x <= 709; lanes below kExpFloor return 0.
//
// x = n ln2 + r with |r| <= ln2/2; exp(r) by its Taylor series to r^13.
inline __m256d exp_pd(__m256d x) {
  const __m256d n = _mm256_round_pd(
      _mm256_mul_pd(x, _mm256_set1_pd(kLog2e)),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);

  static constexpr double kInvFactorial[14] = {
      1.0,
      1.0,
      1.0 / 2.0,
      1.0 / 6.0,
      1.0 / 24.0,
      1.0 / 120.0,
      1.0 / 720.0,
      1.0 / 5040.0,
      1.0 / 40320.0,
      1.0 / 362880.0,
      1.0 / 3628800.0,
      1.0 / 39916800.0,
      1.0 / 479001600.0,
      1.0 / 6227020800.0,
  };
  __m256d poly = _mm256_set1_pd(kInvFactorial[13]);
  for (int k = 12; k >= 0; --k) {
    poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(kInvFactorial[k]));
  }

  // n + 1.5 * 2^52 holds n in the low mantissa bits; shifting (n + 1023)
  // into the exponent field builds 2^n.
  const __m256i n_bits =
      _mm256_castpd_si256(_mm256_add_pd(n, _mm256_set1_pd(0x1.8p52)));
  const __m256i scale = _mm256_slli_epi64(
      _mm256_add_epi64(n_bits, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(poly, _mm256_castsi256_pd(scale));
  const __m256d under =
      _mm256_cmp_pd(x, _mm256_set1_pd(kExpFloor), _CMP_LT_OQ);
  return _mm256_andnot_pd(under, result);
}

}  // namespace

double xlogy_sum(const double *t, const double *p, std::size_t n,
                 bool *nonfinite) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = zero;
  __m256d bad = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d tv = _mm256_loadu_pd(t + i);
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d weighted = _mm256_cmp_pd(tv, zero, _CMP_NEQ_UQ);
    const __m256d positive = _mm256_cmp_pd(pv, zero, _CMP_GT_OQ);
    bad = _mm256_or_pd(bad, _mm256_andnot_pd(positive, weighted));
    const __m256d use = _mm256_and_pd(weighted, positive);
    const __m256d safe = _mm256_blendv_pd(one, pv, use);
    acc = _mm256_add_pd(
        acc, _mm256_and_pd(use, _mm256_mul_pd(tv, log_pd(safe))));
  }
  if (_mm256_movemask_pd(bad) != 0) *nonfinite = true;
  double total = hsum(acc);
  for (; i < n; ++i) {
    if (t[i] == 0.0) continue;
    if (!(p[i] > 0.0)) {
      *nonfinite = true;
      continue;
    }
    total += t[i] * std::log(p[i]);
  }
  return total;
}

void softmax(const double *x, double *out, std::size_t n) {
  std::size_t i = 0;
  double peak = x[0];
  if (n >= 4) {
    __m256d vmax = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) {
      vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(x + i));
    }
    peak = hmax(vmax);
  }
  for (; i < n; ++i) peak = std::max(peak, x[i]);

  const __m256d shift = _mm256_set1_pd(peak);
  __m256d acc = _mm256_setzero_pd();
  for (i = 0; i + 4 <= n; i += 4) {
    const __m256d v = exp_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), shift));
    _mm256_storeu_pd(out + i, v);
    acc = _mm256_add_pd(acc, v);
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    out[i] = std::exp(x[i] - peak);
    total += out[i];
  }

  const __m256d denom = _mm256_set1_pd(total);
  for (i = 0; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(out + i), denom));
  }
  for (; i < n; ++i) out[i] /= total;
}

void subtract(const double *a, const double *b, double *out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

double sum(const double *x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

}  // namespace avx2
}  // namespace slotaug

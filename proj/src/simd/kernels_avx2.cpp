// Compiled with -mavx2 only (no FMA) so that products and sums round exactly
// like the scalar kernels.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "kernels_internal.hpp"

namespace avbench::simd::detail {

namespace {

void chord_lengths(const double* xs, const double* ys, const double* zs,
                   std::size_t n, double* out) {
  if (n < 2) { return; }
  const std::size_t count = n - 1;
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d dx =
        _mm256_sub_pd(_mm256_loadu_pd(xs + i + 1), _mm256_loadu_pd(xs + i));
    const __m256d dy =
        _mm256_sub_pd(_mm256_loadu_pd(ys + i + 1), _mm256_loadu_pd(ys + i));
    const __m256d dz =
        _mm256_sub_pd(_mm256_loadu_pd(zs + i + 1), _mm256_loadu_pd(zs + i));
    const __m256d xy = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i,
                     _mm256_sqrt_pd(_mm256_add_pd(xy, _mm256_mul_pd(dz, dz))));
  }
  for (; i < count; ++i) {
    const double dx = xs[i + 1] - xs[i];
    const double dy = ys[i + 1] - ys[i];
    const double dz = zs[i + 1] - zs[i];
    out[i] = std::sqrt((dx * dx + dy * dy) + dz * dz);
  }
}

double sum(const double* values, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(values + i));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t lane = 0; i < n; ++i, ++lane) { lanes[lane] += values[i]; }
  return combine_lanes(lanes);
}

void interval_products(const double* v, const double* t, std::size_t n,
                       double* out) {
  if (n < 2) { return; }
  const std::size_t count = n - 1;
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d dt =
        _mm256_sub_pd(_mm256_loadu_pd(t + i + 1), _mm256_loadu_pd(t + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(v + i + 1), dt));
  }
  for (; i < count; ++i) { out[i] = v[i + 1] * (t[i + 1] - t[i]); }
}

void point_segment_dist2(double px, double py, const double* ax,
                         const double* ay, const double* bx, const double* by,
                         std::size_t n, double* out) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vax = _mm256_loadu_pd(ax + i);
    const __m256d vay = _mm256_loadu_pd(ay + i);
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(bx + i), vax);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(by + i), vay);
    const __m256d wx = _mm256_sub_pd(vpx, vax);
    const __m256d wy = _mm256_sub_pd(vpy, vay);
    const __m256d len2 =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d dot =
        _mm256_add_pd(_mm256_mul_pd(wx, dx), _mm256_mul_pd(wy, dy));
    __m256d u = _mm256_div_pd(dot, len2);
    u = _mm256_max_pd(_mm256_min_pd(u, one), zero);
    const __m256d has_length = _mm256_cmp_pd(len2, zero, _CMP_GT_OQ);
    u = _mm256_blendv_pd(zero, u, has_length);
    const __m256d ex = _mm256_sub_pd(wx, _mm256_mul_pd(u, dx));
    const __m256d ey = _mm256_sub_pd(wy, _mm256_mul_pd(u, dy));
    _mm256_storeu_pd(out + i,
                     _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
  }
  if (i < n) {
    scalar_kernels().point_segment_dist2(px, py, ax + i, ay + i, bx + i, by + i,
                                         n - i, out + i);
  }
}

void dft_magnitudes(const double* x, std::size_t n, const double* cos_table,
                    const double* sin_table, std::size_t transform_len,
                    double* out) {
  const std::size_t bins = transform_len / 2 + 1;
  const std::size_t blocks = n / 4;
  const auto len32 = static_cast<std::int32_t>(transform_len);
  const __m128i limit = _mm_set1_epi32(len32 - 1);
  const __m128i wrap = _mm_set1_epi32(len32);

  for (std::size_t k = 0; k < bins; ++k) {
    const auto step = static_cast<std::int32_t>(k);
    const auto step4 = static_cast<std::int32_t>((4 * k) % transform_len);
    // Lane l starts at index (k * l) mod N.
    std::int32_t start[4];
    for (int l = 0; l < 4; ++l) {
      start[l] = static_cast<std::int32_t>((k * static_cast<std::size_t>(l)) %
                                           transform_len);
    }
    __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(start));
    const __m128i inc = _mm_set1_epi32(step4);

    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    for (std::size_t b = 0; b < blocks; ++b) {
      const __m256d xv = _mm256_loadu_pd(x + 4 * b);
      const __m256d c = _mm256_i32gather_pd(cos_table, idx, 8);
      const __m256d s = _mm256_i32gather_pd(sin_table, idx, 8);
      re = _mm256_add_pd(re, _mm256_mul_pd(xv, c));
      im = _mm256_add_pd(im, _mm256_mul_pd(xv, s));
      idx = _mm_add_epi32(idx, inc);
      const __m128i over = _mm_cmpgt_epi32(idx, limit);
      idx = _mm_sub_epi32(idx, _mm_and_si128(over, wrap));
    }

    alignas(32) double re_lanes[4];
    alignas(32) double im_lanes[4];
    _mm256_store_pd(re_lanes, re);
    _mm256_store_pd(im_lanes, im);
    std::size_t m = static_cast<std::size_t>(
        (static_cast<std::uint64_t>(k) * (4 * blocks)) % transform_len);
    for (std::size_t j = 4 * blocks, lane = 0; j < n; ++j, ++lane) {
      re_lanes[lane] += x[j] * cos_table[m];
      im_lanes[lane] += x[j] * sin_table[m];
      m += static_cast<std::size_t>(step);
      if (m >= transform_len) { m -= transform_len; }
    }
    const double r = combine_lanes(re_lanes);
    const double s = combine_lanes(im_lanes);
    out[k] = std::sqrt(r * r + s * s);
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{chord_lengths, sum, interval_products,
                                 point_segment_dist2, dft_magnitudes};
  return table;
}

}  // namespace avbench::simd::detail

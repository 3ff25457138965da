#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace avbench::simd::detail {

namespace {

void chord_lengths(const double* xs, const double* ys, const double* zs,
                   std::size_t n, double* out) {
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = xs[i + 1] - xs[i];
    const double dy = ys[i + 1] - ys[i];
    const double dz = zs[i + 1] - zs[i];
    out[i] = std::sqrt((dx * dx + dy * dy) + dz * dz);
  }
}

double sum(const double* values, std::size_t n) {
  double lanes[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) { lanes[i % 4] += values[i]; }
  return combine_lanes(lanes);
}

void interval_products(const double* v, const double* t, std::size_t n,
                       double* out) {
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out[i] = v[i + 1] * (t[i + 1] - t[i]);
  }
}

void point_segment_dist2(double px, double py, const double* ax,
                         const double* ay, const double* bx, const double* by,
                         std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = bx[i] - ax[i];
    const double dy = by[i] - ay[i];
    const double wx = px - ax[i];
    const double wy = py - ay[i];
    const double len2 = dx * dx + dy * dy;
    double u = 0.0;
    if (len2 > 0.0) {
      u = (wx * dx + wy * dy) / len2;
      u = std::max(std::min(u, 1.0), 0.0);
    }
    const double ex = wx - u * dx;
    const double ey = wy - u * dy;
    out[i] = ex * ex + ey * ey;
  }
}

void dft_magnitudes(const double* x, std::size_t n, const double* cos_table,
                    const double* sin_table, std::size_t transform_len,
                    double* out) {
  const std::size_t bins = transform_len / 2 + 1;
  for (std::size_t k = 0; k < bins; ++k) {
    double re[4] = {0.0, 0.0, 0.0, 0.0};
    double im[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t m = 0;  // (k * j) mod N
    for (std::size_t j = 0; j < n; ++j) {
      re[j % 4] += x[j] * cos_table[m];
      im[j % 4] += x[j] * sin_table[m];
      m += k;
      if (m >= transform_len) { m -= transform_len; }
    }
    const double r = combine_lanes(re);
    const double s = combine_lanes(im);
    out[k] = std::sqrt(r * r + s * s);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{chord_lengths, sum, interval_products,
                                 point_segment_dist2, dft_magnitudes};
  return table;
}

}  // namespace avbench::simd::detail

#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// vectorized variants chosen at runtime.
//
// Every variant accumulates in four interleaved lanes (element i goes to
// lane i % 4) and combines them as (l0 + l1) + (l2 + l3), with no fused
// multiply-add. Scalar and vector results are therefore bit-identical,
// which keeps report output independent of the host CPU.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace avbench::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view text);

/// Compiled in and supported by the running CPU.
bool isa_supported(Isa isa);
Isa best_supported_isa();

/// The variant used by the span wrappers below. Defaults to the best
/// supported one; set_active_isa throws InvalidArgument if unsupported.
Isa active_isa();
void set_active_isa(Isa isa);

struct KernelTable {
  // out[i] = |p[i+1] - p[i]|, i < n - 1.
  void (*chord_lengths)(const double* xs, const double* ys, const double* zs,
                        std::size_t n, double* out);
  double (*sum)(const double* values, std::size_t n);
  // out[i] = v[i+1] * (t[i+1] - t[i]), i < n - 1.
  void (*interval_products)(const double* v, const double* t, std::size_t n,
                            double* out);
  // Squared distance from (px, py) to each segment a[i] -> b[i].
  void (*point_segment_dist2)(double px, double py, const double* ax,
                              const double* ay, const double* bx,
                              const double* by, std::size_t n, double* out);
  // |DFT| bins 0..N/2 of x zero-padded to N = transform_len, using
  // cos/sin tables of 2*pi*m/N. Requires n <= transform_len.
  void (*dft_magnitudes)(const double* x, std::size_t n,
                         const double* cos_table, const double* sin_table,
                         std::size_t transform_len, double* out);
};

const KernelTable& kernels_for(Isa isa);
const KernelTable& kernels();

// Span wrappers over the active table.
void chord_lengths(std::span<const double> xs, std::span<const double> ys,
                   std::span<const double> zs, std::span<double> out);
double sum(std::span<const double> values);
void interval_products(std::span<const double> v, std::span<const double> t,
                       std::span<double> out);
void point_segment_dist2(double px, double py, std::span<const double> ax,
                         std::span<const double> ay, std::span<const double> bx,
                         std::span<const double> by, std::span<double> out);
void dft_magnitudes(std::span<const double> x, std::span<const double> cos_table,
                    std::span<const double> sin_table, std::span<double> out);

}  // namespace avbench::simd

#include <atomic>
#include <cassert>
#include <string>

#include "avbench/errors.hpp"
#include "kernels_internal.hpp"

namespace avbench::simd {

namespace {

// Vector DFT gathers through 32-bit indices and adds two of them.
constexpr std::size_t kMaxVectorTransform = std::size_t{1} << 30;

bool cpu_has_avx2() {
#if defined(AVBENCH_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{best_supported_isa()};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "scalar";
}

std::optional<Isa> parse_isa(std::string_view text) {
  if (text == "scalar") { return Isa::scalar; }
  if (text == "avx2") { return Isa::avx2; }
  return std::nullopt;
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
  }
  return false;
}

Isa best_supported_isa() {
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument("instruction set '" + std::string(to_string(isa)) +
                          "' is not available on this machine");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument("instruction set '" + std::string(to_string(isa)) +
                          "' is not available on this machine");
  }
#if defined(AVBENCH_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) { return detail::avx2_kernels(); }
#endif
  return detail::scalar_kernels();
}

const KernelTable& kernels() { return kernels_for(active_isa()); }

void chord_lengths(std::span<const double> xs, std::span<const double> ys,
                   std::span<const double> zs, std::span<double> out) {
  assert(ys.size() == xs.size() && zs.size() == xs.size());
  assert(out.size() + 1 >= xs.size());
  kernels().chord_lengths(xs.data(), ys.data(), zs.data(), xs.size(),
                          out.data());
}

double sum(std::span<const double> values) {
  return kernels().sum(values.data(), values.size());
}

void interval_products(std::span<const double> v, std::span<const double> t,
                       std::span<double> out) {
  assert(t.size() == v.size());
  assert(out.size() + 1 >= v.size());
  kernels().interval_products(v.data(), t.data(), v.size(), out.data());
}

void point_segment_dist2(double px, double py, std::span<const double> ax,
                         std::span<const double> ay, std::span<const double> bx,
                         std::span<const double> by, std::span<double> out) {
  assert(ay.size() == ax.size() && bx.size() == ax.size() &&
         by.size() == ax.size() && out.size() >= ax.size());
  kernels().point_segment_dist2(px, py, ax.data(), ay.data(), bx.data(),
                                by.data(), ax.size(), out.data());
}

void dft_magnitudes(std::span<const double> x, std::span<const double> cos_table,
                    std::span<const double> sin_table, std::span<double> out) {
  const std::size_t transform_len = cos_table.size();
  assert(sin_table.size() == transform_len);
  assert(x.size() <= transform_len);
  assert(out.size() >= transform_len / 2 + 1);
  const KernelTable& table = transform_len < kMaxVectorTransform
                                 ? kernels()
                                 : detail::scalar_kernels();
  table.dft_magnitudes(x.data(), x.size(), cos_table.data(), sin_table.data(),
                       transform_len, out.data());
}

}  // namespace avbench::simd

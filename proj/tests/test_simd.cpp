#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "avbench/errors.hpp"
#include "avbench/simd/kernels.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avbench;
using simd::Isa;

namespace {

std::vector<double> random_values(gen::Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) { x = rng.uniform(lo, hi); }
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Lengths around the vector width and its multiples.
const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 257};

struct IsaGuard {
  Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("isa names and selection") {
  CHECK(simd::parse_isa("scalar") == Isa::scalar);
  CHECK(simd::parse_isa("avx2") == Isa::avx2);
  CHECK_FALSE(simd::parse_isa("neon"));
  CHECK(simd::isa_supported(Isa::scalar));
  CHECK(simd::isa_supported(simd::best_supported_isa()));
  IsaGuard guard;
  simd::set_active_isa(Isa::scalar);
  CHECK(simd::active_isa() == Isa::scalar);
  CHECK(&simd::kernels() == &simd::kernels_for(Isa::scalar));
  if (!simd::isa_supported(Isa::avx2)) {
    CHECK_THROWS_AS(simd::set_active_isa(Isa::avx2), InvalidArgument);
  }
}

TEST_CASE("scalar kernels agree with the oracles") {
  const auto& k = simd::kernels_for(Isa::scalar);
  gen::Rng rng(71);
  for (const auto n : kLengths) {
    const auto xs = random_values(rng, n, -100, 100), ys = random_values(rng, n, -100, 100),
               zs = random_values(rng, n, -5, 5);
    std::vector<double> chords(n > 0 ? n - 1 : 0);
    if (n > 0) { k.chord_lengths(xs.data(), ys.data(), zs.data(), n, chords.data()); }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(chords[i] == doctest::Approx(std::hypot(xs[i + 1] - xs[i], ys[i + 1] - ys[i],
                                                    zs[i + 1] - zs[i])).epsilon(1e-14));
    }

    long double exact = 0.0L;
    for (const double x : xs) { exact += x; }
    CHECK(k.sum(xs.data(), n) == doctest::Approx(double(exact)).epsilon(1e-12).scale(1.0));

    std::vector<double> products(n > 0 ? n - 1 : 0);
    if (n > 0) { k.interval_products(xs.data(), zs.data(), n, products.data()); }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(products[i] == xs[i + 1] * (zs[i + 1] - zs[i]));
    }

    const auto bx = random_values(rng, n, -100, 100), by = random_values(rng, n, -100, 100);
    std::vector<double> d2(n);
    k.point_segment_dist2(3.5, -7.25, xs.data(), ys.data(), bx.data(), by.data(), n, d2.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(d2[i] == doctest::Approx(oracle::point_segment_dist2(3.5, -7.25, xs[i], ys[i], bx[i],
                                                                 by[i]))
                         .epsilon(1e-9)
                         .scale(1.0));
    }
  }
}

TEST_CASE("degenerate segments in the distance kernel") {
  const auto& k = simd::kernels_for(Isa::scalar);
  const double a = 1.0, b = 2.0;
  double out = 0.0;
  k.point_segment_dist2(4.0, 6.0, &a, &b, &a, &b, 1, &out);
  CHECK(out == 25.0);
}

TEST_CASE("dft kernel matches direct summation") {
  const auto& k = simd::kernels_for(Isa::scalar);
  gen::Rng rng(72);
  for (const std::size_t n : {4u, 5u, 16u, 33u, 100u}) {
    for (const std::size_t pad : {0u, 1u, 7u}) {
      const auto big_n = n + pad;
      const auto x = random_values(rng, n, -2, 2);
      std::vector<double> c(big_n), s(big_n);
      for (std::size_t m = 0; m < big_n; ++m) {
        c[m] = std::cos(2 * std::numbers::pi * double(m) / double(big_n));
        s[m] = std::sin(2 * std::numbers::pi * double(m) / double(big_n));
      }
      std::vector<double> out(big_n / 2 + 1);
      k.dft_magnitudes(x.data(), n, c.data(), s.data(), big_n, out.data());
      const auto expected = oracle::dft_magnitudes(x, big_n);
      for (std::size_t b = 0; b < out.size(); ++b) {
        CHECK(out[b] == doctest::Approx(expected[b]).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("vector kernels are bit-identical to scalar") {
  if (!simd::isa_supported(Isa::avx2)) {
    MESSAGE("AVX2 not available; skipping");
    return;
  }
  const auto& s = simd::kernels_for(Isa::scalar);
  const auto& v = simd::kernels_for(Isa::avx2);
  gen::Rng rng(73);
  for (int round = 0; round < 5; ++round) {
    for (const auto n : kLengths) {
      const auto xs = random_values(rng, n, -1e4, 1e4), ys = random_values(rng, n, -1e4, 1e4),
                 zs = random_values(rng, n, -10, 10), bx = random_values(rng, n, -1e4, 1e4),
                 by = random_values(rng, n, -1e4, 1e4);
      const std::size_t m = n > 0 ? n - 1 : 0;

      std::vector<double> a(m), b(m);
      if (n > 0) {
        s.chord_lengths(xs.data(), ys.data(), zs.data(), n, a.data());
        v.chord_lengths(xs.data(), ys.data(), zs.data(), n, b.data());
      }
      CHECK(same_bits(a, b));

      const double sum_s = s.sum(xs.data(), n), sum_v = v.sum(xs.data(), n);
      CHECK(std::memcmp(&sum_s, &sum_v, sizeof(double)) == 0);

      if (n > 0) {
        s.interval_products(xs.data(), ys.data(), n, a.data());
        v.interval_products(xs.data(), ys.data(), n, b.data());
      }
      CHECK(same_bits(a, b));

      std::vector<double> d_s(n), d_v(n);
      s.point_segment_dist2(12.5, -3.0, xs.data(), ys.data(), bx.data(), by.data(), n, d_s.data());
      v.point_segment_dist2(12.5, -3.0, xs.data(), ys.data(), bx.data(), by.data(), n, d_v.data());
      CHECK(same_bits(d_s, d_v));

      if (n >= 4) {
        const auto big_n = n + std::size_t(rng.integer(0, 9));
        std::vector<double> c(big_n), sn(big_n);
        for (std::size_t i = 0; i < big_n; ++i) {
          c[i] = std::cos(2 * std::numbers::pi * double(i) / double(big_n));
          sn[i] = std::sin(2 * std::numbers::pi * double(i) / double(big_n));
        }
        std::vector<double> m_s(big_n / 2 + 1), m_v(big_n / 2 + 1);
        s.dft_magnitudes(zs.data(), n, c.data(), sn.data(), big_n, m_s.data());
        v.dft_magnitudes(zs.data(), n, c.data(), sn.data(), big_n, m_v.data());
        CHECK(same_bits(m_s, m_v));
      }
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "stochdg/noise.hpp"

using namespace stochdg;

TEST_CASE("Philox-4x32-10 known-answer vectors") {
  // Reference vectors from the Random123 distribution (kat_vectors).
  auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                         {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("FNV-1a 64-bit known-answer vectors") {
  CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
  // Chaining is equivalent to hashing the concatenation.
  std::uint64_t h = fnv1a64("foo", 3);
  CHECK(fnv1a64("bar", 3, h) == 0x85944171f73967e8ull);
}

TEST_CASE("standard normal matches its Philox/Box-Muller construction") {
  auto expected = [](std::uint64_t seed, std::uint64_t sample, std::uint64_t step,
                     std::uint32_t component) {
    std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32), component,
        static_cast<std::uint32_t>(sample)};
    counter[2] ^= static_cast<std::uint32_t>(sample >> 32) << 16;
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                        static_cast<std::uint32_t>(seed >> 32)};
    auto r = philox4x32(counter, key);
    auto unit = [](std::uint32_t hi, std::uint32_t lo) {
      std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
      return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
    };
    double u1 = unit(r[0], r[1]), u2 = unit(r[2], r[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };

  for (std::uint64_t seed : {0ull, 42ull, 0xdeadbeefcafef00dull}) {
    for (std::uint64_t sample : {0ull, 7ull, (1ull << 40) + 3}) {
      for (std::uint64_t step : {0ull, 1ull, 123456789ull}) {
        for (std::uint32_t comp : {0u, 1u}) {
          CHECK(standard_normal(seed, sample, step, comp) ==
                expected(seed, sample, step, comp));
        }
      }
    }
  }
}

TEST_CASE("standard normal is deterministic and key-sensitive") {
  double base = standard_normal(1, 2, 3, 0);
  CHECK(standard_normal(1, 2, 3, 0) == base);
  CHECK(standard_normal(2, 2, 3, 0) != base);
  CHECK(standard_normal(1, 3, 3, 0) != base);
  CHECK(standard_normal(1, 2, 4, 0) != base);
  CHECK(standard_normal(1, 2, 3, 1) != base);
  CHECK(std::isfinite(base));
}

TEST_CASE("standard normal has the right moments") {
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    double z = standard_normal(2024, static_cast<std::uint64_t>(i), 0, 0);
    sum += z;
    sumsq += z * z;
    if (std::abs(z) < 1.96) ++inside;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) <= 1e-2);
  CHECK(std::abs(var - 1.0) <= 1.3e-2);
  CHECK(std::abs(static_cast<double>(inside) / n - 0.95) <= 4e-3);
}

TEST_CASE("Wiener increments scale normals by sqrt(dt)") {
  NoiseSpec spec = NoiseSpec::make(1.0, 2, 99);
  WienerStream stream(spec, 5);
  CHECK(stream.sample_index() == 5);
  double dt = 1e-4;
  std::array<double, 2> dw{};
  stream.increments(17, dt, dw);
  for (std::uint32_t k = 0; k < 2; ++k)
    CHECK(dw[k] == std::sqrt(dt) * standard_normal(99, 5, 17, k));
}

TEST_CASE("noise specification validates its inputs") {
  CHECK_THROWS_AS(NoiseSpec::make(-0.5, 1, 0), ConfigError);
  CHECK_THROWS_AS(NoiseSpec::make(1.0, 3, 0), ConfigError);
  CHECK_THROWS_AS(NoiseSpec::make(1.0, 0, 0), ConfigError);
  NoiseSpec s = NoiseSpec::make(0.25, 2, 7);
  CHECK(s.mu == 0.25);
  CHECK(s.n_wiener == 2);
  CHECK(s.base_seed == 7);
  CHECK_NOTHROW(NoiseSpec::make(0.0, 1, 0));
}

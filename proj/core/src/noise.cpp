#include "stochdg/noise.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

namespace stochdg {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
    std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32), l0 = static_cast<std::uint32_t>(p0);
    std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32), l1 = static_cast<std::uint32_t>(p1);
    c = {h1 ^ c[1] ^ k[0], l1, h0 ^ c[3] ^ k[1], l0};
    k[0] += W0;
    k[1] += W1;
  }
  return c;
}

namespace {

// (0, 1] uniform from 53 random bits, bounded away from zero for the log.
inline double unit_open(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

double standard_normal(std::uint64_t base_seed, std::uint64_t sample_index, std::uint64_t step,
                       std::uint32_t component) {
  std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32), component,
      static_cast<std::uint32_t>(sample_index)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(base_seed),
                                      static_cast<std::uint32_t>(base_seed >> 32)};
  // Sample indices are kept inside 32 bits so every (seed, sample, step,
  // component) tuple maps to a distinct Philox block.
  counter[2] ^= static_cast<std::uint32_t>(sample_index >> 32) << 16;
  auto r = philox4x32(counter, key);
  double u1 = unit_open(r[0], r[1]);
  double u2 = unit_open(r[2], r[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

NoiseSpec NoiseSpec::make(double mu, int dim, std::uint64_t base_seed) {
  if (mu < 0.0) throw ConfigError("noise amplitude mu must be nonnegative");
  if (dim != 1 && dim != 2) throw ConfigError("noise: dimension must be 1 or 2");
  return {mu, dim, base_seed};
}

void WienerStream::increments(std::uint64_t step, double dt, std::span<double> out) const {
  double root_dt = std::sqrt(dt);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = root_dt * standard_normal(spec_.base_seed, sample_, step, static_cast<std::uint32_t>(k));
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
  constexpr std::uint64_t prime = 0x100000001b3ull;
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= prime;
  }
  return h;
}

}  // namespace stochdg

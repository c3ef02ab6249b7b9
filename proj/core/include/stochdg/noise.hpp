#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "stochdg/errors.hpp"

namespace stochdg {

// Philox-4x32 block cipher, 10 rounds (counter-based random number generator).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// One standard normal per (seed, sample, step, component) key, independent of
// evaluation order: Philox block -> two 53-bit uniforms -> Box-Muller.
double standard_normal(std::uint64_t base_seed, std::uint64_t sample_index, std::uint64_t step,
                       std::uint32_t component);

// Spatially homogeneous momentum forcing: amplitude mu on each of n_wiener
// independent Wiener components, one per space dimension.
struct NoiseSpec {
  double mu = 0.0;
  int n_wiener = 1;
  std::uint64_t base_seed = 0;

  static NoiseSpec make(double mu, int dim, std::uint64_t base_seed);
};

// Wiener increments for one sample path; increments over a step of size dt
// are Normal(0, dt), reproducible for any query order.
class WienerStream {
 public:
  WienerStream(const NoiseSpec& spec, std::uint64_t sample_index)
      : spec_(spec), sample_(sample_index) {}

  void increments(std::uint64_t step, double dt, std::span<double> out) const;
  std::uint64_t sample_index() const { return sample_; }

 private:
  NoiseSpec spec_;
  std::uint64_t sample_;
};

inline constexpr std::uint64_t fnv1a_offset = 0xcbf29ce484222325ull;

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = fnv1a_offset);

}  // namespace stochdg

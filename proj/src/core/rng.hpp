#pragma once

#include <array>
#include <cstdint>

namespace latq {

// Philox4x32-10 counter-based generator. Each (seed, sample index) pair yields
// an independent stream, so batch splits reproduce bit-for-bit.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 2>& key,
                                            const std::array<std::uint32_t, 4>& counter);
};

// Fills out[0..n) with uniform doubles in [0,1) for one sample index.
void fill_unit_doubles(std::uint64_t seed, std::uint64_t index, double* out, int n);

}  // namespace latq

#include "core/rng.hpp"

namespace latq {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> round_once(const std::array<std::uint32_t, 4>& c,
                                               const std::array<std::uint32_t, 2>& k) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
}

inline double unit_double(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(const std::array<std::uint32_t, 2>& key,
                                               const std::array<std::uint32_t, 4>& counter) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 9; ++r) {
    c = round_once(c, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return round_once(c, k);
}

void fill_unit_doubles(std::uint64_t seed, std::uint64_t index, double* out, int n) {
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                            static_cast<std::uint32_t>(seed >> 32)};
  for (int j = 0; 2 * j < n; ++j) {
    const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(index),
                                              static_cast<std::uint32_t>(index >> 32),
                                              static_cast<std::uint32_t>(j), 0x4C617451u};
    auto w = Philox4x32::block(key, ctr);
    out[2 * j] = unit_double(w[0], w[1]);
    if (2 * j + 1 < n) out[2 * j + 1] = unit_double(w[2], w[3]);
  }
}

}  // namespace latq

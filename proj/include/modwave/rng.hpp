#pragma once

// Counter-based Gaussian generation: Philox4x32-10 keyed by the run seed,
// with the 128-bit counter holding (step, mode id). Any (seed, step, mode)
// triple maps to the same pair of standard normals regardless of evaluation
// order, which is what makes parallel replicas and re-runs bit-identical.
//
// The mode id is the wavenumber written as a reduced fraction, so grids of
// different size share draws for the wavenumbers they have in common.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace modwave {

namespace detail {

inline void philox_round(std::array<uint32_t, 4>& ctr,
                         std::array<uint32_t, 2>& key) {
  constexpr uint64_t M0 = 0xD2511F53ULL, M1 = 0xCD9E8D57ULL;
  const uint64_t p0 = M0 * ctr[0];
  const uint64_t p1 = M1 * ctr[2];
  const std::array<uint32_t, 4> out = {
      static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
      static_cast<uint32_t>(p1),
      static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
      static_cast<uint32_t>(p0)};
  ctr = out;
  key[0] += 0x9E3779B9U;
  key[1] += 0xBB67AE85U;
}

inline std::array<uint32_t, 4> philox4x32(uint64_t seed, uint64_t c_lo,
                                          uint64_t c_hi) {
  std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(c_lo), static_cast<uint32_t>(c_lo >> 32),
      static_cast<uint32_t>(c_hi), static_cast<uint32_t>(c_hi >> 32)};
  std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                 static_cast<uint32_t>(seed >> 32)};
  for (int r = 0; r < 10; ++r) philox_round(ctr, key);
  return ctr;
}

inline double to_open_unit(uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

}  // namespace detail

// Two independent standard normals for (seed, step, mode id).
inline std::array<double, 2> gaussian_pair(uint64_t seed, uint64_t step,
                                           uint64_t mode_id) {
  const auto r = detail::philox4x32(seed, step, mode_id);
  const uint64_t a = (static_cast<uint64_t>(r[0]) << 32) | r[1];
  const uint64_t b = (static_cast<uint64_t>(r[2]) << 32) | r[3];
  const double u1 = detail::to_open_unit(a);
  const double u2 = detail::to_open_unit(b);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * 3.14159265358979323846 * u2;
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

// Canonical id of the wavenumber k = num/den (den > 0): the reduced fraction
// packed into 64 bits. Grids at different resolution agree on shared modes.
inline uint64_t mode_id(int64_t num, int64_t den) {
  const uint64_t sign = num < 0 ? 1 : 0;
  uint64_t a = static_cast<uint64_t>(num < 0 ? -num : num);
  uint64_t b = static_cast<uint64_t>(den);
  const uint64_t g = std::gcd(a, b);
  if (g > 0) {
    a /= g;
    b /= g;
  }
  return (sign << 63) | (a << 32) | (b & 0xFFFFFFFFULL);
}

}  // namespace modwave

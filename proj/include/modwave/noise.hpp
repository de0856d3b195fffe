#pragma once

// Space-time white noise for the fast equation and the coupled slow noise.
//
// Normalization: increments are returned in orthonormal-basis coordinates
// (basis e^{ikx}/sqrt(|domain|)), so every Fourier mode has increment
// variance dt and the physical-space field has pointwise variance dt/dx.
// Hermitian symmetry is built in on the fast grid so physical fields are real.
//
// The slow noise is a deterministic function of the fast path: slow mode K
// reuses the Gaussians of the fast band mode k = 1 + eps*K, scaled by eps so
// its increments have exact complex white-noise variance dT = eps^2 dt. This
// is the pathwise coupling behind the e^{3/2}-noise / envelope-noise match.

#include <complex>
#include <stdexcept>

#include "modwave/grid.hpp"
#include "modwave/rng.hpp"

namespace modwave {

struct NoisePath {
  uint64_t seed = 0;
  double dt = 0.0;
  // If nonzero, only excite wavenumbers that also lie on the lattice of a
  // grid with this M (domain-size comparison runs share the common band).
  int coarse_M = 0;
};

namespace detail {

inline bool mode_active(const NoisePath& path, int m, int M) {
  if (path.coarse_M <= 0) return true;
  return (static_cast<int64_t>(std::abs(m)) * path.coarse_M) % M == 0;
}

}  // namespace detail

// Unit complex Gaussian for fast mode m (0 <= m <= n/2): E|g|^2 = 1, with the
// self-conjugate modes m = 0 and m = n/2 drawn real. Keyed by the reduced
// wavenumber fraction m/(2M) so different resolutions share the common band.
inline std::complex<double> unit_mode_gaussian(uint64_t seed, uint64_t step,
                                               const FastGrid& grid, int m) {
  const auto g = gaussian_pair(seed, step, mode_id(m, 2 * grid.M));
  if (m == 0 || m == grid.n / 2) return {g[0], 0.0};
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return {g[0] * inv_sqrt2, g[1] * inv_sqrt2};
}

// Hermitian-symmetric Fourier-space increments, variance dt per mode.
inline cvec fast_increments(const NoisePath& path, uint64_t step,
                            const FastGrid& grid) {
  cvec out(static_cast<size_t>(grid.n), {0.0, 0.0});
  const double s = std::sqrt(path.dt);
  for (int m = 0; m <= grid.n / 2; ++m) {
    if (!detail::mode_active(path, m, grid.M)) continue;
    const std::complex<double> xi =
        s * unit_mode_gaussian(path.seed, step, grid, m);
    out[static_cast<size_t>(grid.index_of_mode(m))] = xi;
    if (m > 0 && m < grid.n / 2)
      out[static_cast<size_t>(grid.index_of_mode(-m))] = std::conj(xi);
  }
  return out;
}

struct SlowNoiseView {
  NoisePath path;
  SlowGrid grid;
  int fast_steps_per_slow = 1;

  double dT() const {
    return grid.eps * grid.eps * path.dt * fast_steps_per_slow;
  }
};

inline SlowNoiseView make_slow_noise_view(const NoisePath& path,
                                          const SlowGrid& grid,
                                          int fast_steps_per_slow = 1) {
  if (fast_steps_per_slow < 1)
    throw std::invalid_argument(
        "slow noise: steps per slow step must be a positive integer");
  return SlowNoiseView{path, grid, fast_steps_per_slow};
}

// Complex increments on the slow grid over slow step `slow_step`, variance
// dT per band mode, assembled from the fast band Gaussians.
inline cvec slow_increments(const SlowNoiseView& view, uint64_t slow_step) {
  const SlowGrid& sg = view.grid;
  FastGrid fast = make_fast_grid(sg.fast_M, sg.fast_points_per_2pi);
  cvec out(static_cast<size_t>(sg.n), {0.0, 0.0});
  const double s = sg.eps * std::sqrt(view.path.dt);
  for (int m = -sg.m_half; m <= sg.m_half; ++m) {
    const int fast_mode = 2 * sg.fast_M + m;
    if (!detail::mode_active(view.path, fast_mode, sg.fast_M)) continue;
    std::complex<double> acc{0.0, 0.0};
    for (int sub = 0; sub < view.fast_steps_per_slow; ++sub) {
      const uint64_t fast_step =
          slow_step * static_cast<uint64_t>(view.fast_steps_per_slow) + sub;
      acc += unit_mode_gaussian(view.path.seed, fast_step, fast, fast_mode);
    }
    out[static_cast<size_t>(sg.index_of_mode(m))] = s * acc;
  }
  return out;
}

// Fresh complex white noise on the slow band (GL-only runs), variance dT per
// mode; drawn from a salted stream so it never collides with a fast path.
inline cvec independent_slow_noise(const SlowGrid& grid, double dT,
                                   uint64_t seed, uint64_t step) {
  cvec out(static_cast<size_t>(grid.n), {0.0, 0.0});
  const double s = std::sqrt(dT / 2.0);
  const uint64_t salted = seed ^ 0x6A09E667F3BCC909ULL;
  for (int m = -grid.m_half; m <= grid.m_half; ++m) {
    const auto g =
        gaussian_pair(salted, step, mode_id(m, 4 * grid.fast_M));
    out[static_cast<size_t>(grid.index_of_mode(m))] = {s * g[0], s * g[1]};
  }
  return out;
}

}  // namespace modwave

#pragma once

// Periodic grids for the fast scale x in [-2piM, 2piM) and the slow scale
// X = eps*x carried by the Fourier band around the carrier wavenumber k = 1.
//
// Spectral convention used throughout: a field f is stored either as physical
// samples f(x_i) or as coefficients c_j with
//
//     f(x_i) = sum_j c_j exp(i k_j x_i),   k_j = m(j) * dk,
//
// where m(j) is the signed FFT mode (j for j < n/2, j - n otherwise) and
// x_i = -half_length + i*dx. The phase factor (-1)^m(j) relating this to the
// raw DFT (whose origin is the first sample) is handled inside the transforms,
// so c_j always multiplies exp(i k x) with x measured from the domain center.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "modwave/fft.hpp"

namespace modwave {

inline constexpr double pi = std::numbers::pi;

struct FastGrid {
  int M = 0;               // domain half-length is 2*pi*M
  int points_per_2pi = 0;  // even, >= 8
  int n = 0;               // total points: 2 * M * points_per_2pi
  double dx = 0.0;         // 2*pi / points_per_2pi
  double dk = 0.0;         // wavenumber lattice spacing 1/(2M)
  double half_length = 0.0;

  double x(int i) const { return -half_length + i * dx; }

  // Signed mode number for FFT index j.
  int mode(int j) const { return j < (n + 1) / 2 ? j : j - n; }

  double wavenumber(int j) const { return mode(j) * dk; }

  // FFT index holding signed mode m (m in [-n/2, n/2)).
  int index_of_mode(int m) const { return m >= 0 ? m : m + n; }

  // Index of the carrier k = ell (ell = 1 -> j = 2M).
  int carrier_index(int ell) const { return index_of_mode(ell * 2 * M); }
};

inline FastGrid make_fast_grid(int M, int points_per_2pi) {
  if (M < 1) throw std::invalid_argument("make_fast_grid: M must be >= 1");
  if (points_per_2pi < 8 || points_per_2pi % 2 != 0)
    throw std::invalid_argument(
        "make_fast_grid: points_per_2pi must be even and >= 8");
  FastGrid g;
  g.M = M;
  g.points_per_2pi = points_per_2pi;
  g.n = 2 * M * points_per_2pi;
  g.dx = 2.0 * pi / points_per_2pi;
  g.dk = 1.0 / (2.0 * M);
  g.half_length = 2.0 * pi * M;
  return g;
}

// Slow grid: wavenumbers K = (k - 1)/eps for fast modes k in the band
// [1 - 2*delta, 1 + 2*delta]. Mode m on this grid corresponds exactly to
// fast mode 2M + m. Physical sampling keeps dX = eps*dx, i.e. the slow grid
// points coincide with eps * (fast grid points).
struct SlowGrid {
  double eps = 0.0;
  double delta = 0.0;  // band half-width (support half-width is 2*delta)
  int fast_M = 0;
  int fast_points_per_2pi = 0;
  int m_half = 0;  // band modes run m = -m_half .. m_half
  int n = 0;       // physical point count (same as the fast grid)
  double dK = 0.0;
  double dx = 0.0;  // slow spacing dX = eps * fast dx
  double half_length = 0.0;

  double x(int i) const { return -half_length + i * dx; }
  int mode(int j) const { return j < (n + 1) / 2 ? j : j - n; }
  double wavenumber(int j) const { return mode(j) * dK; }
  int index_of_mode(int m) const { return m >= 0 ? m : m + n; }
  bool in_band(int m) const { return m >= -m_half && m <= m_half; }
};

inline SlowGrid slow_grid_from(const FastGrid& fast, double eps,
                               double band_halfwidth) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("slow_grid_from: eps must be in (0,1)");
  if (!(band_halfwidth > 0.0 && band_halfwidth <= 0.5))
    throw std::invalid_argument("slow_grid_from: delta must be in (0, 1/2]");
  // Fast modes with |k - 1| <= 2*delta: m = -m_half .. m_half around 2M.
  const int m_half =
      static_cast<int>(std::floor(4.0 * fast.M * band_halfwidth + 1e-12));
  if (2 * m_half + 1 < 8)
    throw std::invalid_argument(
        "slow_grid_from: band [1-2delta, 1+2delta] holds fewer than 8 fast "
        "modes; refine the wavenumber lattice (increase M)");
  SlowGrid g;
  g.eps = eps;
  g.delta = band_halfwidth;
  g.fast_M = fast.M;
  g.fast_points_per_2pi = fast.points_per_2pi;
  g.m_half = m_half;
  g.n = fast.n;
  g.dK = fast.dk / eps;
  g.dx = eps * fast.dx;
  g.half_length = 2.0 * pi * fast.M * eps;
  return g;
}

namespace detail {

template <class Grid>
cvec transform_to_physical(const Grid& grid, const cvec& spec) {
  cvec out = spec;
  const int n = grid.n;
  for (int j = 0; j < n; ++j)
    if (grid.mode(j) & 1) out[static_cast<size_t>(j)] = -out[static_cast<size_t>(j)];
  fft_backward(out);
  return out;
}

template <class Grid>
cvec transform_to_spectral(const Grid& grid, const cvec& phys) {
  cvec out = phys;
  fft_forward(out);
  const int n = grid.n;
  const double scale = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    out[static_cast<size_t>(j)] *= scale;
    if (grid.mode(j) & 1) out[static_cast<size_t>(j)] = -out[static_cast<size_t>(j)];
  }
  return out;
}

}  // namespace detail

inline cvec to_physical(const FastGrid& g, const cvec& spec) {
  return detail::transform_to_physical(g, spec);
}
inline cvec to_spectral(const FastGrid& g, const cvec& phys) {
  return detail::transform_to_spectral(g, phys);
}
inline cvec to_physical(const SlowGrid& g, const cvec& spec) {
  return detail::transform_to_physical(g, spec);
}
inline cvec to_spectral(const SlowGrid& g, const cvec& phys) {
  return detail::transform_to_spectral(g, phys);
}

inline void check_provenance(const SlowGrid& slow, const FastGrid& fast) {
  if (slow.fast_M != fast.M || slow.fast_points_per_2pi != fast.points_per_2pi)
    throw std::invalid_argument("slow grid was not derived from this fast grid");
}

// Spectral (zero-padding) interpolation of a band-limited slow field onto the
// fast grid: the slow mode K lands at fast wavenumber eps*K = m*dk exactly, so
// the coefficients transfer index-to-index. Exact for band-limited A.
inline cvec interp_slow_to_fast(const SlowGrid& slow, const cvec& A_spec,
                                const FastGrid& fast) {
  check_provenance(slow, fast);
  cvec out(static_cast<size_t>(fast.n), {0.0, 0.0});
  for (int m = -slow.m_half; m <= slow.m_half; ++m)
    out[static_cast<size_t>(fast.index_of_mode(m))] =
        A_spec[static_cast<size_t>(slow.index_of_mode(m))];
  return to_physical(fast, out);
}

// Spectral derivative: multiply coefficients by (i k)^order.
template <class Grid>
cvec spectral_derivative(const Grid& grid, const cvec& spec, int order) {
  cvec out = spec;
  const std::complex<double> iu(0.0, 1.0);
  for (int j = 0; j < grid.n; ++j) {
    const std::complex<double> ik = iu * grid.wavenumber(j);
    std::complex<double> f = 1.0;
    for (int p = 0; p < order; ++p) f *= ik;
    out[static_cast<size_t>(j)] *= f;
  }
  return out;
}

}  // namespace modwave

#pragma once

// Fourier symbols of the two linear operators, semigroup multipliers, the
// exact Ornstein-Uhlenbeck mode update, smooth band projections, and the
// exchange kernels with their Sobolev norms.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "modwave/grid.hpp"

namespace modwave {

enum class SymbolKind { SwiftHohenberg, GinzburgLandau };

struct SymbolSpec {
  SymbolKind kind = SymbolKind::SwiftHohenberg;
  double nu = 0.0;
  double eps = 0.0;  // Swift-Hohenberg only
};

inline double symbol_eval(const SymbolSpec& spec, double k) {
  if (spec.kind == SymbolKind::SwiftHohenberg) {
    const double q = 1.0 - k * k;
    return -q * q + spec.nu * spec.eps * spec.eps;
  }
  return -4.0 * k * k + spec.nu;
}

template <class Grid>
cvec semigroup_apply(const SymbolSpec& spec, double t, const Grid& grid,
                     const cvec& coeffs) {
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be >= 0");
  cvec out = coeffs;
  for (int j = 0; j < grid.n; ++j)
    out[static_cast<size_t>(j)] *=
        std::exp(t * symbol_eval(spec, grid.wavenumber(j)));
  return out;
}

// Standard deviation of the OU noise term over one step.
inline double ou_step_std(double lambda, double dt) {
  if (lambda == 0.0) return std::sqrt(dt);
  return std::sqrt(std::expm1(2.0 * lambda * dt) / (2.0 * lambda));
}

// Exact distributional update of a stochastic-convolution mode:
// z(t+dt) = e^{lambda dt} z(t) + sigma_dt * xi with xi a unit Gaussian.
inline std::complex<double> ou_mode_update(std::complex<double> z,
                                           double lambda, double dt,
                                           std::complex<double> xi) {
  return std::exp(lambda * dt) * z + ou_step_std(lambda, dt) * xi;
}

// Smooth band projection: 1 on [ell - delta, ell + delta], support in
// [ell - 2 delta, ell + 2 delta], profile exp(1 - 1/(1 - s^2)) across the
// transition.
struct BumpSpec {
  int ell = 1;
  double delta = 0.25;
};

inline double bump_eval(const BumpSpec& spec, double k) {
  const double r = std::abs(k - spec.ell);
  if (r <= spec.delta) return 1.0;
  if (r >= 2.0 * spec.delta) return 0.0;
  const double s = (r - spec.delta) / spec.delta;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

// P-hat with its mirror copy at -ell (supports are disjoint for ell >= 1).
inline double projection_eval(const BumpSpec& spec, double k) {
  double v = bump_eval(spec, k);
  if (spec.ell != 0) v += bump_eval(BumpSpec{-spec.ell, spec.delta}, k);
  return v;
}

enum class KernelVariant {
  SemigroupBand,  // P-hat(k) e^{t lambda_nu(k)}, k fast, t = T/eps^2
  E2Kernel,       // carrier-1 semigroup mismatch, slow variable l
  E3Kernel,       // carrier-3 remnant, slow offset variable k
  ICBandKernel,   // initial-condition band mismatch, fast offset variable k
  ICTailKernel    // initial-condition tail, fast offset variable k
};

struct KernelSpec {
  KernelVariant variant = KernelVariant::SemigroupBand;
  double T = 1.0;  // slow time
  double eps = 0.1;
  double nu = 0.0;
  double delta = 0.25;
};

inline double kernel_eval(const KernelSpec& s, double k) {
  const double t_fast = s.T / (s.eps * s.eps);
  const BumpSpec band1{1, s.delta};
  const BumpSpec band0{0, s.delta};
  switch (s.variant) {
    case KernelVariant::SemigroupBand: {
      const double q = 1.0 - k * k;
      const double lam = -q * q + s.nu * s.eps * s.eps;
      return projection_eval(band1, k) * std::exp(t_fast * lam);
    }
    case KernelVariant::E2Kernel: {
      const double l = k;
      const double bracket = std::expm1(-4.0 * s.T * l * l * l * s.eps -
                                        l * l * l * l * s.T * s.eps * s.eps);
      return bump_eval(band0, s.eps * l) *
             std::exp(-4.0 * s.T * l * l + s.nu * s.T) * bracket;
    }
    case KernelVariant::E3Kernel: {
      const double a = 4.0 + k * s.eps;
      const double b = 2.0 + k * s.eps;
      const double p = projection_eval(band1, 3.0 + s.eps * k);
      const double qhat = 1.0 - p * p;
      return std::exp(s.nu * s.T) * std::exp(-t_fast * a * a * b * b) * qhat;
    }
    case KernelVariant::ICBandKernel: {
      const double sh = std::exp(-t_fast * k * k * (k + 2.0) * (k + 2.0));
      const double gl = std::exp(-4.0 * k * k * t_fast);
      return bump_eval(band0, k) * (sh - gl) * std::exp(s.nu * s.T);
    }
    case KernelVariant::ICTailKernel: {
      const double qhat = 1.0 - bump_eval(band0, k);
      return qhat * std::exp(-4.0 * k * k * t_fast) * std::exp(s.nu * s.T);
    }
  }
  return 0.0;
}

inline cvec kernel_build(const KernelSpec& spec,
                         const std::vector<double>& k_samples) {
  if (spec.T < 0.0) throw std::invalid_argument("kernel_build: T >= 0");
  cvec out(k_samples.size());
  for (size_t i = 0; i < k_samples.size(); ++i)
    out[i] = kernel_eval(spec, k_samples[i]);
  return out;
}

// Sobolev norm of a multiplier sampled on a uniform wavenumber grid:
// || H-hat ||_{H^m}^2 = integral (1 + z^2)^m |H(z)|^2 dz with H the unitary
// inverse transform of the samples. Computed spectrally; for m = 0 this is
// Parseval's identity with the plain quadrature integral of |H-hat|^2.
inline double kernel_sobolev_norm(const std::vector<double>& k_samples,
                                  const cvec& values, double m) {
  if (m < 0.0 || m > 2.0)
    throw std::invalid_argument("kernel_sobolev_norm: m in [0,2]");
  const size_t n = values.size();
  if (n < 2 || k_samples.size() != n)
    throw std::invalid_argument("kernel_sobolev_norm: bad sample arrays");
  const double dk = k_samples[1] - k_samples[0];
  cvec H = values;
  fft_forward(H);
  const double span = dk * static_cast<double>(n);
  const double dz = 2.0 * pi / span;
  const double scale = dk / std::sqrt(2.0 * pi);
  double acc = 0.0;
  for (size_t p = 0; p < n; ++p) {
    const int mp = p < (n + 1) / 2 ? static_cast<int>(p)
                                   : static_cast<int>(p) - static_cast<int>(n);
    const double z = mp * dz;
    const double mag = std::abs(H[p]) * scale;
    acc += std::pow(1.0 + z * z, m) * mag * mag;
  }
  return std::sqrt(acc * dz);
}

enum class ExchangeVariant { E1, E2, E3 };

// Defect fields of the exchange lemmas, computed directly in Fourier space:
//   E1/E2: e^{t L_nu}[D(eps.) e_ell] - (e^{Delta_nu T} D)(eps.) e_1
//   E3:    e^{t L_nu}[D(eps.) e_3]
// with t = T / eps^2. Returns fast-grid spectral coefficients (complex).
inline cvec exchange_defect(const SlowGrid& slow, const cvec& D_spec,
                            const FastGrid& fast, double T, double nu,
                            ExchangeVariant variant, int carrier = 1) {
  check_provenance(slow, fast);
  if (!(T > 0.0)) throw std::invalid_argument("exchange_defect: T > 0");
  const double eps = slow.eps;
  const double t_fast = T / (eps * eps);
  const SymbolSpec sh{SymbolKind::SwiftHohenberg, nu, eps};
  const SymbolSpec gl{SymbolKind::GinzburgLandau, nu, 0.0};
  const int ell = variant == ExchangeVariant::E3 ? 3 : carrier;
  cvec out(static_cast<size_t>(fast.n), {0.0, 0.0});
  for (int m = -slow.m_half; m <= slow.m_half; ++m) {
    const std::complex<double> d =
        D_spec[static_cast<size_t>(slow.index_of_mode(m))];
    const double k_fast = ell + m * fast.dk;
    const double K = m * slow.dK;
    const std::complex<double> sh_part =
        d * std::exp(t_fast * symbol_eval(sh, k_fast));
    const int j_sh = fast.index_of_mode(ell * 2 * fast.M + m);
    if (variant == ExchangeVariant::E3) {
      out[static_cast<size_t>(j_sh)] += sh_part;
    } else {
      const std::complex<double> gl_part =
          d * std::exp(T * symbol_eval(gl, K));
      out[static_cast<size_t>(j_sh)] += sh_part - gl_part;
    }
  }
  return out;
}

}  // namespace modwave

#pragma once

// Polynomial weights w_{rho,c}(x) = (1 + c^2 x^2)^(-rho/2) and the weighted
// norms built on them: L^p_rho, W^{k,p}_rho, the windowed sup norm C^0_kappa
// and the windowed Hoelder norm C^{0,eta}_kappa. All integrals are rectangle
// rule on the periodic grid; sup-type norms run over the dyadic window set
// {1, 2, 4, ..., half_length}.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "modwave/grid.hpp"

namespace modwave {

struct WeightSpec {
  double rho = 2.0;
  double c = 1.0;
};

inline double weight_eval(const WeightSpec& spec, double x) {
  const double y = spec.c * x;
  return std::pow(1.0 + y * y, -spec.rho / 2.0);
}

template <class Grid>
double weighted_lp_norm(const Grid& grid, const cvec& phys,
                        const WeightSpec& spec, double p) {
  if (p < 1.0) throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
  double acc = 0.0;
  for (int i = 0; i < grid.n; ++i)
    acc += weight_eval(spec, grid.x(i)) *
           std::pow(std::abs(phys[static_cast<size_t>(i)]), p);
  return std::pow(acc * grid.dx, 1.0 / p);
}

template <class Grid>
double weighted_sobolev_norm(const Grid& grid, const cvec& spec_coeffs, int k,
                             double p, const WeightSpec& w) {
  if (k < 0) throw std::invalid_argument("weighted_sobolev_norm: k >= 0");
  double acc = 0.0;
  for (int ell = 0; ell <= k; ++ell) {
    const cvec d = to_physical(grid, spectral_derivative(grid, spec_coeffs, ell));
    acc += std::pow(weighted_lp_norm(grid, d, w, p), p);
  }
  return std::pow(acc, 1.0 / p);
}

namespace detail {

inline std::vector<double> dyadic_windows(double half_length) {
  if (half_length < 1.0)
    throw std::invalid_argument("windowed norm: grid half-length must be >= 1");
  std::vector<double> L;
  for (double v = 1.0; v < half_length; v *= 2.0) L.push_back(v);
  L.push_back(half_length);
  return L;
}

}  // namespace detail

// sup over dyadic L of L^(-kappa) * sup_{|x|<=L} |f|.
template <class Grid>
double c0_kappa_norm(const Grid& grid, const cvec& phys, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("c0_kappa_norm: kappa > 0");
  const auto windows = detail::dyadic_windows(grid.half_length);
  double best = 0.0;
  for (double L : windows) {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i)
      if (std::abs(grid.x(i)) <= L)
        s = std::max(s, std::abs(phys[static_cast<size_t>(i)]));
    best = std::max(best, std::pow(L, -kappa) * s);
  }
  return best;
}

// Direct equivalent form sup_x w_kappa(x) |f(x)|.
template <class Grid>
double c0_kappa_direct(const Grid& grid, const cvec& phys, double kappa) {
  WeightSpec w{kappa, 1.0};
  double s = 0.0;
  for (int i = 0; i < grid.n; ++i)
    s = std::max(s, weight_eval(w, grid.x(i)) *
                        std::abs(phys[static_cast<size_t>(i)]));
  return s;
}

// sup over dyadic L of L^(-kappa) * (sup norm + Hoelder quotient) on [-L, L].
// Quotients are taken over grid pairs with |x - y| <= 2; larger separations
// are dominated by the sup-norm term for eta < 1.
template <class Grid>
double holder_norm(const Grid& grid, const cvec& phys, double eta,
                   double kappa) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("holder_norm: eta in (0,1)");
  if (!(kappa > 0.0)) throw std::invalid_argument("holder_norm: kappa > 0");
  const auto windows = detail::dyadic_windows(grid.half_length);
  const int span = std::max(1, static_cast<int>(std::ceil(2.0 / grid.dx)));
  double best = 0.0;
  for (double L : windows) {
    double sup = 0.0, quot = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      const double xi = grid.x(i);
      if (std::abs(xi) > L) continue;
      const double fi = std::abs(phys[static_cast<size_t>(i)]);
      sup = std::max(sup, fi);
      for (int d = 1; d <= span && i + d < grid.n; ++d) {
        const double xj = grid.x(i + d);
        if (std::abs(xj) > L) break;
        const double sep = xj - xi;
        if (sep > 2.0) break;
        const double diff =
            std::abs(phys[static_cast<size_t>(i + d)] - phys[static_cast<size_t>(i)]);
        quot = std::max(quot, diff / std::pow(sep, eta));
      }
    }
    best = std::max(best, std::pow(L, -kappa) * (sup + quot));
  }
  return best;
}

// Smallest C_n with |w^(n)| <= C_n c^n w, by analytic differentiation.
// In s = c*x the derivatives are w^(n) = c^n P_n(s) (1+s^2)^(-rho/2 - n) with
// P_0 = 1 and P_n = P_{n-1}' (1+s^2) - (rho + 2(n-1)) s P_{n-1}, so the ratio
// |w^(n)| / (c^n w) = |P_n(s)| (1+s^2)^(-n) is independent of c; it is
// maximized over a fine s grid.
inline double check_weight_derivatives(const WeightSpec& spec, int n) {
  if (n < 0 || n > 4)
    throw std::invalid_argument("check_weight_derivatives: n in 0..4");
  if (n == 0) return 1.0;
  std::vector<double> P{1.0};  // coefficients, ascending powers of s
  for (int step = 1; step <= n; ++step) {
    std::vector<double> next(P.size() + 1, 0.0);
    for (size_t i = 1; i < P.size(); ++i) {
      next[i - 1] += static_cast<double>(i) * P[i];  // P'
      next[i + 1] += static_cast<double>(i) * P[i];  // P' * s^2
    }
    const double a = spec.rho + 2.0 * (step - 1);
    for (size_t i = 0; i < P.size(); ++i) next[i + 1] -= a * P[i];  // -a s P
    P = std::move(next);
  }
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double s = 50.0 * i / 200000.0;
    double v = 0.0;
    for (size_t j = P.size(); j-- > 0;) v = v * s + P[j];
    best = std::max(best, std::abs(v) * std::pow(1.0 + s * s, -n));
  }
  return best;
}

}  // namespace modwave

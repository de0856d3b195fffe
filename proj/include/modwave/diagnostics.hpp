#pragma once

// Inequality diagnostics: the weighted quadratic-form bound for L0, the
// discrete energy inequality along v-trajectories, and the regularity
// table for envelope runs.

#include <cmath>
#include <vector>

#include "modwave/solvers.hpp"
#include "modwave/weights.hpp"

namespace modwave {

struct QuadraticFormCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Lemma-shape bound on the quadratic form of L0 = -(1 + d_xx)^2:
//   int w_rho v L0 v dx <= -(C2/(1+2C2)) ||v''||^2 + C2(3 + 5C2/2) ||v||^2
// with C2 the measured second-derivative weight constant.
inline QuadraticFormCheck check_quadratic_form(const FastGrid& grid,
                                               const cvec& v_spec,
                                               double rho) {
  const WeightSpec w{rho, 1.0};
  const cvec v = to_physical(grid, v_spec);
  cvec l0v_spec = v_spec;
  for (int j = 0; j < grid.n; ++j) {
    const double k = grid.wavenumber(j);
    const double q = 1.0 - k * k;
    l0v_spec[static_cast<size_t>(j)] *= -q * q;
  }
  const cvec l0v = to_physical(grid, l0v_spec);
  double lhs = 0.0;
  for (int i = 0; i < grid.n; ++i)
    lhs += weight_eval(w, grid.x(i)) *
           (v[static_cast<size_t>(i)] * std::conj(l0v[static_cast<size_t>(i)]))
               .real();
  lhs *= grid.dx;

  const double C2 = check_weight_derivatives(w, 2);
  const double n0 = weighted_lp_norm(grid, v, w, 2.0);
  const double n2 = weighted_lp_norm(
      grid, to_physical(grid, spectral_derivative(grid, v_spec, 2)), w, 2.0);
  QuadraticFormCheck out;
  out.lhs = lhs;
  out.rhs = -(C2 / (1.0 + 2.0 * C2)) * n2 * n2 +
            C2 * (3.0 + 2.5 * C2) * n0 * n0;
  out.pass = lhs <= out.rhs + 1e-9 * (1.0 + std::abs(lhs) + std::abs(out.rhs));
  return out;
}

struct EnergyReport {
  double pass_fraction = 0.0;
  double needed_tolerance = 0.0;  // max over steps of lhs - rhs
  double c_used = 0.0;
  double C_used = 0.0;
  double measured_C = 0.0;  // smallest C making every step pass at c_used
  long steps = 0;
};

// Discrete-time check of the energy inequality
//   d/dt ||v||^2_{L2_rho} <= -c ||v||^2_{H2_rho} - ||v||^4_{L4_rho}
//                            + C ||v||^2_{L2_rho} + C ||Z||^4_{L4_rho}
// along stored (v, Z) snapshots at consecutive steps. The constants come
// from the measured weight-derivative bound: with a = C2/(1+2C2) and
// b = C2(3 + 5C2/2), interpolation of ||v'|| gives c = a and
// C = max(2b + 2 nu_+ eps^2 + a(3 + C2), C_cubic) where C_cubic is the
// Young-inequality constant absorbing -v(v+Z)^3 <= -v^4/2 + C_cubic Z^4.
inline EnergyReport check_energy_inequality(const FastGrid& grid,
                                            const Trajectory& traj, double rho,
                                            double nu, double eps,
                                            double tolerance) {
  const WeightSpec w{rho, 1.0};
  const double C2 = check_weight_derivatives(w, 2);
  const double a = C2 / (1.0 + 2.0 * C2);
  const double b = C2 * (3.0 + 2.5 * C2);
  const double nu_pos = nu > 0.0 ? nu : 0.0;
  const double C_cubic = 548.0;
  EnergyReport rep;
  rep.c_used = a;
  rep.C_used = std::max(2.0 * b + 2.0 * nu_pos * eps * eps + a * (3.0 + C2),
                        2.0 * C_cubic);

  long pass = 0, total = 0;
  for (size_t i = 0; i + 1 < traj.snaps.size(); ++i) {
    const Snapshot& s0 = traj.snaps[i];
    const Snapshot& s1 = traj.snaps[i + 1];
    const double dt = s1.t - s0.t;
    const cvec v0 = to_physical(grid, s0.v);
    const cvec v1 = to_physical(grid, s1.v);
    const cvec z0 = to_physical(grid, s0.z);
    const double e0 = std::pow(weighted_lp_norm(grid, v0, w, 2.0), 2);
    const double e1 = std::pow(weighted_lp_norm(grid, v1, w, 2.0), 2);
    const double lhs = (e1 - e0) / dt;
    const double h2 = weighted_sobolev_norm(grid, s0.v, 2, 2.0, w);
    const double l4 = weighted_lp_norm(grid, v0, w, 4.0);
    const double zl4 = weighted_lp_norm(grid, z0, w, 4.0);
    const double diss = rep.c_used * h2 * h2 + std::pow(l4, 4);
    const double grow = rep.C_used * (e0 + std::pow(zl4, 4));
    const double rhs = -diss + grow;
    ++total;
    if (lhs <= rhs + tolerance) ++pass;
    rep.needed_tolerance = std::max(rep.needed_tolerance, lhs - rhs);
    const double denom = e0 + std::pow(zl4, 4);
    if (denom > 1e-300)
      rep.measured_C = std::max(rep.measured_C, (lhs + diss) / denom);
  }
  rep.steps = total;
  rep.pass_fraction = total > 0 ? static_cast<double>(pass) / total : 1.0;
  return rep;
}

struct RegularityReport {
  double sup_B_l2p = 0.0;     // sup_T ||B||_{L^{2p}_rho}
  double sup_B_h1 = 0.0;      // sup_T ||B||_{H^1_rho}
  double sup_B_w12p = 0.0;    // sup_T ||B||_{W^{1,2p}_rho}
  double sup_A_c0 = 0.0;      // sup_T ||A||_{C^0_kappa}
  double sup_A_holder = 0.0;  // sup_T ||A||_{C^{0,eta}_kappa}
  double sup_B_holder = 0.0;
  double sup_Z_c0 = 0.0;
  double sup_Z_holder = 0.0;
};

inline RegularityReport regularity_report(const SlowGrid& grid,
                                          const Trajectory& traj, double rho,
                                          double p, double kappa, double eta) {
  const WeightSpec w{rho, 1.0};
  RegularityReport rep;
  for (const Snapshot& s : traj.snaps) {
    const cvec B = to_physical(grid, s.v);
    const cvec Z = to_physical(grid, s.z);
    cvec A = B;
    for (size_t j = 0; j < A.size(); ++j) A[j] += Z[j];
    rep.sup_B_l2p =
        std::max(rep.sup_B_l2p, weighted_lp_norm(grid, B, w, 2.0 * p));
    rep.sup_B_h1 =
        std::max(rep.sup_B_h1, weighted_sobolev_norm(grid, s.v, 1, 2.0, w));
    double w12p = 0.0;
    for (int ell = 0; ell <= 1; ++ell) {
      const cvec d = to_physical(grid, spectral_derivative(grid, s.v, ell));
      w12p += std::pow(weighted_lp_norm(grid, d, w, 2.0 * p), 2.0 * p);
    }
    rep.sup_B_w12p = std::max(rep.sup_B_w12p, std::pow(w12p, 0.5 / p));
    rep.sup_A_c0 = std::max(rep.sup_A_c0, c0_kappa_norm(grid, A, kappa));
    rep.sup_A_holder =
        std::max(rep.sup_A_holder, holder_norm(grid, A, eta, kappa));
    rep.sup_B_holder =
        std::max(rep.sup_B_holder, holder_norm(grid, B, eta, kappa));
    rep.sup_Z_c0 = std::max(rep.sup_Z_c0, c0_kappa_norm(grid, Z, kappa));
    rep.sup_Z_holder =
        std::max(rep.sup_Z_holder, holder_norm(grid, Z, eta, kappa));
  }
  return rep;
}

}  // namespace modwave

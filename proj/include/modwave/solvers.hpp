#pragma once

// Time integration. Both equations are integrated through the substitution
// that removes the noise from the nonlinear part: v = u - Z on the fast side,
// B = A - Zs on the slow side, where Z and Zs are the stochastic convolutions
// of the respective linear operators, advanced by the exact OU update. The
// deterministic parts use exponential Euler with the phi1 weight, which is
// exact for the linear flow.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "modwave/config.hpp"
#include "modwave/grid.hpp"
#include "modwave/noise.hpp"
#include "modwave/spectral_ops.hpp"

namespace modwave {

struct BlowupError : std::runtime_error {
  long step;
  explicit BlowupError(long s)
      : std::runtime_error("blow-up detected at step " + std::to_string(s) +
                           " (mode magnitude > 1e6); reduce dt"),
        step(s) {}
};

struct Snapshot {
  double t = 0.0;
  cvec v;  // v (fast runs) or B (slow runs), spectral
  cvec z;  // Z or Zs, spectral
};

struct Trajectory {
  uint64_t cfg_hash = 0;
  uint64_t seed = 0;
  double dt = 0.0;
  std::vector<Snapshot> snaps;
};

namespace detail {

// dt * phi1(lambda dt) = expm1(lambda dt) / lambda, the exact weight of a
// constant forcing under the semigroup.
inline double etd_weight(double lambda, double dt) {
  if (lambda == 0.0) return dt;
  return std::expm1(lambda * dt) / lambda;
}

inline void hermitize(const FastGrid& g, cvec& spec) {
  for (int m = 1; m < g.n / 2; ++m) {
    const size_t a = static_cast<size_t>(g.index_of_mode(m));
    const size_t b = static_cast<size_t>(g.index_of_mode(-m));
    const std::complex<double> avg = 0.5 * (spec[a] + std::conj(spec[b]));
    spec[a] = avg;
    spec[b] = std::conj(avg);
  }
  spec[0] = {spec[0].real(), 0.0};
  const size_t ny = static_cast<size_t>(g.n / 2);
  spec[ny] = {spec[ny].real(), 0.0};
}

inline void check_finite(const cvec& spec, long step) {
  for (const auto& c : spec)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) ||
        std::abs(c) > 1e6)
      throw BlowupError(step);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Initial conditions.
//
// The experiment family is A0(X) = [a0 + sum_j c_j e^{i K_j X}] (1+X^2)^{-1/2}
// truncated to the band; SH runs start from the corresponding modulated wave
// u0 = eps A0(eps x) e^{ix} + c.c. Simple descriptors (zero / constant /
// single cosine) cover the deterministic calibration runs.
// ---------------------------------------------------------------------------

inline cvec initial_slow_field(const SimConfig& cfg, const SlowGrid& slow) {
  cvec phys(static_cast<size_t>(slow.n), {0.0, 0.0});
  if (cfg.initial == "zero") return phys;  // spectrum of zero is zero
  if (cfg.initial.rfind("constant:", 0) == 0) {
    const double a = std::stod(cfg.initial.substr(9));
    cvec spec(static_cast<size_t>(slow.n), {0.0, 0.0});
    spec[0] = a;
    return spec;
  }
  if (cfg.initial == "modulated") {
    const double targets[3] = {0.25, 0.5, 0.75};
    for (int i = 0; i < slow.n; ++i) {
      const double X = slow.x(i);
      std::complex<double> env{0.5, 0.0};
      for (int j = 0; j < 3; ++j) {
        int mj = static_cast<int>(std::lround(targets[j] / slow.dK));
        mj = std::min(mj, slow.m_half);
        const double K = mj * slow.dK;
        env += (0.3 / (j + 1)) *
               std::exp(std::complex<double>(0.0, K * X));
      }
      phys[static_cast<size_t>(i)] = env / std::sqrt(1.0 + X * X);
    }
    cvec spec = to_spectral(slow, phys);
    for (int j = 0; j < slow.n; ++j)
      if (!slow.in_band(slow.mode(j))) spec[static_cast<size_t>(j)] = 0.0;
    return spec;
  }
  throw std::invalid_argument("initial_slow_field: unsupported descriptor '" +
                              cfg.initial + "'");
}

inline cvec initial_fast_field(const SimConfig& cfg, const FastGrid& fast,
                               const SlowGrid& slow) {
  cvec spec(static_cast<size_t>(fast.n), {0.0, 0.0});
  if (cfg.initial == "zero") return spec;
  if (cfg.initial.rfind("cos:", 0) == 0) {
    const auto rest = cfg.initial.substr(4);
    const auto colon = rest.find(':');
    const int q = std::stoi(rest.substr(0, colon));
    const double a =
        colon == std::string::npos ? 1.0 : std::stod(rest.substr(colon + 1));
    spec[static_cast<size_t>(fast.index_of_mode(q * 2 * fast.M))] = a / 2.0;
    spec[static_cast<size_t>(fast.index_of_mode(-q * 2 * fast.M))] = a / 2.0;
    return spec;
  }
  // Modulated wave built from the slow initial data.
  const cvec A0 = initial_slow_field(cfg, slow);
  for (int m = -slow.m_half; m <= slow.m_half; ++m) {
    const std::complex<double> a =
        cfg.eps * A0[static_cast<size_t>(slow.index_of_mode(m))];
    spec[static_cast<size_t>(fast.index_of_mode(2 * fast.M + m))] += a;
    spec[static_cast<size_t>(fast.index_of_mode(-2 * fast.M - m))] +=
        std::conj(a);
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Fast (Swift-Hohenberg) solver.
// ---------------------------------------------------------------------------

class ShSolver {
 public:
  ShSolver(const SimConfig& cfg, const FastGrid& grid, const cvec& u0_spec)
      : cfg_(cfg), grid_(grid), path_{cfg.seed, cfg.dt, cfg.noise_coarse_M} {
    validate(cfg);
    const SymbolSpec sym{SymbolKind::SwiftHohenberg, cfg.nu, cfg.eps};
    elam_.resize(static_cast<size_t>(grid.n));
    weight_.resize(static_cast<size_t>(grid.n));
    oustd_.resize(static_cast<size_t>(grid.n));
    for (int j = 0; j < grid.n; ++j) {
      const double lam = symbol_eval(sym, grid.wavenumber(j));
      elam_[static_cast<size_t>(j)] = std::exp(lam * cfg.dt);
      weight_[static_cast<size_t>(j)] = detail::etd_weight(lam, cfg.dt);
      oustd_[static_cast<size_t>(j)] = ou_step_std(lam, cfg.dt);
    }
    noise_amp_ = cfg.sigma * std::pow(cfg.eps, 1.5) /
                 std::sqrt(4.0 * pi * grid.M);
    v_ = u0_spec;  // Z(0) = 0, so v(0) = u(0)
    z_.assign(static_cast<size_t>(grid.n), {0.0, 0.0});
  }

  void step() {
    if (cfg_.nonlinearity) {
      cvec u = v_;
      for (size_t j = 0; j < u.size(); ++j) u[j] += z_[j];
      cvec phys = to_physical(grid_, u);
      for (auto& p : phys) p = -p * p * p;
      cvec nhat = to_spectral(grid_, phys);
      if (cfg_.dealias) {
        for (int j = 0; j < grid_.n; ++j)
          if (std::abs(grid_.mode(j)) > grid_.n / 3)
            nhat[static_cast<size_t>(j)] = 0.0;
      }
      detail::hermitize(grid_, nhat);
      for (size_t j = 0; j < v_.size(); ++j)
        v_[j] = elam_[j] * v_[j] + weight_[j] * nhat[j];
    } else {
      for (size_t j = 0; j < v_.size(); ++j) v_[j] = elam_[j] * v_[j];
    }
    advance_noise();
    ++step_index_;
    t_ = step_index_ * cfg_.dt;
    detail::check_finite(v_, step_index_);
  }

  const cvec& v() const { return v_; }
  const cvec& z() const { return z_; }
  cvec u() const {
    cvec out = v_;
    for (size_t j = 0; j < out.size(); ++j) out[j] += z_[j];
    return out;
  }
  double t() const { return t_; }
  long step_index() const { return step_index_; }
  const FastGrid& grid() const { return grid_; }

 private:
  void advance_noise() {
    if (cfg_.sigma == 0.0) return;
    for (int m = 0; m <= grid_.n / 2; ++m) {
      const size_t a = static_cast<size_t>(grid_.index_of_mode(m));
      std::complex<double> xi{0.0, 0.0};
      if (detail::mode_active(path_, m, grid_.M))
        xi = unit_mode_gaussian(path_.seed,
                                static_cast<uint64_t>(step_index_), grid_, m);
      z_[a] = elam_[a] * z_[a] + noise_amp_ * oustd_[a] * xi;
      if (m > 0 && m < grid_.n / 2)
        z_[static_cast<size_t>(grid_.index_of_mode(-m))] = std::conj(z_[a]);
    }
  }

  SimConfig cfg_;
  FastGrid grid_;
  NoisePath path_;
  std::vector<double> elam_, weight_, oustd_;
  double noise_amp_ = 0.0;
  cvec v_, z_;
  double t_ = 0.0;
  long step_index_ = 0;
};

// ---------------------------------------------------------------------------
// Slow (Ginzburg-Landau) solver. With `coupled` set, the envelope noise is
// rebuilt from the fast band Gaussians of the shared path; otherwise it draws
// fresh complex white noise.
// ---------------------------------------------------------------------------

class GlSolver {
 public:
  GlSolver(const SimConfig& cfg, const SlowGrid& grid, const cvec& A0_spec,
           bool coupled = true)
      : cfg_(cfg), grid_(grid), coupled_(coupled) {
    validate(cfg);
    fast_ = make_fast_grid(grid.fast_M, grid.fast_points_per_2pi);
    dT_ = cfg.eps * cfg.eps * cfg.dt * cfg.fast_steps_per_slow;
    const SymbolSpec sym{SymbolKind::GinzburgLandau, cfg.nu, 0.0};
    elam_.assign(static_cast<size_t>(grid.n), 0.0);
    weight_.assign(static_cast<size_t>(grid.n), 0.0);
    oustd_.assign(static_cast<size_t>(grid.n), 0.0);
    for (int m = -grid.m_half; m <= grid.m_half; ++m) {
      const size_t j = static_cast<size_t>(grid.index_of_mode(m));
      const double mu = symbol_eval(sym, m * grid.dK);
      elam_[j] = std::exp(mu * dT_);
      weight_[j] = detail::etd_weight(mu, dT_);
      oustd_[j] = ou_step_std(mu, dT_);
    }
    noise_amp_ =
        cfg.sigma / std::sqrt(4.0 * pi * grid.fast_M * cfg.eps);
    B_ = A0_spec;  // Zs(0) = 0
    zs_.assign(static_cast<size_t>(grid.n), {0.0, 0.0});
  }

  void step() {
    if (cfg_.nonlinearity) {
      cvec A = B_;
      for (size_t j = 0; j < A.size(); ++j) A[j] += zs_[j];
      cvec phys = to_physical(grid_, A);
      for (auto& p : phys) p = -3.0 * p * std::norm(p);
      cvec fhat = to_spectral(grid_, phys);
      for (int j = 0; j < grid_.n; ++j)
        if (!grid_.in_band(grid_.mode(j))) fhat[static_cast<size_t>(j)] = 0.0;
      for (size_t j = 0; j < B_.size(); ++j)
        B_[j] = elam_[j] * B_[j] + weight_[j] * fhat[j];
    } else {
      for (size_t j = 0; j < B_.size(); ++j) B_[j] = elam_[j] * B_[j];
    }
    advance_noise();
    ++step_index_;
    T_ = step_index_ * dT_;
    detail::check_finite(B_, step_index_);
  }

  const cvec& B() const { return B_; }
  const cvec& Zs() const { return zs_; }
  cvec A() const {
    cvec out = B_;
    for (size_t j = 0; j < out.size(); ++j) out[j] += zs_[j];
    return out;
  }
  double T() const { return T_; }
  long step_index() const { return step_index_; }
  double dT() const { return dT_; }
  const SlowGrid& grid() const { return grid_; }

 private:
  void advance_noise() {
    if (cfg_.sigma == 0.0) return;
    const double per = std::sqrt(1.0 / cfg_.fast_steps_per_slow);
    for (int m = -grid_.m_half; m <= grid_.m_half; ++m) {
      const size_t j = static_cast<size_t>(grid_.index_of_mode(m));
      std::complex<double> g{0.0, 0.0};
      if (coupled_) {
        const int fast_mode = 2 * grid_.fast_M + m;
        NoisePath p{cfg_.seed, cfg_.dt, cfg_.noise_coarse_M};
        if (detail::mode_active(p, fast_mode, grid_.fast_M)) {
          for (int sub = 0; sub < cfg_.fast_steps_per_slow; ++sub) {
            const uint64_t fs = static_cast<uint64_t>(step_index_) *
                                    cfg_.fast_steps_per_slow +
                                sub;
            g += unit_mode_gaussian(cfg_.seed, fs, fast_, fast_mode);
          }
          g *= per;
        }
      } else {
        const auto r = gaussian_pair(cfg_.seed ^ 0x6A09E667F3BCC909ULL,
                                     static_cast<uint64_t>(step_index_),
                                     mode_id(m, 4 * grid_.fast_M));
        g = {r[0] * 0.70710678118654752440, r[1] * 0.70710678118654752440};
      }
      zs_[j] = elam_[j] * zs_[j] + noise_amp_ * oustd_[j] * g;
    }
  }

  SimConfig cfg_;
  SlowGrid grid_;
  FastGrid fast_;
  bool coupled_;
  double dT_ = 0.0;
  std::vector<double> elam_, weight_, oustd_;
  double noise_amp_ = 0.0;
  cvec B_, zs_;
  double T_ = 0.0;
  long step_index_ = 0;
};

// ---------------------------------------------------------------------------
// Whole-run drivers.
// ---------------------------------------------------------------------------

inline long fast_step_count(const SimConfig& cfg) {
  return std::lround(cfg.T0 / (cfg.eps * cfg.eps) / cfg.dt);
}

inline int effective_record_every(const SimConfig& cfg, long steps) {
  if (cfg.record_every > 0) return cfg.record_every;
  return std::max(1L, steps / 100);
}

inline Trajectory run_sh(const SimConfig& cfg) {
  const FastGrid fast = make_fast_grid(cfg.M, cfg.points_per_2pi);
  const SlowGrid slow = slow_grid_from(fast, cfg.eps, cfg.band_halfwidth);
  ShSolver solver(cfg, fast, initial_fast_field(cfg, fast, slow));
  const long steps = fast_step_count(cfg);
  const int rec = effective_record_every(cfg, steps);
  Trajectory traj{config_hash(cfg), cfg.seed, cfg.dt, {}};
  traj.snaps.push_back({0.0, solver.v(), solver.z()});
  for (long s = 1; s <= steps; ++s) {
    solver.step();
    if (s % rec == 0 || s == steps)
      traj.snaps.push_back({solver.t(), solver.v(), solver.z()});
  }
  return traj;
}

inline Trajectory run_gl(const SimConfig& cfg, bool coupled = false) {
  const FastGrid fast = make_fast_grid(cfg.M, cfg.points_per_2pi);
  const SlowGrid slow = slow_grid_from(fast, cfg.eps, cfg.band_halfwidth);
  GlSolver solver(cfg, slow, initial_slow_field(cfg, slow), coupled);
  const long steps =
      std::lround(cfg.T0 / (cfg.eps * cfg.eps * cfg.dt *
                            cfg.fast_steps_per_slow));
  const int rec = effective_record_every(cfg, steps);
  Trajectory traj{config_hash(cfg), cfg.seed, cfg.dt, {}};
  traj.snaps.push_back({0.0, solver.B(), solver.Zs()});
  for (long s = 1; s <= steps; ++s) {
    solver.step();
    if (s % rec == 0 || s == steps)
      traj.snaps.push_back({solver.T(), solver.B(), solver.Zs()});
  }
  return traj;
}

// Pure stochastic-convolution field at t = steps * dt (fast symbol), in
// field (c) coordinates: multiply by eps^{3/2} sigma / sqrt(|domain|).
inline cvec sh_stochastic_convolution(const SimConfig& cfg,
                                      const FastGrid& grid, long steps) {
  SimConfig c = cfg;
  c.nonlinearity = false;
  ShSolver solver(c, grid, cvec(static_cast<size_t>(grid.n), {0.0, 0.0}));
  for (long s = 0; s < steps; ++s) solver.step();
  return solver.z();
}

}  // namespace modwave

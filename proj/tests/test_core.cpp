// Grids, weighted norms, noise generation, and the spectral operator layer.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "modwave/fit.hpp"
#include "modwave/noise.hpp"
#include "modwave/spectral_ops.hpp"
#include "modwave/weights.hpp"

using namespace modwave;
using Catch::Approx;

namespace {

cvec random_band_limited(const FastGrid& g, uint64_t seed, int max_mode) {
  cvec spec(static_cast<size_t>(g.n), {0.0, 0.0});
  for (int m = 0; m <= max_mode; ++m) {
    const auto r = gaussian_pair(seed, 0, mode_id(m, 2 * g.M));
    const std::complex<double> a{r[0], m == 0 ? 0.0 : r[1]};
    spec[static_cast<size_t>(g.index_of_mode(m))] = a;
    if (m > 0) spec[static_cast<size_t>(g.index_of_mode(-m))] = std::conj(a);
  }
  return spec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Grids.
// ---------------------------------------------------------------------------

TEST_CASE("fast grid layout") {
  const FastGrid g = make_fast_grid(2, 16);
  CHECK(g.n == 64);
  CHECK(g.dx == Approx(pi / 8.0));
  CHECK(g.dk == Approx(0.25));
  CHECK(g.carrier_index(1) == 4);  // k = 1 sits at mode 2M
  CHECK(g.wavenumber(4) == Approx(1.0));
  CHECK(g.n * g.dx == Approx(4.0 * pi * g.M));

  const FastGrid big = make_fast_grid(16, 16);
  CHECK(big.n == 512);
  CHECK(big.half_length == Approx(32.0 * pi));
  CHECK(big.x(0) == Approx(-32.0 * pi));
}

TEST_CASE("fast grid rejects bad parameters") {
  CHECK_THROWS_AS(make_fast_grid(0, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_fast_grid(1, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_fast_grid(1, 6), std::invalid_argument);
}

TEST_CASE("slow grid lattice") {
  const FastGrid fast = make_fast_grid(16, 16);
  const SlowGrid slow = slow_grid_from(fast, 0.25, 0.5);
  CHECK(slow.dK == Approx(0.125));
  CHECK(slow.dx == Approx(0.25 * fast.dx));

  const SlowGrid half = slow_grid_from(fast, 0.5, 0.5);
  CHECK(half.half_length == Approx(16.0 * pi));

  const FastGrid coarse = make_fast_grid(2, 16);
  CHECK_THROWS_AS(slow_grid_from(coarse, 0.1, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(slow_grid_from(fast, 1.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(slow_grid_from(fast, 0.25, 0.7), std::invalid_argument);
}

TEST_CASE("fast/slow wavenumber correspondence is exact") {
  const FastGrid fast = make_fast_grid(16, 16);
  const SlowGrid slow = slow_grid_from(fast, 0.2, 0.25);
  for (int m = -slow.m_half; m <= slow.m_half; ++m) {
    const double k_fast = fast.wavenumber(fast.index_of_mode(2 * fast.M + m));
    const double K = m * slow.dK;
    CHECK(k_fast == Approx(1.0 + slow.eps * K).margin(1e-14));
  }
}

TEST_CASE("transform round trip") {
  const FastGrid fast = make_fast_grid(4, 16);
  const cvec spec = random_band_limited(fast, 11, 10);
  const cvec back = to_spectral(fast, to_physical(fast, spec));
  for (int j = 0; j < fast.n; ++j)
    CHECK(std::abs(back[static_cast<size_t>(j)] - spec[static_cast<size_t>(j)]) <
          1e-12);

  const SlowGrid slow = slow_grid_from(make_fast_grid(16, 16), 0.2, 0.25);
  cvec sspec(static_cast<size_t>(slow.n), {0.0, 0.0});
  for (int m = -slow.m_half; m <= slow.m_half; ++m) {
    const auto r = gaussian_pair(5, 0, mode_id(m + 100, 1));
    sspec[static_cast<size_t>(slow.index_of_mode(m))] = {r[0], r[1]};
  }
  const cvec sback = to_spectral(slow, to_physical(slow, sspec));
  for (int j = 0; j < slow.n; ++j)
    CHECK(std::abs(sback[static_cast<size_t>(j)] - sspec[static_cast<size_t>(j)]) <
          1e-12);
}

TEST_CASE("slow-to-fast interpolation") {
  const FastGrid fast = make_fast_grid(16, 16);
  const SlowGrid slow = slow_grid_from(fast, 0.25, 0.25);

  SECTION("constants interpolate exactly") {
    cvec A(static_cast<size_t>(slow.n), {0.0, 0.0});
    A[0] = 1.0;
    const cvec f = interp_slow_to_fast(slow, A, fast);
    for (const auto& v : f) CHECK(std::abs(v - std::complex<double>{1.0, 0.0}) < 1e-12);
  }

  SECTION("single lattice mode") {
    cvec A(static_cast<size_t>(slow.n), {0.0, 0.0});
    const int m1 = 3;
    A[static_cast<size_t>(slow.index_of_mode(m1))] = 1.0;
    const double K1 = m1 * slow.dK;
    const cvec f = interp_slow_to_fast(slow, A, fast);
    for (int i = 0; i < fast.n; ++i) {
      const std::complex<double> want =
          std::exp(std::complex<double>(0.0, K1 * slow.eps * fast.x(i)));
      CHECK(std::abs(f[static_cast<size_t>(i)] - want) < 1e-12);
    }
  }

  SECTION("random band-limited field matches the direct mode sum") {
    cvec A(static_cast<size_t>(slow.n), {0.0, 0.0});
    for (int m = -slow.m_half; m <= slow.m_half; ++m) {
      const auto r = gaussian_pair(9, 1, mode_id(m + 200, 1));
      A[static_cast<size_t>(slow.index_of_mode(m))] = {r[0], r[1]};
    }
    const cvec f = interp_slow_to_fast(slow, A, fast);
    for (int i = 0; i < fast.n; i += 7) {
      std::complex<double> want{0.0, 0.0};
      for (int m = -slow.m_half; m <= slow.m_half; ++m)
        want += A[static_cast<size_t>(slow.index_of_mode(m))] *
                std::exp(std::complex<double>(
                    0.0, m * slow.dK * slow.eps * fast.x(i)));
      CHECK(std::abs(f[static_cast<size_t>(i)] - want) < 1e-12);
    }
  }

  SECTION("provenance check") {
    const FastGrid other = make_fast_grid(8, 16);
    cvec A(static_cast<size_t>(slow.n), {0.0, 0.0});
    CHECK_THROWS_AS(interp_slow_to_fast(slow, A, other), std::invalid_argument);
  }
}

TEST_CASE("spectral derivative of a single mode") {
  const FastGrid g = make_fast_grid(2, 16);
  cvec spec(static_cast<size_t>(g.n), {0.0, 0.0});
  spec[static_cast<size_t>(g.carrier_index(1))] = 0.5;
  spec[static_cast<size_t>(g.index_of_mode(-2 * g.M))] = 0.5;  // cos(x)
  const cvec d = to_physical(g, spectral_derivative(g, spec, 1));
  for (int i = 0; i < g.n; ++i)
    CHECK(d[static_cast<size_t>(i)].real() ==
          Approx(-std::sin(g.x(i))).margin(1e-12));
}

// ---------------------------------------------------------------------------
// Weights and norms.
// ---------------------------------------------------------------------------

TEST_CASE("weight evaluation") {
  CHECK(weight_eval({2.0, 1.0}, 0.0) == 1.0);
  CHECK(weight_eval({2.0, 1.0}, 1.0) == Approx(0.5));
  CHECK(weight_eval({2.0, 0.1}, 10.0) == Approx(0.5));
}

TEST_CASE("weighted Lp norm against analytic integrals") {
  const FastGrid g = make_fast_grid(16, 16);  // domain [-32pi, 32pi)
  const cvec ones(static_cast<size_t>(g.n), {1.0, 0.0});
  const cvec zeros(static_cast<size_t>(g.n), {0.0, 0.0});
  CHECK(weighted_lp_norm(g, zeros, {2.0, 1.0}, 2.0) == 0.0);
  // integral of (1+x^2)^-1 over R is pi; tail truncation stays below 2%.
  CHECK(weighted_lp_norm(g, ones, {2.0, 1.0}, 1.0) == Approx(pi).epsilon(0.02));
  const double eps = 0.2;
  const FastGrid big = make_fast_grid(32, 16);
  const cvec ones_big(static_cast<size_t>(big.n), {1.0, 0.0});
  CHECK(weighted_lp_norm(big, ones_big, {2.0, eps}, 1.0) ==
        Approx(pi / eps).epsilon(0.02));
  CHECK_THROWS_AS(weighted_lp_norm(g, ones, {2.0, 1.0}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("weighted Sobolev norm") {
  const FastGrid g = make_fast_grid(16, 16);
  const WeightSpec w{2.0, 1.0};
  cvec ones_spec(static_cast<size_t>(g.n), {0.0, 0.0});
  ones_spec[0] = 1.0;
  CHECK(weighted_sobolev_norm(g, ones_spec, 1, 2.0, w) ==
        Approx(weighted_lp_norm(g, to_physical(g, ones_spec), w, 2.0)));

  // f = sin(x): |f|^2 + |f'|^2 + |f''|^2 = sin^2 + cos^2 + sin^2.
  cvec sin_spec(static_cast<size_t>(g.n), {0.0, 0.0});
  sin_spec[static_cast<size_t>(g.carrier_index(1))] = {0.0, -0.5};
  sin_spec[static_cast<size_t>(g.index_of_mode(-2 * g.M))] = {0.0, 0.5};
  double direct = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double s = std::sin(g.x(i)), c = std::cos(g.x(i));
    direct += weight_eval(w, g.x(i)) * (s * s + c * c + s * s);
  }
  direct = std::sqrt(direct * g.dx);
  CHECK(weighted_sobolev_norm(g, sin_spec, 2, 2.0, w) ==
        Approx(direct).margin(1e-10));

  const cvec zero(static_cast<size_t>(g.n), {0.0, 0.0});
  CHECK(weighted_sobolev_norm(g, zero, 2, 2.0, w) == 0.0);
}

TEST_CASE("windowed sup norm") {
  const FastGrid g = make_fast_grid(16, 16);
  const cvec ones(static_cast<size_t>(g.n), {1.0, 0.0});
  CHECK(c0_kappa_norm(g, ones, 0.5) == Approx(1.0));
  cvec zeros(static_cast<size_t>(g.n), {0.0, 0.0});
  CHECK(c0_kappa_norm(g, zeros, 0.5) == 0.0);

  cvec ramp(static_cast<size_t>(g.n));
  for (int i = 0; i < g.n; ++i) ramp[static_cast<size_t>(i)] = g.x(i);
  // L^-1 * sup_{|x|<=L} |x| = 1 at every dyadic window.
  CHECK(c0_kappa_norm(g, ramp, 1.0) == Approx(1.0).epsilon(0.02));
  CHECK(c0_kappa_direct(g, ramp, 1.0) == Approx(1.0).epsilon(0.02));
}

TEST_CASE("windowed and direct sup forms are equivalent within fixed factors") {
  const FastGrid g = make_fast_grid(16, 16);
  const double kappa = 0.3;
  double lo = 1e300, hi = 0.0;
  for (uint64_t s = 1; s <= 12; ++s) {
    const cvec f = to_physical(g, random_band_limited(g, s, 24));
    const double ratio =
        c0_kappa_norm(g, f, kappa) / c0_kappa_direct(g, f, kappa);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.4);
  CHECK(hi < 3.0);
}

TEST_CASE("Hoelder norm") {
  const FastGrid g = make_fast_grid(2, 32);
  const cvec consts(static_cast<size_t>(g.n), {0.7, 0.0});
  CHECK(holder_norm(g, consts, 0.5, 0.3) ==
        Approx(c0_kappa_norm(g, consts, 0.3)));

  // brute force over every grid pair with |x - y| <= 2.
  auto brute = [&](const cvec& f, double eta, double kappa) {
    double best = 0.0;
    for (double L = 1.0; true; L *= 2.0) {
      const double Lc = std::min(L, g.half_length);
      double sup = 0.0, quot = 0.0;
      for (int i = 0; i < g.n; ++i) {
        if (std::abs(g.x(i)) > Lc) continue;
        sup = std::max(sup, std::abs(f[static_cast<size_t>(i)]));
        for (int j = i + 1; j < g.n; ++j) {
          if (std::abs(g.x(j)) > Lc) continue;
          const double sep = g.x(j) - g.x(i);
          if (sep > 2.0) break;
          quot = std::max(quot, std::abs(f[static_cast<size_t>(j)] -
                                         f[static_cast<size_t>(i)]) /
                                    std::pow(sep, eta));
        }
      }
      best = std::max(best, std::pow(Lc, -kappa) * (sup + quot));
      if (L >= g.half_length) break;
    }
    return best;
  };

  cvec vee(static_cast<size_t>(g.n));
  for (int i = 0; i < g.n; ++i) vee[static_cast<size_t>(i)] = std::abs(g.x(i));
  CHECK(holder_norm(g, vee, 0.5, 0.3) ==
        Approx(brute(vee, 0.5, 0.3)).margin(1e-8));

  cvec cosx(static_cast<size_t>(g.n));
  for (int i = 0; i < g.n; ++i) cosx[static_cast<size_t>(i)] = std::cos(g.x(i));
  CHECK(holder_norm(g, cosx, 0.99, 0.3) ==
        Approx(brute(cosx, 0.99, 0.3)).margin(1e-8));
}

TEST_CASE("weight derivative constants") {
  CHECK(check_weight_derivatives({2.0, 1.0}, 0) == 1.0);
  // |w'|/w = 2|x|/(1+x^2) peaks at x = 1 with value 1.
  CHECK(check_weight_derivatives({2.0, 1.0}, 1) == Approx(1.0).margin(1e-6));
  CHECK(check_weight_derivatives({2.0, 0.1}, 1) ==
        Approx(check_weight_derivatives({2.0, 1.0}, 1)));
  CHECK_THROWS_AS(check_weight_derivatives({2.0, 1.0}, 5),
                  std::invalid_argument);
}

TEST_CASE("norm properties") {
  const FastGrid g = make_fast_grid(16, 16);
  const cvec f = to_physical(g, random_band_limited(g, 21, 16));

  SECTION("monotone in rho") {
    CHECK(weighted_lp_norm(g, f, {4.0, 1.0}, 2.0) <=
          weighted_lp_norm(g, f, {2.0, 1.0}, 2.0) + 1e-12);
  }

  SECTION("absolute homogeneity") {
    cvec g3 = f;
    for (auto& v : g3) v *= -3.0;
    CHECK(weighted_lp_norm(g, g3, {2.0, 1.0}, 2.0) ==
          Approx(3.0 * weighted_lp_norm(g, f, {2.0, 1.0}, 2.0)).margin(1e-12));
    CHECK(c0_kappa_norm(g, g3, 0.3) ==
          Approx(3.0 * c0_kappa_norm(g, f, 0.3)).margin(1e-12));
  }

  SECTION("local Sobolev norms are controlled by the weighted norm") {
    // L^{-rho/p} * ||f||_{L^p[-L,L]} <= C ||f||_{L^p_rho} at every dyadic L,
    // with one C stable across a random family.
    const double rho = 2.0, p = 2.0;
    double Cmax = 0.0;
    for (uint64_t s = 1; s <= 8; ++s) {
      const cvec h = to_physical(g, random_band_limited(g, 100 + s, 20));
      const double wn = weighted_lp_norm(g, h, {rho, 1.0}, p);
      for (double L : detail::dyadic_windows(g.half_length)) {
        double acc = 0.0;
        for (int i = 0; i < g.n; ++i)
          if (std::abs(g.x(i)) <= L)
            acc += std::pow(std::abs(h[static_cast<size_t>(i)]), p);
        const double local = std::pow(acc * g.dx, 1.0 / p);
        Cmax = std::max(Cmax, std::pow(L, -rho / p) * local / wn);
      }
    }
    CHECK(Cmax < 4.0);
  }
}

// ---------------------------------------------------------------------------
// Counter RNG and noise.
// ---------------------------------------------------------------------------

TEST_CASE("mode ids are reduced fractions") {
  CHECK(mode_id(2, 4) == mode_id(1, 2));
  CHECK(mode_id(6, 4) == mode_id(3, 2));
  CHECK(mode_id(1, 2) != mode_id(-1, 2));
  CHECK(mode_id(0, 4) == mode_id(0, 2));
}

TEST_CASE("gaussian pairs are deterministic and standard normal") {
  const auto a = gaussian_pair(42, 7, 3);
  const auto b = gaussian_pair(42, 7, 3);
  CHECK(a[0] == b[0]);
  CHECK(a[1] == b[1]);
  CHECK(gaussian_pair(43, 7, 3)[0] != a[0]);

  double s1 = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto g = gaussian_pair(1, static_cast<uint64_t>(i), 0);
    s1 += g[0] + g[1];
    s2 += g[0] * g[0] + g[1] * g[1];
  }
  CHECK(s1 / (2 * n) == Approx(0.0).margin(0.02));
  CHECK(s2 / (2 * n) == Approx(1.0).epsilon(0.03));
}

TEST_CASE("fast increments") {
  const FastGrid g = make_fast_grid(2, 16);
  const NoisePath path{5, 0.01, 0};

  SECTION("deterministic and zero at dt = 0") {
    const cvec a = fast_increments(path, 3, g);
    const cvec b = fast_increments(path, 3, g);
    for (int j = 0; j < g.n; ++j)
      CHECK(a[static_cast<size_t>(j)] == b[static_cast<size_t>(j)]);
    const cvec z = fast_increments({5, 0.0, 0}, 3, g);
    for (const auto& v : z) CHECK(v == std::complex<double>{0.0, 0.0});
  }

  SECTION("per-mode variance dt, physical field real") {
    const int reps = 10000;
    double var_int = 0.0, var_edge = 0.0;
    for (int r = 0; r < reps; ++r) {
      const cvec inc = fast_increments(path, static_cast<uint64_t>(r), g);
      var_int += std::norm(inc[static_cast<size_t>(g.index_of_mode(3))]);
      var_edge += std::norm(inc[0]);
    }
    CHECK(var_int / reps == Approx(path.dt).epsilon(0.05));
    CHECK(var_edge / reps == Approx(path.dt).epsilon(0.05));

    const cvec phys = to_physical(g, fast_increments(path, 0, g));
    for (const auto& v : phys) CHECK(std::abs(v.imag()) < 1e-12);
  }

  SECTION("summed steps accumulate variance linearly") {
    const int reps = 5000, span = 4;
    double var = 0.0;
    for (int r = 0; r < reps; ++r) {
      std::complex<double> acc{0.0, 0.0};
      for (int s = 0; s < span; ++s) {
        const cvec inc =
            fast_increments(path, static_cast<uint64_t>(r * span + s), g);
        acc += inc[static_cast<size_t>(g.index_of_mode(5))];
      }
      var += std::norm(acc);
    }
    CHECK(var / reps == Approx(span * path.dt).epsilon(0.07));
  }
}

TEST_CASE("slow increments couple to the fast band") {
  const FastGrid fast = make_fast_grid(16, 16);
  const SlowGrid slow = slow_grid_from(fast, 0.2, 0.25);
  const NoisePath path{9, 0.01, 0};
  const SlowNoiseView view = make_slow_noise_view(path, slow, 2);
  CHECK(view.dT() == Approx(0.2 * 0.2 * 0.01 * 2));
  CHECK_THROWS_AS(make_slow_noise_view(path, slow, 0), std::invalid_argument);

  SECTION("variance dT per mode, modes uncorrelated") {
    const int reps = 10000;
    const size_t j1 = static_cast<size_t>(slow.index_of_mode(2));
    const size_t j2 = static_cast<size_t>(slow.index_of_mode(-5));
    double v1 = 0.0, v2 = 0.0;
    std::complex<double> cross{0.0, 0.0};
    for (int r = 0; r < reps; ++r) {
      const cvec inc = slow_increments(view, static_cast<uint64_t>(r));
      v1 += std::norm(inc[j1]);
      v2 += std::norm(inc[j2]);
      cross += inc[j1] * std::conj(inc[j2]);
    }
    CHECK(v1 / reps == Approx(view.dT()).epsilon(0.05));
    CHECK(v2 / reps == Approx(view.dT()).epsilon(0.05));
    CHECK(std::abs(cross) / reps / view.dT() < 0.05);
  }

  SECTION("deterministic function of the fast path; zero when dt = 0") {
    const cvec a = slow_increments(view, 4);
    const cvec b = slow_increments(view, 4);
    for (int j = 0; j < slow.n; ++j)
      CHECK(a[static_cast<size_t>(j)] == b[static_cast<size_t>(j)]);
    const SlowNoiseView dead = make_slow_noise_view({9, 0.0, 0}, slow, 2);
    for (const auto& v : slow_increments(dead, 4))
      CHECK(v == std::complex<double>{0.0, 0.0});
  }
}

TEST_CASE("independent slow noise") {
  const SlowGrid slow = slow_grid_from(make_fast_grid(16, 16), 0.2, 0.25);
  const double dT = 4e-4;
  const cvec a = independent_slow_noise(slow, dT, 3, 7);
  const cvec b = independent_slow_noise(slow, dT, 3, 7);
  for (int j = 0; j < slow.n; ++j)
    CHECK(a[static_cast<size_t>(j)] == b[static_cast<size_t>(j)]);
  for (const auto& v : independent_slow_noise(slow, 0.0, 3, 7))
    CHECK(v == std::complex<double>{0.0, 0.0});

  double var = 0.0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r)
    var += std::norm(independent_slow_noise(
        slow, dT, 3, static_cast<uint64_t>(r))[static_cast<size_t>(
        slow.index_of_mode(3))]);
  CHECK(var / reps == Approx(dT).epsilon(0.05));
}

// ---------------------------------------------------------------------------
// Symbols, semigroups, OU updates, bumps, kernels.
// ---------------------------------------------------------------------------

TEST_CASE("symbols") {
  CHECK(symbol_eval({SymbolKind::SwiftHohenberg, 1.0, 0.1}, 1.0) ==
        Approx(0.01));
  CHECK(symbol_eval({SymbolKind::SwiftHohenberg, 0.0, 0.0}, 0.0) ==
        Approx(-1.0));
  CHECK(symbol_eval({SymbolKind::GinzburgLandau, 0.0, 0.0}, 1.0) ==
        Approx(-4.0));
}

TEST_CASE("semigroup multiplier") {
  const FastGrid g = make_fast_grid(2, 16);
  const SymbolSpec sym{SymbolKind::SwiftHohenberg, 0.0, 0.0};
  const cvec spec = random_band_limited(g, 2, 8);

  const cvec id = semigroup_apply(sym, 0.0, g, spec);
  for (int j = 0; j < g.n; ++j)
    CHECK(id[static_cast<size_t>(j)] == spec[static_cast<size_t>(j)]);

  cvec cos1(static_cast<size_t>(g.n), {0.0, 0.0});
  cos1[static_cast<size_t>(g.carrier_index(1))] = 0.5;
  cos1[static_cast<size_t>(g.index_of_mode(-2 * g.M))] = 0.5;
  const cvec c1 = semigroup_apply(sym, 1.0, g, cos1);
  CHECK(c1[static_cast<size_t>(g.carrier_index(1))].real() == Approx(0.5));

  cvec cos2(static_cast<size_t>(g.n), {0.0, 0.0});
  cos2[static_cast<size_t>(g.carrier_index(2))] = 0.5;
  const cvec c2 = semigroup_apply(sym, 1.0, g, cos2);
  CHECK(c2[static_cast<size_t>(g.carrier_index(2))].real() ==
        Approx(0.5 * std::exp(-9.0)));

  CHECK_THROWS_AS(semigroup_apply(sym, -1.0, g, spec), std::invalid_argument);

  // semigroup property e^{(t1+t2)L} = e^{t1 L} e^{t2 L}.
  const cvec ab = semigroup_apply(sym, 0.7, g, semigroup_apply(sym, 0.3, g, spec));
  const cvec once = semigroup_apply(sym, 1.0, g, spec);
  for (int j = 0; j < g.n; ++j)
    CHECK(std::abs(ab[static_cast<size_t>(j)] - once[static_cast<size_t>(j)]) <
          1e-12);
}

TEST_CASE("OU update") {
  CHECK(ou_step_std(0.0, 0.04) == Approx(std::sqrt(0.04)));
  CHECK(ou_step_std(-1.0, 1e6) == Approx(std::sqrt(0.5)));
  CHECK(ou_mode_update({0, 0}, -1.0, 0.1, {0, 0}) ==
        std::complex<double>{0.0, 0.0});

  for (double lambda : {-0.1, -1.0, -10.0}) {
    const double dt = 0.05, t_end = 1.0;
    const int steps = static_cast<int>(t_end / dt), reps = 10000;
    double var = 0.0;
    for (int r = 0; r < reps; ++r) {
      std::complex<double> z{0.0, 0.0};
      for (int s = 0; s < steps; ++s) {
        const auto g = gaussian_pair(77, static_cast<uint64_t>(r * steps + s), 1);
        z = ou_mode_update(z, lambda, dt, {g[0], 0.0});
      }
      var += z.real() * z.real();
    }
    const double want = -std::expm1(2.0 * lambda * t_end) / (-2.0 * lambda);
    CHECK(var / reps == Approx(want).epsilon(0.05));
  }
}

TEST_CASE("bump profile") {
  const BumpSpec b{1, 0.25};
  CHECK(bump_eval(b, 1.0) == 1.0);
  CHECK(bump_eval(b, 1.0 + 2 * 0.25) == 0.0);
  // midway through the transition: s = 0.5 -> exp(1 - 1/(1 - 0.25)).
  CHECK(bump_eval(b, 1.0 + 1.5 * 0.25) == Approx(std::exp(1.0 - 4.0 / 3.0)));
  CHECK(projection_eval(b, -1.0) == 1.0);
  for (double k = -3.0; k <= 3.0; k += 0.01) {
    CHECK(projection_eval(b, k) >= 0.0);
    CHECK(projection_eval(b, k) <= 1.0 + 1e-15);
  }
}

TEST_CASE("kernel formulas") {
  SECTION("structural zeros") {
    CHECK(kernel_eval({KernelVariant::E2Kernel, 1.0, 0.1, 0.0, 0.25}, 0.0) ==
          0.0);
    // inside the cut band at carrier 3 the complement projection vanishes.
    CHECK(kernel_eval({KernelVariant::E3Kernel, 1.0, 0.1, 0.0, 0.25}, 0.0) ==
          0.0);
  }

  SECTION("scalar oracle for the carrier-1 mismatch kernel") {
    const KernelSpec s{KernelVariant::E2Kernel, 1.0, 0.1, 0.0, 0.25};
    const double l = 0.5;
    const double want = bump_eval({0, 0.25}, 0.1 * l) *
                        std::exp(-4.0 * l * l) *
                        std::expm1(-4.0 * l * l * l * 0.1 -
                                   l * l * l * l * 0.01);
    CHECK(kernel_eval(s, l) == Approx(want).margin(1e-15));
  }

  SECTION("Sobolev norm of a multiplier") {
    const int n = 1 << 12;
    std::vector<double> ks(n);
    cvec zero(n, {0.0, 0.0}), gauss(n);
    for (int i = 0; i < n; ++i) {
      ks[static_cast<size_t>(i)] = -20.0 + 40.0 * i / n;
      gauss[static_cast<size_t>(i)] =
          std::exp(-ks[static_cast<size_t>(i)] * ks[static_cast<size_t>(i)]);
    }
    CHECK(kernel_sobolev_norm(ks, zero, 0.0) == 0.0);
    CHECK(kernel_sobolev_norm(ks, gauss, 0.0) ==
          Approx(std::pow(pi / 2.0, 0.25)).margin(1e-6));
    const double n0 = kernel_sobolev_norm(ks, gauss, 0.0);
    const double n1 = kernel_sobolev_norm(ks, gauss, 1.0);
    const double n2 = kernel_sobolev_norm(ks, gauss, 2.0);
    CHECK(n0 <= n1);
    CHECK(n1 <= n2);
    CHECK_THROWS_AS(kernel_sobolev_norm(ks, gauss, 2.5), std::invalid_argument);
  }
}

TEST_CASE("exchange defects") {
  const FastGrid fast = make_fast_grid(16, 16);
  const SlowGrid slow = slow_grid_from(fast, 0.2, 0.25);

  SECTION("zero input, zero defect") {
    const cvec D(static_cast<size_t>(slow.n), {0.0, 0.0});
    for (const auto& v :
         exchange_defect(slow, D, fast, 1.0, 0.0, ExchangeVariant::E2))
      CHECK(v == std::complex<double>{0.0, 0.0});
  }

  SECTION("constant envelopes live at the exact carrier and cancel") {
    cvec D(static_cast<size_t>(slow.n), {0.0, 0.0});
    D[0] = 1.0;
    const cvec d =
        exchange_defect(slow, D, fast, 1.0, 1.0, ExchangeVariant::E2);
    for (const auto& v : d) CHECK(std::abs(v) < 1e-12);
  }

  SECTION("rejects bad horizon") {
    const cvec D(static_cast<size_t>(slow.n), {0.0, 0.0});
    CHECK_THROWS_AS(
        exchange_defect(slow, D, fast, 0.0, 0.0, ExchangeVariant::E2),
        std::invalid_argument);
  }
}

TEST_CASE("band-complement multipliers shrink like the Hoelder exponent") {
  // Spectrum density (1 + K^2)^-0.7 has an eps^0.4 high-pass tail once the
  // slow variable is squeezed by eps; the fitted slope tracks that exponent.
  const FastGrid fast = make_fast_grid(16, 16);
  std::vector<std::pair<double, double>> pts;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    cvec spec(static_cast<size_t>(fast.n), {0.0, 0.0});
    for (int j = 0; j < fast.n; ++j) {
      const double K = fast.wavenumber(j) / eps;
      spec[static_cast<size_t>(j)] =
          std::pow(1.0 + K * K, -0.7) * fast.dk / eps;
    }
    const BumpSpec low{0, 0.25};
    for (int j = 0; j < fast.n; ++j)
      spec[static_cast<size_t>(j)] *= 1.0 - bump_eval(low, fast.wavenumber(j));
    pts.emplace_back(eps,
                     c0_kappa_norm(fast, to_physical(fast, spec), 0.05));
  }
  const PowerLawFit fit = fit_power_law(pts);
  CHECK(fit.slope > 0.25);
  CHECK(fit.slope < 0.55);
}

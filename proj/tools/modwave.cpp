// Command-line front end: simulation, scaling sweeps, noise-coupling checks,
// kernel norm tables, and inequality diagnostics.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modwave/diagnostics.hpp"
#include "modwave/report.hpp"
#include "modwave/sweep.hpp"

using namespace modwave;

namespace {

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

int run_scaling(const std::string& config_path, const std::string& eps_list,
                int seeds, const std::string& out_dir,
                const std::string& format, SweepPlan plan) {
  if (!config_path.empty()) plan.base = load_config(config_path);
  if (!eps_list.empty()) plan.eps_list = parse_eps_list(eps_list);
  if (seeds > 0) plan.seeds_per_eps = seeds;
  const ScalingReport rep = run_sweep(plan);
  const bool csv = format.empty() || format.find("csv") != std::string::npos;
  const bool jsonl = format.empty() || format.find("jsonl") != std::string::npos;
  const bool svg = format.empty() || format.find("svg") != std::string::npos;
  emit_report(rep, out_dir, csv, jsonl, svg);
  std::printf("%s: slope_median=%.4f slope_q90=%.4f R2_q90=%.4f band=[%.2f,%.2f] %s\n",
              rep.quantity.c_str(), rep.fit_median.slope, rep.fit_q90.slope,
              rep.fit_q90.r2, rep.band_lo, rep.band_hi,
              rep.passed() ? "PASS" : "FAIL");
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Swift-Hohenberg / Ginzburg-Landau verification harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", format, eps_list, equation = "sh";
  int seeds = 0;
  uint64_t seed_override = 0;
  bool have_seed = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (INI sections)");
    sub->add_option("--out-dir", out_dir, "output directory");
  };

  auto* sim = app.add_subcommand("simulate", "run one trajectory and dump snapshots");
  add_common(sim);
  sim->add_option("--seed", seed_override)->each([&](const std::string&) { have_seed = true; });
  sim->add_option("--equation", equation, "sh or gl");

  auto* res = app.add_subcommand("residual-sweep", "residual scaling across eps");
  auto* err = app.add_subcommand("error-sweep", "approximation-error scaling across eps");
  auto* noi = app.add_subcommand("noise-check", "noise-coupling defect scaling across eps");
  for (auto* sub : {res, err, noi}) {
    add_common(sub);
    sub->add_option("--eps-list", eps_list, "comma-separated eps values");
    sub->add_option("--seeds-per-eps", seeds, "ensemble size per eps");
    sub->add_option("--format", format, "any of csv,jsonl,svg (default all)");
  }

  auto* ker = app.add_subcommand("kernel-bounds", "CSV of kernel Sobolev norms");
  add_common(ker);

  auto* dia = app.add_subcommand("diagnostics", "inequality and regularity diagnostics");
  add_common(dia);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      SimConfig cfg = config_path.empty() ? SimConfig{} : load_config(config_path);
      if (have_seed) cfg.seed = seed_override;
      const Trajectory traj = equation == "gl" ? run_gl(cfg) : run_sh(cfg);
      const FastGrid fast = make_fast_grid(cfg.M, cfg.points_per_2pi);
      write_snapshots(traj, cfg, fast.n, out_dir);
      std::printf("wrote %zu snapshots to %s (config hash %llu)\n",
                  traj.snaps.size(), out_dir.c_str(),
                  static_cast<unsigned long long>(traj.cfg_hash));
      return 0;
    }
    if (res->parsed()) {
      SweepPlan plan;
      plan.quantity = SweepQuantity::Residual;
      plan.theory_exponent = 1.4;  // 3/2 - 2*kappa at kappa = 0.05
      plan.band_lo = 1.2;
      plan.band_hi = 1.8;
      plan.min_r2 = 0.9;
      return run_scaling(config_path, eps_list, seeds, out_dir, format, plan);
    }
    if (err->parsed()) {
      SweepPlan plan;
      plan.quantity = SweepQuantity::Error;
      plan.theory_exponent = 0.9;  // 1 - 2*delta at delta = 0.05
      plan.band_lo = 0.7;
      plan.band_hi = 1.3;
      plan.min_r2 = 0.85;
      return run_scaling(config_path, eps_list, seeds, out_dir, format, plan);
    }
    if (noi->parsed()) {
      SweepPlan plan;
      plan.quantity = SweepQuantity::NoiseDefect;
      plan.theory_exponent = 0.95;  // 1 - kappa at kappa = 0.05
      plan.band_lo = 0.7;
      plan.band_hi = 1.2;
      plan.min_r2 = 0.8;
      return run_scaling(config_path, eps_list, seeds, out_dir, format, plan);
    }
    if (ker->parsed()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream out(out_dir + "/kernel_bounds.csv");
      out << "variant,eps,T,m,norm\n";
      const std::vector<std::pair<KernelVariant, const char*>> variants = {
          {KernelVariant::SemigroupBand, "semigroup_band"},
          {KernelVariant::E2Kernel, "e2"},
          {KernelVariant::E3Kernel, "e3"},
          {KernelVariant::ICBandKernel, "ic_band"},
          {KernelVariant::ICTailKernel, "ic_tail"}};
      for (const auto& [variant, name] : variants)
        for (double eps : {0.4, 0.2, 0.1})
          for (double T : {0.25, 1.0})
            for (double m : {0.0, 0.5, 1.0}) {
              KernelSpec spec{variant, T, eps, 0.0, 0.25};
              // Sample range wide enough for every variant's support.
              const double kmax =
                  variant == KernelVariant::SemigroupBand ? 2.0 : 6.0 / eps;
              const int n = 1 << 14;
              std::vector<double> ks(n);
              for (int i = 0; i < n; ++i)
                ks[i] = -kmax + 2.0 * kmax * i / n;
              const double norm =
                  kernel_sobolev_norm(ks, kernel_build(spec, ks), m);
              out << name << ',' << fmt17(eps) << ',' << fmt17(T) << ','
                  << fmt17(m) << ',' << fmt17(norm) << '\n';
            }
      std::printf("wrote %s/kernel_bounds.csv\n", out_dir.c_str());
      return 0;
    }
    if (dia->parsed()) {
      SimConfig cfg = config_path.empty() ? SimConfig{} : load_config(config_path);
      const FastGrid fast = make_fast_grid(cfg.M, cfg.points_per_2pi);
      // Quadratic-form spot checks on random band-limited fields.
      int qf_pass = 0;
      const int qf_total = 20;
      for (int trial = 0; trial < qf_total; ++trial) {
        cvec spec(static_cast<size_t>(fast.n), {0.0, 0.0});
        for (int m = 0; m <= 3 * fast.M; ++m) {
          const auto g = gaussian_pair(900 + trial, 0, mode_id(m, 2 * fast.M));
          const std::complex<double> a{g[0], m == 0 ? 0.0 : g[1]};
          spec[static_cast<size_t>(fast.index_of_mode(m))] = a;
          if (m > 0)
            spec[static_cast<size_t>(fast.index_of_mode(-m))] = std::conj(a);
        }
        if (check_quadratic_form(fast, spec, 4.0).pass) ++qf_pass;
      }
      // Energy inequality along a short stochastic run.
      SimConfig ecfg = cfg;
      ecfg.T0 = 0.25;
      ecfg.record_every = 1;
      const Trajectory traj = run_sh(ecfg);
      const EnergyReport er = check_energy_inequality(
          fast, traj, 4.0, ecfg.nu, ecfg.eps, 10.0 * ecfg.dt);
      // Regularity table for a GL run with independent slow noise.
      SimConfig gcfg = cfg;
      gcfg.record_every = 0;
      const Trajectory gtraj = run_gl(gcfg);
      const SlowGrid slow = slow_grid_from(fast, gcfg.eps, gcfg.band_halfwidth);
      const RegularityReport rr =
          regularity_report(slow, gtraj, 2.0, 2.0, 0.05, 0.4);
      std::printf("quadratic_form: %d/%d pass\n", qf_pass, qf_total);
      std::printf("energy_inequality: pass_fraction=%.4f needed_tol=%.3e (c=%.3f C=%.1f)\n",
                  er.pass_fraction, er.needed_tolerance, er.c_used, er.C_used);
      std::printf("regularity: sup|B|_L4=%.4g sup|B|_H1=%.4g sup|A|_C0kappa=%.4g "
                  "sup|A|_holder=%.4g sup|Zs|_holder=%.4g\n",
                  rr.sup_B_l2p, rr.sup_B_h1, rr.sup_A_c0, rr.sup_A_holder,
                  rr.sup_Z_holder);
      const bool ok = qf_pass == qf_total && er.pass_fraction >= 0.99;
      std::printf("diagnostics: %s\n", ok ? "PASS" : "FAIL");
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

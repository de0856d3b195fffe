#pragma once

// Persistence: JSON-lines per-run records, CSV summary tables, a minimal SVG
// log-log plot, and binary snapshot dumps with a JSON sidecar manifest.
// Decimal serialization uses 17 significant digits so re-parsing is exact.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "modwave/solvers.hpp"
#include "modwave/sweep.hpp"

namespace modwave {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void emit_jsonl(const ScalingReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_jsonl: cannot open " + path);
  for (const RunRecord& r : rep.records) {
    out << "{\"eps\":" << fmt17(r.eps) << ",\"seed\":" << r.seed
        << ",\"config_hash\":" << r.cfg_hash
        << ",\"failed\":" << (r.failed ? "true" : "false")
        << ",\"sup_res_c0kappa\":" << fmt17(r.stats.sup_res_c0k)
        << ",\"sup_err_l2rhoeps\":" << fmt17(r.stats.sup_err_l2)
        << ",\"sup_defect_c0gamma\":" << fmt17(r.stats.sup_defect_c0g)
        << ",\"sup_uA_l4rhoeps\":" << fmt17(r.stats.sup_uA_l4)
        << ",\"sup_res_l2rhoeps\":" << fmt17(r.stats.sup_res_l2) << "}\n";
  }
}

inline void emit_csv(const ScalingReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << "eps,n,median,q90,mean,stderr\n";
  for (const EpsStats& s : rep.stats)
    out << fmt17(s.eps) << ',' << s.n << ',' << fmt17(s.median) << ','
        << fmt17(s.q90) << ',' << fmt17(s.mean_v) << ',' << fmt17(s.se)
        << '\n';
  if (!rep.stats.empty())
    out << "# fit," << rep.quantity << ",slope_median=" << fmt17(rep.fit_median.slope)
        << ",slope_q90=" << fmt17(rep.fit_q90.slope)
        << ",r2_q90=" << fmt17(rep.fit_q90.r2)
        << ",band=[" << fmt17(rep.band_lo) << ',' << fmt17(rep.band_hi)
        << "],theory=" << fmt17(rep.theory_exponent) << '\n';
}

// Log-log scatter of median and q90 with the q90 fitted line.
inline void emit_svg(const ScalingReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_svg: cannot open " + path);
  const double W = 640, H = 480, m = 60;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const EpsStats& s : rep.stats) {
    if (!(s.q90 > 0.0) || !(s.median > 0.0)) continue;
    xlo = std::min(xlo, std::log10(s.eps));
    xhi = std::max(xhi, std::log10(s.eps));
    ylo = std::min(ylo, std::log10(s.median));
    yhi = std::max(yhi, std::log10(s.q90));
  }
  if (xhi <= xlo) { xlo = -1; xhi = 0; }
  if (yhi <= ylo) { ylo = -1; yhi = 0; }
  const double padx = 0.05 * (xhi - xlo), pady = 0.1 * (yhi - ylo) + 1e-12;
  xlo -= padx; xhi += padx; ylo -= pady; yhi += pady;
  auto X = [&](double lx) { return m + (lx - xlo) / (xhi - xlo) * (W - 2 * m); };
  auto Y = [&](double ly) { return H - m - (ly - ylo) / (yhi - ylo) * (H - 2 * m); };
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
      << "' height='" << H << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<line x1='" << m << "' y1='" << H - m << "' x2='" << W - m
      << "' y2='" << H - m << "' stroke='black'/>\n"
      << "<line x1='" << m << "' y1='" << m << "' x2='" << m << "' y2='"
      << H - m << "' stroke='black'/>\n";
  for (const EpsStats& s : rep.stats) {
    if (s.median > 0.0)
      out << "<circle cx='" << X(std::log10(s.eps)) << "' cy='"
          << Y(std::log10(s.median)) << "' r='4' fill='steelblue'/>\n";
    if (s.q90 > 0.0)
      out << "<circle cx='" << X(std::log10(s.eps)) << "' cy='"
          << Y(std::log10(s.q90)) << "' r='4' fill='firebrick'/>\n";
  }
  // q90 fitted line in log10 coordinates.
  const double l10 = std::log(10.0);
  auto fit_y = [&](double lx) {
    return (rep.fit_q90.intercept + rep.fit_q90.slope * lx * l10) / l10;
  };
  out << "<line x1='" << X(xlo) << "' y1='" << Y(fit_y(xlo)) << "' x2='"
      << X(xhi) << "' y2='" << Y(fit_y(xhi))
      << "' stroke='firebrick' stroke-dasharray='6,3'/>\n";
  out << "<text x='" << m << "' y='" << m - 20 << "' font-size='14'>"
      << rep.quantity << ": slope_q90=" << fmt17(rep.fit_q90.slope)
      << " R2=" << fmt17(rep.fit_q90.r2) << " band=[" << rep.band_lo << ","
      << rep.band_hi << "]</text>\n";
  out << "<text x='" << m << "' y='" << H - m + 35
      << "' font-size='12'>log10(eps)</text>\n";
  out << "</svg>\n";
}

inline void emit_report(const ScalingReport& rep, const std::string& dir,
                        bool csv = true, bool jsonl = true, bool svg = true) {
  std::filesystem::create_directories(dir);
  const std::string stem = dir + "/" + rep.quantity;
  if (csv) emit_csv(rep, stem + ".csv");
  if (jsonl) emit_jsonl(rep, stem + ".jsonl");
  if (svg) emit_svg(rep, stem + ".svg");
}

// Snapshot dump: raw little-endian doubles (re/im interleaved, v then z per
// snapshot) plus a JSON manifest describing layout and provenance.
inline void write_snapshots(const Trajectory& traj, const SimConfig& cfg,
                            int n_points, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream bin(dir + "/snapshots.bin", std::ios::binary);
    if (!bin) throw std::runtime_error("write_snapshots: cannot open output");
    for (const Snapshot& s : traj.snaps) {
      auto dump = [&](const cvec& f) {
        for (const auto& c : f) {
          const double re = c.real(), im = c.imag();
          bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
          bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
      };
      dump(s.v);
      dump(s.z);
    }
  }
  std::ofstream man(dir + "/manifest.json");
  man << "{\n  \"config_hash\": " << traj.cfg_hash
      << ",\n  \"seed\": " << traj.seed << ",\n  \"dt\": " << fmt17(traj.dt)
      << ",\n  \"n_points\": " << n_points << ",\n  \"M\": " << cfg.M
      << ",\n  \"points_per_2pi\": " << cfg.points_per_2pi
      << ",\n  \"eps\": " << fmt17(cfg.eps)
      << ",\n  \"layout\": \"per snapshot: v then z, complex128 interleaved\""
      << ",\n  \"times\": [";
  for (size_t i = 0; i < traj.snaps.size(); ++i)
    man << (i ? ", " : "") << fmt17(traj.snaps[i].t);
  man << "]\n}\n";
}

}  // namespace modwave

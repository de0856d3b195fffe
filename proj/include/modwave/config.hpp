#pragma once

// Run configuration, INI-style config file parsing ([grid] / [noise] /
// [physics] / [run] sections), and a stable config hash for provenance.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace modwave {

struct SimConfig {
  // [grid]
  int M = 16;
  int points_per_2pi = 16;
  double band_halfwidth = 0.25;
  // [noise]
  uint64_t seed = 1;
  double dt = 0.01;
  int noise_coarse_M = 0;  // 0 = excite all modes
  // [physics]
  double nu = 1.0;
  double sigma = 1.0;
  double eps = 0.2;
  // [run]
  double T0 = 1.0;
  int record_every = 0;  // 0 = choose ~100 snapshots automatically
  bool nonlinearity = true;
  bool dealias = false;
  int fast_steps_per_slow = 1;
  std::string initial = "modulated";  // zero | constant:<a> | cos:<n>:<a> | modulated
};

inline void validate(const SimConfig& c) {
  if (!(c.dt > 0.0 && c.dt <= 0.05))
    throw std::invalid_argument("config: dt must be in (0, 0.05]");
  if (!(c.eps > 0.0 && c.eps < 1.0))
    throw std::invalid_argument("config: eps must be in (0,1)");
  if (c.sigma < 0.0) throw std::invalid_argument("config: sigma >= 0");
  if (!(c.T0 > 0.0)) throw std::invalid_argument("config: T0 > 0");
}

inline std::string canonical_string(const SimConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "M=" << c.M << ";pts=" << c.points_per_2pi
     << ";delta=" << c.band_halfwidth << ";seed=" << c.seed << ";dt=" << c.dt
     << ";coarseM=" << c.noise_coarse_M << ";nu=" << c.nu
     << ";sigma=" << c.sigma << ";eps=" << c.eps << ";T0=" << c.T0
     << ";rec=" << c.record_every << ";nl=" << c.nonlinearity
     << ";dealias=" << c.dealias << ";spp=" << c.fast_steps_per_slow
     << ";ic=" << c.initial;
  return os.str();
}

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

inline uint64_t config_hash(const SimConfig& c) {
  return fnv1a(canonical_string(c));
}

// Minimal INI reader: "[section]" headers, "key = value" lines, '#' comments.
inline std::map<std::string, std::string> parse_ini(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: malformed line: " + line);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  auto kv = parse_ini(in);
  SimConfig c;
  auto geti = [&](const std::string& k, int d) {
    return kv.count(k) ? std::stoi(kv[k]) : d;
  };
  auto getd = [&](const std::string& k, double d) {
    return kv.count(k) ? std::stod(kv[k]) : d;
  };
  auto getb = [&](const std::string& k, bool d) {
    if (!kv.count(k)) return d;
    const std::string& v = kv[k];
    return v == "1" || v == "true" || v == "on" || v == "yes";
  };
  c.M = geti("grid.M", c.M);
  c.points_per_2pi = geti("grid.points_per_2pi", c.points_per_2pi);
  c.band_halfwidth = getd("grid.band_halfwidth", c.band_halfwidth);
  c.seed = kv.count("noise.seed")
               ? static_cast<uint64_t>(std::stoull(kv["noise.seed"]))
               : c.seed;
  c.dt = getd("noise.dt", c.dt);
  c.noise_coarse_M = geti("noise.coarse_M", c.noise_coarse_M);
  c.nu = getd("physics.nu", c.nu);
  c.sigma = getd("physics.sigma", c.sigma);
  c.eps = getd("physics.eps", c.eps);
  c.T0 = getd("run.T0", c.T0);
  c.record_every = geti("run.record_every", c.record_every);
  c.nonlinearity = getb("run.nonlinearity", c.nonlinearity);
  c.dealias = getb("run.dealias", c.dealias);
  c.fast_steps_per_slow = geti("run.fast_steps_per_slow", c.fast_steps_per_slow);
  if (kv.count("run.initial")) c.initial = kv["run.initial"];
  validate(c);
  return c;
}

}  // namespace modwave

// Command-line front end: spectrum runs, kernel dumps, oracle suites and
// convergence sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwk/interaction.hpp"
#include "pwk/kernel.hpp"
#include "pwk/solver.hpp"
#include "pwk/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;
constexpr double kEvPerMeV = 1e6;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string system = "hydrogen";
  double m1 = NAN, m2 = NAN, alpha = NAN;
  int Z = 0;
  int J = 0;
  std::string block = "singlet";
  int N = 96;
  std::string k0 = "auto";
  std::vector<std::string> form_factors{"point"};
  bool vacuum_polarization = false;
  std::string output;
  std::string format = "json";
  int states = 5;

  pwk::TwoBodyConfig physics() const {
    pwk::TwoBodyConfig cfg;
    try {
      cfg = pwk::preset(system);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!std::isnan(m1)) cfg.m1 = m1;
    if (!std::isnan(m2)) cfg.m2 = m2;
    if (!std::isnan(alpha)) cfg.alpha = alpha;
    if (Z != 0) cfg.Z = Z;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return cfg;
  }

  // preset name, or "custom" once a physical constant is overridden
  std::string label() const {
    return std::isnan(m1) && std::isnan(m2) && std::isnan(alpha) && Z == 0 ? system : "custom";
  }

  pwk::ChannelBlock channel_block() const {
    if (J < 0) throw ConfigError("J must be >= 0");
    if (block == "singlet") return pwk::ChannelBlock::make(J, pwk::BlockKind::Singlet);
    if (block == "triplet") return pwk::ChannelBlock::make(J, pwk::BlockKind::Triplet);
    throw ConfigError("block must be 'singlet' or 'triplet', got '" + block + "'");
  }

  std::vector<std::string> model_names() const {
    std::vector<std::string> names = form_factors;
    if (vacuum_polarization && std::find(names.begin(), names.end(), "uehling") == names.end())
      names.push_back("uehling");
    return names;
  }

  pwk::FormFactorSet models(const pwk::TwoBodyConfig& cfg) const {
    try {
      return pwk::form_factor_models(model_names(), cfg);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  double scale(const pwk::TwoBodyConfig& cfg) const {
    if (k0 == "auto") return cfg.bohr_momentum();
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(k0, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k0.size() || !(v > 0.0)) throw ConfigError("k0 must be 'auto' or a positive number, got '" + k0 + "'");
    return v;
  }

  pwk::MomentumGrid grid(const pwk::TwoBodyConfig& cfg) const {
    try {
      return pwk::build_grid(N, scale(cfg));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
};

json config_json(const RunConfig& rc, const pwk::TwoBodyConfig& cfg) {
  return {{"system", rc.label()},   {"m1", cfg.m1},       {"m2", cfg.m2},
          {"Z", cfg.Z},            {"alpha", cfg.alpha}, {"form_factors", rc.model_names()}};
}

json block_json(const pwk::ChannelBlock& b) {
  json ch = json::array();
  for (const auto& c : b.channels) ch.push_back({{"l", c.ell}, {"S", c.S}});
  return {{"J", b.J}, {"kind", b.kind == pwk::BlockKind::Singlet ? "singlet" : "triplet"}, {"channels", ch}};
}

// Opens --output, or stdout when it is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double bohr_level(const pwk::TwoBodyConfig& cfg, int n) {
  return -cfg.reduced_mass() * std::pow(cfg.Z * cfg.alpha, 2) / (2.0 * n * n);
}

int cmd_spectrum(const RunConfig& rc, const std::string& wavefunctions) {
  const auto cfg = rc.physics();
  const auto block = rc.channel_block();
  const auto ffs = rc.models(cfg);
  const auto grid = rc.grid(cfg);
  if (rc.format != "json" && rc.format != "csv") throw ConfigError("format must be json or csv");
  if (rc.states < 1) throw ConfigError("states must be >= 1");

  const auto res = pwk::solve(pwk::assemble(cfg, block, grid, ffs));
  // ground state once more on a 1.5x finer grid
  const int n2 = rc.N + rc.N / 2;
  const auto fine = pwk::solve(pwk::assemble(cfg, block, pwk::build_grid(n2, grid.k0), ffs));
  const double delta = std::abs(fine.binding[0] - res.binding[0]) / std::abs(res.binding[0]);

  const std::size_t nb = res.bound_count();
  // the table moves to stderr when the machine output goes to stdout
  std::FILE* out = rc.output == "-" ? stderr : stdout;
  std::fprintf(out, "%s, %s, N=%d, k0=%.6g MeV, form factors:", block.label().c_str(), rc.label().c_str(), rc.N,
               grid.k0);
  for (const auto& n : rc.model_names()) std::fprintf(out, " %s", n.c_str());
  std::fprintf(out, "\n%3s %22s %22s %6s %14s\n", "#", "binding [eV]", "Bohr -mu(Za)^2/2n^2 [eV]", "n", "B / Bohr");
  const double b1 = bohr_level(cfg, 1);
  for (std::size_t s = 0; s < std::min<std::size_t>(nb, rc.states); ++s) {
    const double b = res.binding[s];
    const int n = std::max(1, static_cast<int>(std::lround(std::sqrt(b1 / b))));
    const double ref = bohr_level(cfg, n);
    std::fprintf(out, "%3zu %22.10f %22.10f %6d %14.9f\n", s + 1, b * kEvPerMeV, ref * kEvPerMeV, n, b / ref);
  }
  if (nb == 0) std::fprintf(out, "no bound states\n");
  std::fprintf(out, "ground state N=%d -> %d: relative change %.2e\n", rc.N, n2, delta);

  Sink sink(rc.output);
  if (!rc.output.empty()) {
    if (rc.format == "json") {
      json j;
      j["config"] = config_json(rc, cfg);
      j["block"] = block_json(block);
      j["grid"] = {{"N", grid.n}, {"k0", grid.k0}};
      j["units"] = "MeV";
      j["masses"] = std::vector<double>(res.masses.begin(), res.masses.begin() + nb);
      j["binding"] = std::vector<double>(res.binding.begin(), res.binding.begin() + nb);
      j["convergence"] = {{"N", {rc.N, n2}},
                          {"ground_binding", {res.binding[0], fine.binding[0]}},
                          {"rel_delta", delta},
                          {"converged", delta < 1e-6}};
      sink.get() << j.dump(2) << "\n";
    } else {
      sink.get() << "state,mass_MeV,binding_MeV\n";
      for (std::size_t s = 0; s < nb; ++s)
        sink.get() << s + 1 << "," << g17(res.masses[s]) << "," << g17(res.binding[s]) << "\n";
    }
  }
  if (!wavefunctions.empty()) {
    Sink wf(wavefunctions);
    auto& os = wf.get();
    os << "k_MeV,w_MeV";
    for (const auto& c : block.channels) os << ",phi_l" << c.ell << "_S" << c.S;
    os << "\n";
    for (int i = 0; i < grid.n; ++i) {
      os << g17(grid.nodes[i]) << "," << g17(grid.weights[i]);
      for (std::size_t a = 0; a < block.channels.size(); ++a) os << "," << g17(res.vectors(a * grid.n + i, 0));
      os << "\n";
    }
  }
  return 0;
}

std::vector<std::pair<double, double>> parse_pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<double, double>> out;
  for (const auto& it : items) {
    const auto colon = it.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(it);
      std::size_t u1 = 0, u2 = 0;
      const double k = std::stod(it.substr(0, colon), &u1), kp = std::stod(it.substr(colon + 1), &u2);
      if (u1 != colon || u2 != it.size() - colon - 1 || !(k > 0) || !(kp > 0)) throw std::invalid_argument(it);
      if (k == kp) throw ConfigError("pair '" + it + "' lies on the diagonal k = kp");
      out.emplace_back(k, kp);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("momentum pair must be 'k:kp' with positive numbers, got '" + it + "'");
    }
  }
  return out;
}

int cmd_dump_kernel(const RunConfig& rc, const std::vector<std::string>& pair_args) {
  const auto cfg = rc.physics();
  const auto block = rc.channel_block();
  const auto ffs = rc.models(cfg);
  const auto pairs = parse_pairs(pair_args);
  const pwk::KernelEvaluator ev(cfg, block, ffs);
  Sink sink(rc.output);
  auto& os = sink.get();
  os << "J,S_out,l_out,S_in,l_in,k,kp,value\n";
  for (const auto& [k, kp] : pairs) {
    const Eigen::MatrixXd v = ev.full({k, kp});
    for (std::size_t a = 0; a < block.channels.size(); ++a)
      for (std::size_t b = 0; b < block.channels.size(); ++b) {
        const auto& o = block.channels[a];
        const auto& i = block.channels[b];
        os << block.J << "," << o.S << "," << o.ell << "," << i.S << "," << i.ell << "," << g17(k) << ","
           << g17(kp) << "," << g17(v(a, b)) << "\n";
      }
  }
  return 0;
}

int cmd_verify(const RunConfig& rc, const std::vector<std::string>& only, const pwk::verify::Options& opt) {
  const auto& all = pwk::verify::cli_suites();
  for (const auto& name : only) {
    bool known = false;
    for (const auto& s : all) known |= s.name == name;
    if (!known) throw ConfigError("unknown suite '" + name + "'");
  }
  if (!(opt.sampling > 0.0)) throw ConfigError("sampling must be positive");
  json report = json::array();
  bool ok = true;
  for (const auto& s : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    const auto o = s.run(opt);
    std::printf("%-9s %s  %s\n", s.name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    ok &= o.pass;
    report.push_back({{"suite", o.name}, {"pass", o.pass}, {"metric", o.metric}, {"limit", o.limit},
                      {"detail", o.detail}});
  }
  if (!rc.output.empty()) {
    Sink sink(rc.output);
    sink.get() << json{{"seed", opt.seed}, {"calibration", opt.calibration}, {"suites", report}}.dump(2) << "\n";
  }
  if (!ok) {
    std::fprintf(stderr, "error: verification: at least one suite failed\n");
    return kExitVerification;
  }
  return 0;
}

int cmd_converge(const RunConfig& rc, const std::vector<int>& sizes) {
  const auto cfg = rc.physics();
  const auto block = rc.channel_block();
  const auto ffs = rc.models(cfg);
  for (int n : sizes)
    if (n < 8) throw ConfigError("grid size " + std::to_string(n) + " is below the minimum of 8");
  const auto rep = pwk::converge(cfg, block, ffs, sizes, rc.scale(cfg));
  std::printf("%s, %s: ground state\n%6s %22s %12s\n", block.label().c_str(), rc.label().c_str(), "N",
              "binding [eV]", "rel delta");
  json rows = json::array();
  for (const auto& r : rep.rows) {
    std::printf("%6d %22.12f %12.2e\n", r.n, r.binding * kEvPerMeV, r.rel_delta);
    rows.push_back({{"N", r.n}, {"mass", r.mass}, {"binding", r.binding}, {"rel_delta", r.rel_delta}});
  }
  std::printf("%s (tolerance %.0e)\n", rep.converged ? "converged" : "not converged", rep.tolerance);
  if (!rc.output.empty()) {
    Sink sink(rc.output);
    json j;
    j["config"] = config_json(rc, cfg);
    j["block"] = block_json(block);
    j["units"] = "MeV";
    j["convergence"] = {{"rows", rows}, {"converged", rep.converged}, {"tolerance", rep.tolerance}};
    sink.get() << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic partial-wave kernel and bound-state solver for two-fermion systems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style key = value file; command-line flags take precedence");

  RunConfig rc;
  app.add_option("--system", rc.system, "preset: hydrogen, muonic, equal-mass")->capture_default_str();
  app.add_option("--m1", rc.m1, "mass of particle 1 [MeV] (overrides the preset)");
  app.add_option("--m2", rc.m2, "mass of particle 2 [MeV] (overrides the preset)");
  app.add_option("--Z", rc.Z, "charge number (overrides the preset)");
  app.add_option("--alpha", rc.alpha, "coupling (overrides the preset)");
  app.add_option("--J", rc.J, "total angular momentum")->capture_default_str();
  app.add_option("--block", rc.block, "singlet = {(J,0),(J,1)}, triplet = {(J-1,1),(J+1,1)}")->capture_default_str();
  app.add_option("--N", rc.N, "grid size (>= 8)")->capture_default_str();
  app.add_option("--k0", rc.k0, "grid scale [MeV] or 'auto' for the Bohr momentum")->capture_default_str();
  app.add_option("--form-factors", rc.form_factors,
                 "models: point, dipole-proton, electron-anomalous, uehling")
      ->delimiter(',')
      ->capture_default_str();
  app.add_flag("--vacuum-polarization", rc.vacuum_polarization, "add the Uehling term");
  app.add_option("--output", rc.output, "output file ('-' for stdout)");
  app.add_option("--format", rc.format, "spectrum output format: json or csv")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "bound-state spectrum of one channel block");
  std::string wavefunctions;
  spectrum->add_option("--states", rc.states, "rows in the printed table")->capture_default_str();
  spectrum->add_option("--wavefunctions", wavefunctions, "CSV of the ground-state radial functions");

  auto* dump = app.add_subcommand("dump-kernel", "kernel values V(k -> kp) for every channel pair as CSV");
  std::vector<std::string> pairs;
  dump->add_option("--pairs", pairs, "momentum pairs k:kp in MeV")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "oracle and property suites at reduced sampling");
  std::vector<std::string> suites;
  pwk::verify::Options vopt;
  vopt.sampling = 0.25;
  verify->add_option("--suite", suites, "run only these suites (spinor, angular, gauge, moments, nr, exchange)")
      ->delimiter(',');
  verify->add_option("--seed", vopt.seed, "seed of the random sample points")->capture_default_str();
  verify->add_option("--calibration", vopt.calibration, "overall kernel sign (mutation testing)")
      ->capture_default_str();
  verify->add_option("--sampling", vopt.sampling, "fraction of the full acceptance sampling")->capture_default_str();

  auto* conv = app.add_subcommand("converge", "ground state over a sequence of grid sizes");
  std::vector<int> sizes{48, 64, 80, 96, 120};
  conv->add_option("--sizes", sizes, "grid sizes")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  }

  try {
    if (*spectrum) return cmd_spectrum(rc, wavefunctions);
    if (*dump) return cmd_dump_kernel(rc, pairs);
    if (*verify) return cmd_verify(rc, suites, vopt);
    if (*conv) return cmd_converge(rc, sizes);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: numerical: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}

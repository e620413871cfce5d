// Copyright 2026 The lindbladpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindblad/io.hpp"
#include "lindblad/lowtemp.hpp"
#include "lindblad/qubitspeed.hpp"
#include "lindblad/selftest.hpp"
#include "lindblad/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace lindblad;
using nlohmann::json;

int log_level() {
  const char* env = std::getenv("LINDBLAD_LOG");
  return env ? std::atoi(env) : 0;
}

void log_info(const std::string& msg) {
  if (log_level() > 0) std::cerr << "[lindblad] " << msg << "\n";
}

struct JobConfig {
  std::string command;
  SpecInput spec;
  int cutoff = 5;
  double t_max = 10.0;
  int steps = 200;
  std::vector<double> n_T_list{0.0};
  double qubit_theta = 0.78539816339744831;  // pi/4
  double qubit_phi = 0.0;
  int max_photons = 2;
  double scan_min = 0.0;
  double scan_max = -1.0;  // default: 3 |gamma_vec|
  int scan_points = 61;
  std::uint64_t seed = 20260809;
  std::string out_dir = ".";
};

JobConfig load_config(const std::string& path, const std::string& out_override,
                      std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  JobConfig cfg;
  try {
    if (j.contains("command")) cfg.command = j["command"].get<std::string>();
    if (j.contains("spec")) cfg.spec = parse_spec_json(j["spec"].dump());
    cfg.cutoff = j.value("cutoff", cfg.cutoff);
    if (j.contains("time_grid")) {
      cfg.t_max = j["time_grid"].value("t_max", cfg.t_max);
      cfg.steps = j["time_grid"].value("steps", cfg.steps);
    }
    if (j.contains("n_T")) {
      cfg.n_T_list.clear();
      if (j["n_T"].is_array()) {
        for (const auto& v : j["n_T"]) cfg.n_T_list.push_back(v.get<double>());
      } else {
        cfg.n_T_list.push_back(j["n_T"].get<double>());
      }
    }
    if (j.contains("qubit")) {
      cfg.qubit_theta = j["qubit"].value("theta", cfg.qubit_theta);
      cfg.qubit_phi = j["qubit"].value("phi", cfg.qubit_phi);
    }
    cfg.max_photons = j.value("max_photons", cfg.max_photons);
    if (j.contains("scan")) {
      cfg.scan_min = j["scan"].value("omega_min", cfg.scan_min);
      cfg.scan_max = j["scan"].value("omega_max", cfg.scan_max);
      cfg.scan_points = j["scan"].value("points", cfg.scan_points);
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out_dir = j.value("out", cfg.out_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (seed_override) cfg.seed = *seed_override;
  if (cfg.steps < 2) throw ConfigError("config: time_grid.steps must be >= 2");
  if (cfg.t_max <= 0) throw ConfigError("config: time_grid.t_max must be positive");
  return cfg;
}

std::string out_path(const JobConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::vector<double> time_grid(const JobConfig& cfg) {
  std::vector<double> grid(cfg.steps);
  for (int k = 0; k < cfg.steps; ++k) grid[k] = cfg.t_max * k / (cfg.steps - 1);
  return grid;
}

TwoModeChannel require_channel(const JobConfig& cfg, const char* cmd) {
  if (!cfg.spec.is_two_mode()) {
    throw ConfigError(std::string(cmd) + " requires a two_mode spec");
  }
  return *cfg.spec.channel;
}

void require_oracle_cutoff(const JobConfig& cfg) {
  if (cfg.cutoff < 4) throw ConfigError("config: cutoff must be >= 4 for oracle paths");
}

int run_spectrum(const JobConfig& cfg) {
  const double n_T = cfg.n_T_list.front();
  const SystemSpec spec = cfg.spec.materialize(cfg.spec.n_T.value_or(n_T));
  const auto sr = liouvillian_spectrum(spec, cfg.max_photons);
  std::vector<std::string> header{"re_lambda", "im_lambda"};
  for (int k = 0; k < spec.n_modes(); ++k) header.push_back("m" + std::to_string(k + 1));
  for (int k = 0; k < spec.n_modes(); ++k) header.push_back("n" + std::to_string(k + 1));
  std::vector<std::vector<double>> rows;
  for (const auto& line : sr.lines) {
    std::vector<double> row{line.lambda.real(), line.lambda.imag()};
    for (int v : line.m) row.push_back(v);
    for (int v : line.n) row.push_back(v);
    rows.push_back(row);
  }
  write_csv(out_path(cfg, "spectrum.csv"), header, rows);
  log_info("spectrum: " + std::to_string(rows.size()) + " eigenvalues");
  return 0;
}

int run_steady_state(const JobConfig& cfg) {
  require_oracle_cutoff(cfg);
  const SystemSpec spec = cfg.spec.materialize(cfg.spec.n_T.value_or(cfg.n_T_list.front()));
  const FockSpace fs(spec.n_modes(), cfg.cutoff);
  const CMatrix rho = steady_state(spec, fs);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < fs.dim(); ++i)
    for (int j = 0; j < fs.dim(); ++j) {
      if (std::abs(rho(i, j)) > 1e-16) {
        rows.push_back({static_cast<double>(i), static_cast<double>(j), rho(i, j).real(),
                        rho(i, j).imag()});
      }
    }
  write_csv(out_path(cfg, "steady_state.csv"), {"row", "col", "re", "im"}, rows);
  return 0;
}

int run_evolve(const JobConfig& cfg) {
  require_oracle_cutoff(cfg);
  const double n_T = cfg.spec.n_T.value_or(cfg.n_T_list.front());
  const SystemSpec spec = cfg.spec.materialize(n_T);
  const FockSpace fs(spec.n_modes(), cfg.cutoff);
  CMatrix rho0 = CMatrix::Zero(fs.dim(), fs.dim());
  if (cfg.spec.is_two_mode()) {
    CVector psi = CVector::Zero(fs.dim());
    psi(fs.flat_index({1, 0})) = std::cos(cfg.qubit_theta / 2.0);
    psi(fs.flat_index({0, 1})) =
        std::exp(Complex(0, 1) * cfg.qubit_phi) * std::sin(cfg.qubit_theta / 2.0);
    rho0 = psi * psi.adjoint();
  } else {
    rho0(0, 0) = 1.0;  // vacuum for general specs
  }
  const SpMat liou = liouvillian_gksl_sparse(fs, spec);
  std::vector<std::string> header{"t", "trace", "purity", "boundary_mass"};
  for (int i = 0; i < fs.dim(); ++i) header.push_back("p" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  for (double t : time_grid(cfg)) {
    const auto res = oracle_propagate(fs, liou, rho0, t);
    std::vector<double> row{t, res.rho_t.trace().real(),
                            (res.rho_t * res.rho_t).trace().real(), res.boundary_mass};
    for (int i = 0; i < fs.dim(); ++i) row.push_back(res.rho_t(i, i).real());
    rows.push_back(row);
  }
  write_csv(out_path(cfg, "evolution.csv"), header, rows);
  return 0;
}

int run_speed(const JobConfig& cfg) {
  const TwoModeChannel ch = require_channel(cfg, "speed");
  const QubitState qb = initial_qubit(cfg.qubit_theta, cfg.qubit_phi);
  const auto grid = time_grid(cfg);
  std::vector<std::string> header{"t", "v0"};
  std::vector<SpeedTrace> traces;
  for (double n_T : cfg.n_T_list) {
    traces.push_back(fidelity_qsl(ch, qb, n_T, grid));
    const std::string tag = format_sig15(n_T);
    header.push_back("v_nT=" + tag);
    header.push_back("F_nT=" + tag);
    header.push_back("tF_nT=" + tag);
  }
  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> row{grid[k], traces.front().v0[k]};
    for (const auto& tr : traces) {
      row.push_back(tr.v[k]);
      row.push_back(tr.fidelity[k]);
      row.push_back(tr.t_f[k]);
    }
    rows.push_back(row);
  }
  write_csv(out_path(cfg, "speed.csv"), header, rows);

  std::vector<PlotSeries> series;
  for (size_t si = 0; si < traces.size(); ++si) {
    PlotSeries s;
    s.x = grid;
    s.y = traces[si].v;
    s.label = "n_T = " + format_sig15(traces[si].n_T);
    s.style = static_cast<int>(si);
    series.push_back(std::move(s));
  }
  PlotOptions opt;
  opt.title = "speed of evolution";
  opt.x_label = "gamma0 t";
  opt.y_label = "v / gamma0";
  opt.log_y = true;
  emit_svg(out_path(cfg, "speed.svg"), series, opt);
  return 0;
}

int run_ep_scan(const JobConfig& cfg) {
  const TwoModeChannel ch = require_channel(cfg, "ep-scan");
  const double gamma_len = ch.gamma_len();
  const double omega_hi = cfg.scan_max > 0 ? cfg.scan_max : 3.0 * gamma_len;
  Eigen::Vector3d dir = ch.omega_vec();
  if (dir.norm() < 1e-12) dir = Eigen::Vector3d(0, 0, 1);
  dir.normalize();
  std::vector<std::vector<double>> rows;
  std::vector<PlotSeries> series(2);
  for (int k = 0; k < cfg.scan_points; ++k) {
    const double omega =
        cfg.scan_min + (omega_hi - cfg.scan_min) * k / std::max(1, cfg.scan_points - 1);
    const TwoModeChannel probe = TwoModeChannel::cartesian(ch.omega0(), omega * dir,
                                                           ch.gamma0(), ch.gamma_vec());
    const auto cls = ep_classify(probe);
    rows.push_back({omega, cls.q_abs2, cls.defectiveness,
                    static_cast<double>(static_cast<int>(cls.regime))});
    series[0].x.push_back(omega);
    series[0].y.push_back(cls.q_abs2);
    series[1].x.push_back(omega);
    series[1].y.push_back(cls.defectiveness);
  }
  write_csv(out_path(cfg, "ep_scan.csv"), {"omega", "q_abs2", "defectiveness", "regime"}, rows);
  series[0].label = "|q|^2";
  series[1].label = "defectiveness";
  series[1].style = 1;
  PlotOptions opt;
  opt.title = "EP scan";
  opt.x_label = "omega";
  opt.y_label = "|q|^2, defectiveness";
  emit_svg(out_path(cfg, "ep_scan.svg"), series, opt);
  return 0;
}

int run_validate(const JobConfig& cfg) {
  const auto results = selftest::run_all(cfg.seed);
  int failed = 0;
  for (const auto& suite : results) {
    std::cout << suite.name << ": " << suite.passed << " passed, " << suite.failed
              << " failed\n";
    for (const auto& f : suite.failures) std::cout << "  FAIL " << f << "\n";
    failed += suite.failed;
  }
  std::cout << (failed == 0 ? "validate: OK" : "validate: FAILURES") << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multimode bosonic Lindblad dynamics toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  for (const char* name :
       {"spectrum", "steady-state", "evolve", "speed", "ep-scan", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "job config JSON")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&seed, &seed_set](std::uint64_t v) { seed = v; seed_set = true; },
        "PRNG seed for randomized suites");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const JobConfig cfg = load_config(
        config_path, out_dir, seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt);
    if (command == "spectrum") return run_spectrum(cfg);
    if (command == "steady-state") return run_steady_state(cfg);
    if (command == "evolve") return run_evolve(cfg);
    if (command == "speed") return run_speed(cfg);
    if (command == "ep-scan") return run_ep_scan(cfg);
    if (command == "validate") return run_validate(cfg);
    std::cerr << "error_code: E_CONFIG\nunknown command\n";
    return 2;
  } catch (const lindblad::ConfigError& e) {
    std::cerr << "error_code: E_CONFIG\n" << e.what() << "\n";
    return 2;
  } catch (const lindblad::ValidationError& e) {
    std::cerr << "error_code: E_VALIDATION\n" << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error_code: E_NUMERICAL\n" << e.what() << "\n";
    return 3;
  }
}

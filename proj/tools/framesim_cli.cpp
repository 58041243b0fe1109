// Copyright 2026 The framesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// framesim command-line front end.
//
//   framesim sweep     --frame diag-stab --gate T --noise depolarizing [--p-min 0 --p-max 0.15 --p-steps 61]
//   framesim threshold --frame pauli --gate T --noise dephasing [--bracket 1e-4]
//   framesim scan-a    --gate H,CNOT,T --p 0.04
//   framesim simulate  circuit.json --frame pauli --epsilon 0.1 --delta 0.05 --seed 7
//   framesim exact     circuit.json
//   framesim frames    --frame dyad-stab
//
// Options may also come from a JSON object given with --config (keys use '_'
// in place of '-'); flags on the command line take precedence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "framesim/circuit.hpp"
#include "framesim/exact.hpp"
#include "framesim/sampler.hpp"
#include "framesim/sweep.hpp"

namespace {

using framesim::format_double;

struct Settings {
  std::string frame = "pauli";
  std::vector<std::string> gates;
  std::string noise = "depolarizing";
  double p_min = 0.0;
  double p_max = std::nan("");
  int p_steps = 0;
  double p = 0.04;
  std::vector<double> a;
  int extra_random = 24;
  double epsilon = 0.1;
  double delta = 0.05;
  std::uint64_t seed = 1;
  int streams = 16;
  int threads = 0;
  bool adaptive = false;
  bool no_symmetry = false;
  double bracket = 1e-4;
  int qubits = 2;
  std::string picture;
  std::string out;
  std::string config;
  std::string circuit;
};

class ConfigBinder {
 public:
  template <typename T>
  CLI::Option* bind(CLI::App& app, const std::string& flag, const std::string& key, T& target,
                    const std::string& help) {
    CLI::Option* opt = app.add_option(flag, target, help);
    apply_[key] = [opt, &target](const nlohmann::json& v) {
      if (opt->count() == 0) target = v.get<T>();
    };
    return opt;
  }
  CLI::Option* bind_flag(CLI::App& app, const std::string& flag, const std::string& key, bool& target,
                         const std::string& help) {
    CLI::Option* opt = app.add_flag(flag, target, help);
    apply_[key] = [opt, &target](const nlohmann::json& v) {
      if (opt->count() == 0) target = v.get<bool>();
    };
    return opt;
  }
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw std::runtime_error("config " + path + " must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      const auto it = apply_.find(key);
      if (it == apply_.end()) throw std::runtime_error("config " + path + ": unknown key " + key);
      try {
        it->second(value);
      } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config " + path + ": key " + key + ": " + e.what());
      }
    }
  }

 private:
  std::map<std::string, std::function<void(const nlohmann::json&)>> apply_;
};

nlohmann::json resolved(const Settings& s) {
  nlohmann::json j;
  j["frame"] = s.frame;
  j["gates"] = s.gates;
  j["noise"] = s.noise;
  j["p_min"] = s.p_min;
  if (!std::isnan(s.p_max)) j["p_max"] = s.p_max;
  j["p_steps"] = s.p_steps;
  j["p"] = s.p;
  j["a"] = s.a;
  j["extra_random"] = s.extra_random;
  j["epsilon"] = s.epsilon;
  j["delta"] = s.delta;
  j["seed"] = s.seed;
  j["streams"] = s.streams;
  j["adaptive"] = s.adaptive;
  j["no_symmetry"] = s.no_symmetry;
  j["bracket"] = s.bracket;
  j["picture"] = s.picture;
  return j;
}

framesim::FrameSpec frame_spec(const Settings& s) {
  framesim::FrameSpec f;
  f.kind = framesim::parse_frame_kind(s.frame);
  if (!s.a.empty()) f.a = s.a.front();
  f.extra_random = s.extra_random;
  f.seed = s.seed;
  return f;
}

framesim::SweepSpec sweep_spec(const Settings& s, int default_steps) {
  framesim::SweepSpec spec;
  spec.frame = frame_spec(s);
  spec.gates = s.gates.empty() ? std::vector<std::string>{"T"} : s.gates;
  spec.noise = framesim::parse_noise_model(s.noise);
  spec.p_min = s.p_min;
  spec.p_max = std::isnan(s.p_max) ? framesim::default_p_max(spec.frame.kind) : s.p_max;
  spec.p_steps = s.p_steps > 0 ? s.p_steps : default_steps;
  if (!s.picture.empty()) spec.picture = framesim::parse_picture(s.picture);
  spec.table.use_symmetry = !s.no_symmetry;
  spec.table.threads = s.threads;
  spec.workers = s.threads;
  return spec;
}

// Writes to --out when given, otherwise to stdout.
void emit(const Settings& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + s.out);
  f << text;
}

int cmd_sweep(const Settings& s) {
  const framesim::SweepSpec spec = sweep_spec(s, 61);
  const auto points = framesim::run_sweep(spec);
  std::ostringstream csv;
  framesim::write_sweep_csv(csv, spec, points);
  emit(s, csv.str());
  std::size_t failed = 0;
  std::size_t uncertified = 0;
  for (const auto& pt : points) {
    if (!pt.error.empty()) ++failed;
    else if (!pt.certified) ++uncertified;
  }
  if (failed || uncertified) {
    std::cerr << "sweep: " << failed << " solver failures, " << uncertified << " uncertified points\n";
  }
  return 0;
}

int cmd_threshold(const Settings& s) {
  const framesim::SweepSpec spec = sweep_spec(s, 16);
  if (spec.gates.size() != 1) throw std::invalid_argument("threshold takes exactly one --gate");
  const framesim::ThresholdResult r = framesim::find_threshold(spec, s.bracket);
  nlohmann::json j = r.to_json();
  j["config"] = spec.to_json();
  j["bracket_tol"] = s.bracket;
  emit(s, j.dump(2) + "\n");
  return r.found && !r.verified ? 1 : 0;
}

int cmd_scan_a(const Settings& s) {
  const std::vector<std::string> gates = s.gates.empty() ? std::vector<std::string>{"H", "CNOT", "T"} : s.gates;
  const std::vector<double> grid = s.a.empty() ? framesim::default_a_grid() : s.a;
  framesim::TableOptions opts;
  opts.threads = s.threads;
  const auto r = framesim::scan_a(gates, framesim::parse_noise_model(s.noise), s.p, grid, opts);
  std::ostringstream csv;
  framesim::write_scan_a_csv(csv, r);
  emit(s, csv.str());
  return 0;
}

int cmd_simulate(const Settings& s) {
  const framesim::Circuit c = framesim::load_circuit(s.circuit);
  const framesim::FrameSpec fs = frame_spec(s);
  const framesim::Picture picture =
      s.picture.empty() ? framesim::natural_picture(fs.kind) : framesim::parse_picture(s.picture);
  framesim::EstimateOptions eo;
  eo.epsilon = s.epsilon;
  eo.delta = s.delta;
  eo.seed = s.seed;
  eo.streams = s.streams;
  eo.threads = s.threads;
  eo.adaptive = s.adaptive;
  framesim::TableOptions to;
  to.use_symmetry = !s.no_symmetry;
  to.threads = s.threads;
  const framesim::EstimatorResult r = framesim::estimate(c, fs.catalog(c.n_qubits), picture, eo, to);
  nlohmann::json j = r.to_json();
  j["circuit"] = s.circuit;
  j["frame"] = fs.to_json();
  j["picture"] = framesim::to_string(picture);
  j["config"] = resolved(s);
  emit(s, j.dump(2) + "\n");
  if (!r.imaginary_check_passed) std::cerr << "warning: imaginary part of the mean exceeds 3 standard errors\n";
  return 0;
}

int cmd_exact(const Settings& s) {
  const framesim::Circuit c = framesim::load_circuit(s.circuit);
  emit(s, format_double(framesim::exact_expectation(c)) + "\n");
  return 0;
}

int cmd_frames(const Settings& s) {
  const framesim::FrameSpec fs = frame_spec(s);
  nlohmann::json j = framesim::frame_summary(fs, s.qubits);
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!s.out.empty()) {
    std::ofstream f(s.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + s.out);
    f << j["manifest"].dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame-based quasi-probability simulation of noisy circuits"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  ConfigBinder cfg;

  cfg.bind(app, "--frame", "frame", s.frame, "diag-stab, dyad-stab, product, pauli or ext-pauli");
  cfg.bind(app, "--gate", "gate", s.gates, "gate name(s), comma separated")->delimiter(',');
  cfg.bind(app, "--noise", "noise", s.noise, "depolarizing, dephasing or amplitude_damping");
  cfg.bind(app, "--p-min", "p_min", s.p_min, "lower end of the noise grid");
  cfg.bind(app, "--p-max", "p_max", s.p_max, "upper end of the noise grid");
  cfg.bind(app, "--p-steps", "p_steps", s.p_steps, "grid points (sweep default 61, threshold default 16)");
  cfg.bind(app, "--p", "p", s.p, "noise strength for scan-a");
  cfg.bind(app, "--a", "a", s.a, "extended Pauli hyperparameter; a list for scan-a")->delimiter(',');
  cfg.bind(app, "--extra-random", "extra_random", s.extra_random, "random local states of the product frame");
  cfg.bind(app, "--epsilon", "epsilon", s.epsilon, "additive error");
  cfg.bind(app, "--delta", "delta", s.delta, "failure probability");
  cfg.bind(app, "--seed", "seed", s.seed, "master seed (sampling and product-frame states)");
  cfg.bind(app, "--streams", "streams", s.streams, "logical random streams");
  cfg.bind(app, "--threads", "threads", s.threads, "worker threads (0 = hardware)");
  cfg.bind_flag(app, "--adaptive", "adaptive", s.adaptive, "stop sampling early on the empirical error");
  cfg.bind_flag(app, "--no-symmetry", "no_symmetry", s.no_symmetry, "solve every stabilizer-frame input");
  cfg.bind(app, "--bracket", "bracket", s.bracket, "threshold bracket width");
  cfg.bind(app, "--qubits", "qubits", s.qubits, "largest register for the frames summary");
  cfg.bind(app, "--picture", "picture", s.picture, "schrodinger or heisenberg");
  cfg.bind(app, "--out", "out", s.out, "output file (default stdout)");
  app.add_option("--config", s.config, "JSON file with option values");

  CLI::App* sweep = app.add_subcommand("sweep", "table norms over a noise grid (CSV)");
  CLI::App* threshold = app.add_subcommand("threshold", "noise strength above which the table norm is 1");
  CLI::App* scan = app.add_subcommand("scan-a", "extended Pauli hyperparameter scan (CSV)");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a circuit expectation value");
  simulate->add_option("circuit", s.circuit, "circuit JSON file")->required();
  CLI::App* exact = app.add_subcommand("exact", "dense expectation value of a circuit");
  exact->add_option("circuit", s.circuit, "circuit JSON file")->required();
  CLI::App* frames = app.add_subcommand("frames", "frame element counts, dictionary ranks and manifest");
  for (CLI::App* sub : {sweep, threshold, scan, simulate, exact, frames}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    if (!s.config.empty()) cfg.load(s.config);
    if (*sweep) return cmd_sweep(s);
    if (*threshold) return cmd_threshold(s);
    if (*scan) return cmd_scan_a(s);
    if (*simulate) return cmd_simulate(s);
    if (*exact) return cmd_exact(s);
    if (*frames) return cmd_frames(s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

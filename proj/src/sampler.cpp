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

#include "framesim/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace framesim {

namespace {

struct Moments {
  std::uint64_t n = 0;
  double mean_re = 0.0;
  double m2_re = 0.0;
  double mean_im = 0.0;
  double m2_im = 0.0;
  double max_abs = 0.0;

  void add(Complex v) {
    ++n;
    const double dr = v.real() - mean_re;
    mean_re += dr / static_cast<double>(n);
    m2_re += dr * (v.real() - mean_re);
    const double di = v.imag() - mean_im;
    mean_im += di / static_cast<double>(n);
    m2_im += di * (v.imag() - mean_im);
    max_abs = std::max(max_abs, std::abs(v));
  }

  static Moments merge(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments m;
    m.n = a.n + b.n;
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double n = static_cast<double>(m.n);
    const double dr = b.mean_re - a.mean_re;
    m.mean_re = a.mean_re + dr * nb / n;
    m.m2_re = a.m2_re + b.m2_re + dr * dr * na * nb / n;
    const double di = b.mean_im - a.mean_im;
    m.mean_im = a.mean_im + di * nb / n;
    m.m2_im = a.m2_im + b.m2_im + di * di * na * nb / n;
    m.max_abs = std::max(a.max_abs, b.max_abs);
    return m;
  }
};

Moments pairwise_merge(std::vector<Moments> v) {
  if (v.empty()) return {};
  while (v.size() > 1) {
    std::vector<Moments> next;
    for (std::size_t i = 0; i < v.size(); i += 2) {
      next.push_back(i + 1 < v.size() ? Moments::merge(v[i], v[i + 1]) : v[i]);
    }
    v = std::move(next);
  }
  return v[0];
}

double std_error(double m2, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  return std::sqrt(std::max(0.0, m2) / (nn - 1.0) / nn);
}

void check_bound(Complex value, double bound) {
  if (std::abs(value) > bound * (1.0 + 1e-9) + 1e-12) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "path estimator |E| = %.17g exceeds the bound %.17g", std::abs(value), bound);
    throw std::logic_error(buf);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::uint64_t plan_samples(double e_bound, double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(e_bound >= 0.0) || !std::isfinite(e_bound)) throw std::invalid_argument("estimator bound must be finite");
  if (e_bound == 0.0) return 0;
  const double n = std::ceil(2.0 * std::log(2.0 / delta) * e_bound * e_bound / (epsilon * epsilon));
  if (n > 1e18) throw std::invalid_argument("planned sample count overflows");
  return static_cast<std::uint64_t>(n);
}

double bound_E(const std::vector<const QuasiProbTable*>& tables, double initial_norm, double final_overlap_bound) {
  double b = initial_norm * final_overlap_bound;
  for (const QuasiProbTable* t : tables) b *= t->table_norm();
  return b;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

PathSample sample_path(const PathModel& model, RngStream& rng, bool record) {
  PathSample out;
  FrameElementLabel x = model.initial_label();
  Complex e = model.initial_coefficient();
  if (record) out.labels.push_back(x);
  for (std::size_t s = 0; s < model.steps(); ++s) {
    double norm = 0.0;
    const Complex f = model.advance(s, x, rng.uniform(), &norm);
    e *= f;
    if (record) {
      out.labels.push_back(x);
      out.step_norms.push_back(norm);
    }
  }
  out.estimator_value = e == Complex{0.0} ? Complex{0.0} : e * model.final_overlap(x);
  return out;
}

Complex sample_value(const PathModel& model, RngStream& rng) {
  thread_local FrameElementLabel x;
  x = model.initial_label();
  Complex e = model.initial_coefficient();
  for (std::size_t s = 0; s < model.steps(); ++s) e *= model.advance(s, x, rng.uniform());
  return e == Complex{0.0} ? Complex{0.0} : e * model.final_overlap(x);
}

nlohmann::json EstimatorResult::to_json() const {
  nlohmann::json j;
  j["mean"] = mean;
  j["raw_mean"] = {raw_mean.real(), raw_mean.imag()};
  j["n_samples"] = n_samples;
  j["planned_samples"] = planned_samples;
  j["e_bound"] = e_bound;
  j["max_abs_estimator"] = max_abs_estimator;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["std_error"] = std_error;
  j["imag_std_error"] = imag_std_error;
  j["imaginary_check_passed"] = imaginary_check_passed;
  j["stopped_early"] = stopped_early;
  j["seed"] = seed;
  j["streams"] = streams;
  j["manifest_hash"] = manifest_hash;
  j["table_seconds"] = table_seconds;
  j["sample_seconds"] = sample_seconds;
  return j;
}

EstimatorResult estimate(const PathModel& model, const EstimateOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (options.streams < 1) throw std::invalid_argument("need at least one random stream");
  EstimatorResult r;
  r.epsilon = options.epsilon;
  r.delta = options.delta;
  r.seed = options.seed;
  r.streams = options.streams;
  r.e_bound = model.bound_E();
  r.manifest_hash = manifest_hash(model, options);
  r.planned_samples = options.samples ? options.samples : plan_samples(r.e_bound, options.epsilon, options.delta);

  const auto n_streams = static_cast<std::size_t>(options.streams);
  std::vector<Moments> moments(n_streams);
  if (model.steps() == 0) {
    RngStream rng(options.seed, 0);
    const Complex v = sample_value(model, rng);
    check_bound(v, r.e_bound);
    moments[0].add(v);
  } else {
    std::vector<RngStream> rngs;
    std::vector<std::uint64_t> quota(n_streams);
    for (std::size_t s = 0; s < n_streams; ++s) {
      rngs.emplace_back(options.seed, s);
      quota[s] = r.planned_samples / n_streams + (s < r.planned_samples % n_streams ? 1 : 0);
    }
    const std::uint64_t batch = options.adaptive ? std::max<std::uint64_t>(1, options.batch)
                                                 : std::numeric_limits<std::uint64_t>::max();
    unsigned workers =
        options.threads > 0 ? static_cast<unsigned>(options.threads) : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_streams));
    const double z = std::sqrt(2.0 * std::log(2.0 / options.delta));
    bool done = false;
    while (!done) {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(n_streams);
      auto work = [&] {
        for (std::size_t s = next++; s < n_streams; s = next++) {
          try {
            const std::uint64_t take = std::min(batch, quota[s]);
            for (std::uint64_t i = 0; i < take; ++i) {
              const Complex v = sample_value(model, rngs[s]);
              check_bound(v, r.e_bound);
              moments[s].add(v);
            }
            quota[s] -= take;
          } catch (...) {
            errors[s] = std::current_exception();
          }
        }
      };
      if (workers <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      const bool exhausted = std::all_of(quota.begin(), quota.end(), [](std::uint64_t q) { return q == 0; });
      if (exhausted) {
        done = true;
      } else if (options.adaptive) {
        const Moments m = pairwise_merge(moments);
        if (m.n >= 2 * n_streams && z * std_error(m.m2_re, m.n) <= options.epsilon) {
          done = true;
          r.stopped_early = true;
        }
      }
    }
  }

  const Moments m = pairwise_merge(moments);
  r.n_samples = m.n;
  r.mean = m.mean_re;
  r.raw_mean = {m.mean_re, m.mean_im};
  r.max_abs_estimator = m.max_abs;
  r.std_error = std_error(m.m2_re, m.n);
  r.imag_std_error = std_error(m.m2_im, m.n);
  r.imaginary_check_passed = std::abs(m.mean_im) <= 3.0 * r.imag_std_error + 1e-12;
  r.sample_seconds = seconds_since(t0);
  return r;
}

EstimatorResult estimate(const Circuit& circuit, const FrameCatalog& frame, Picture picture,
                         const EstimateOptions& options, const TableOptions& tables) {
  const auto t0 = std::chrono::steady_clock::now();
  const PathModel model(circuit, frame, picture, tables);
  const double table_seconds = seconds_since(t0);
  EstimatorResult r = estimate(model, options);
  r.table_seconds = table_seconds;
  return r;
}

Complex enumerate_all_paths(const PathModel& model, std::uint64_t max_paths) {
  std::uint64_t leaves = 0;
  std::vector<std::vector<PathTerm>> scratch(model.steps());
  Complex total = 0.0;
  auto dfs = [&](auto&& self, std::size_t s, const FrameElementLabel& x, Complex weight) -> void {
    if (s == model.steps()) {
      if (++leaves > max_paths) {
        throw UnsupportedError("path enumeration exceeds " + std::to_string(max_paths) + " paths");
      }
      total += weight * model.final_overlap(x);
      return;
    }
    model.expand(s, x, scratch[s]);
    const std::vector<PathTerm> terms = scratch[s];
    for (const PathTerm& t : terms) {
      if (t.coeff == Complex{0.0}) continue;
      self(self, s + 1, t.label, weight * t.coeff);
    }
  };
  dfs(dfs, 0, model.initial_label(), model.initial_coefficient());
  return total;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_hash(const PathModel& model, const EstimateOptions& options) {
  nlohmann::json j;
  j["frame"] = model.frame().manifest();
  j["picture"] = to_string(model.picture());
  j["circuit"] = circuit_to_json(model.circuit());
  j["epsilon"] = options.epsilon;
  j["delta"] = options.delta;
  j["seed"] = options.seed;
  j["streams"] = options.streams;
  j["adaptive"] = options.adaptive;
  j["samples"] = options.samples;
  return fnv1a_hex(j.dump());
}

}  // namespace framesim

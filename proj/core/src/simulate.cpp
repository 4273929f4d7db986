#include "uwalk/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "uwalk/random_length.hpp"
#include "uwalk/saw.hpp"
#include "uwalk/worm.hpp"

#ifndef UWALK_BUILD_ID
#define UWALK_BUILD_ID "unknown"
#endif

namespace uwalk {

const char* build_id() { return UWALK_BUILD_ID; }

namespace {

KeyFilter filter_for(const RunConfig& c) { return {c.two_point_l1_radius, c.two_point_axes}; }

std::uint64_t sweeps_to_steps(double sweeps, std::uint64_t volume) {
  return static_cast<std::uint64_t>(std::llround(sweeps * static_cast<double>(volume)));
}

struct HalfMeans {
  std::uint64_t total;
  std::uint64_t seen = 0;
  double first = 0.0, second = 0.0;
  void add(double x) {
    (seen < total / 2 ? first : second) += x;
    ++seen;
  }
  void finish(ChainDiagnostics& d) const {
    const double h1 = static_cast<double>(total / 2), h2 = static_cast<double>(total - total / 2);
    d.first_half_length = h1 > 0 ? first / h1 : 0.0;
    d.second_half_length = h2 > 0 ? second / h2 : 0.0;
  }
};

}  // namespace

SizeResult run_chain(const RunConfig& config, std::int64_t L, std::uint64_t chain_index) {
  const TorusSpec spec(config.dimension, L);
  const std::uint64_t M = config.measurements_per_chain;
  const std::uint64_t chunk = (M + kJackknifeBins - 1) / kJackknifeBins;
  SizeResult out{L, WalkObservables(spec, filter_for(config), chunk), std::nullopt, {}};
  ChainDiagnostics diag;
  diag.chain_index = chain_index;
  HalfMeans halves{M};
  Philox4x32 rng = make_stream(config.seed, chain_index);

  switch (config.model) {
    case Model::Saw: {
      BerrettiSokalChain chain(spec, config.coupling(), config.lifted, rng);
      const std::uint64_t interval = std::max<std::uint64_t>(1, sweeps_to_steps(config.measure_interval_sweeps, spec.volume()));
      chain.run(sweeps_to_steps(config.burn_in_sweeps, spec.volume()));
      for (std::uint64_t m = 0; m < M; ++m) {
        chain.run(interval);
        out.observables.record(chain.walk());
        halves.add(static_cast<double>(chain.walk().length()));
      }
      const auto& s = chain.stats();
      diag.steps = s.append_proposed + s.delete_proposed;
      diag.acceptance = diag.steps ? static_cast<double>(s.append_accepted + s.delete_accepted) / diag.steps : 1.0;
      break;
    }
    case Model::IsingWorm: {
      WormChain chain(spec, config.coupling(), rng);
      const std::uint64_t interval = std::max<std::uint64_t>(1, sweeps_to_steps(config.measure_interval_sweeps, spec.volume()));
      chain.run(sweeps_to_steps(config.burn_in_sweeps, spec.volume()));
      for (std::uint64_t m = 0; m < M; ++m) {
        chain.run(interval);
        const LatticeWalk w = extract_ising_walk(chain.config());
        out.observables.record(w);
        halves.add(static_cast<double>(w.length()));
      }
      diag.steps = chain.stats().proposed;
      diag.acceptance = diag.steps ? static_cast<double>(chain.stats().accepted) / diag.steps : 1.0;
      break;
    }
    case Model::Rlrw: {
      const LengthLaw law = config.law_for(spec);
      out.visits.emplace(spec.dim(), TwoPointMode::Visit, filter_for(config), chunk);
      LatticeWalk torus = LatticeWalk::on_torus(spec);
      const auto dirs = static_cast<std::uint64_t>(2 * spec.dim());
      for (std::uint64_t m = 0; m < M; ++m) {
        const std::uint64_t n = law.sample(rng);
        torus.clear();
        out.visits->begin_sample();
        Point x{};
        out.visits->add(x);
        for (std::uint64_t i = 0; i < n; ++i) {
          const auto s = static_cast<Step>(rng.below(dirs));
          torus.push(s);
          x[step_axis(s)] += step_sign(s);
          out.visits->add(x);
        }
        diag.steps += n;
        out.observables.record(torus);
        halves.add(static_cast<double>(n));
      }
      break;
    }
    case Model::Rllerw: {
      const LengthLaw law = config.law_for(spec);
      out.visits.emplace(spec.dim(), TwoPointMode::Visit, filter_for(config), chunk);
      LoopErasedSampler sampler(spec);
      for (std::uint64_t m = 0; m < M; ++m) {
        const LatticeWalk& w = sampler.sample(law.sample(rng), rng);
        diag.steps += sampler.last_walk_steps();
        out.observables.record(w);
        out.visits->record_visits(sampler.unwrapped_path());
        halves.add(static_cast<double>(w.length()));
      }
      break;
    }
  }
  halves.finish(diag);
  out.chains.push_back(diag);
  return out;
}

RunResult run_simulation(const RunConfig& config, std::ostream* log) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunResult run{config, {}, {}, 0.0};

  long double updates = 0;
  for (auto L : config.sizes) {
    const long double V = std::pow(static_cast<long double>(L), config.dimension);
    if (config.model == Model::Saw || config.model == Model::IsingWorm)
      updates += config.chains * V * (config.burn_in_sweeps + config.measure_interval_sweeps * config.measurements_per_chain);
  }
  if (updates > 1e9L) {
    std::ostringstream w;
    w << "about " << static_cast<double>(updates) << " site updates requested (desk-scale guard is 1e9)";
    run.warnings.push_back(w.str());
    if (log) *log << "warning: " << w.str() << "\n";
  }

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t li = 0; li < config.sizes.size(); ++li) {
    const std::int64_t L = config.sizes[li];
    std::vector<std::optional<SizeResult>> parts(config.chains);
    for (unsigned first = 0; first < config.chains; first += hw) {
      const unsigned last = std::min(config.chains, first + hw);
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(last - first);
      for (unsigned c = first; c < last; ++c)
        pool.emplace_back([&, c] {
          try {
            parts[c].emplace(run_chain(config, L, li * config.chains + c));
          } catch (...) {
            errors[c - first] = std::current_exception();
          }
        });
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    SizeResult merged = std::move(*parts[0]);
    for (unsigned c = 1; c < config.chains; ++c) {
      merged.observables.merge(parts[c]->observables);
      if (merged.visits) merged.visits->merge(*parts[c]->visits);
      merged.chains.insert(merged.chains.end(), parts[c]->chains.begin(), parts[c]->chains.end());
    }
    for (const auto& d : merged.chains) {
      const double a = d.first_half_length, b = d.second_half_length;
      if (std::max(a, b) > 0 && std::abs(a - b) > 0.25 * std::max(a, b)) {
        std::ostringstream w;
        w << "L=" << L << " chain " << d.chain_index << ": first/second-half mean length " << a << " vs " << b
          << " (possible lack of equilibration)";
        run.warnings.push_back(w.str());
      }
    }
    if (log) *log << to_string(config.model) << " L=" << L << " done\n";
    run.sizes.push_back(std::move(merged));
  }
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

std::string point_key(const Point& z, int d) { return format_point(z, d); }

Point parse_point_key(const std::string& key, int& d) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')') throw std::invalid_argument("bad point key '" + key + "'");
  Point z{};
  d = 0;
  std::stringstream ss(key.substr(1, key.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (d >= kMaxDim) throw std::invalid_argument("point key has too many coordinates");
    z[d++] = std::stoll(item);
  }
  return z;
}

namespace {

void moment_rows(std::vector<ResultRow>& rows, const std::string& prefix, std::int64_t L, const std::string& key,
                 const MomentAccumulator& acc) {
  const std::uint64_t n = acc.count();
  double se = std::nan(""), tau = std::nan("");
  try {
    const auto b = blocking_errors(acc);
    se = b.stderr_;
    tau = b.tau_int;
  } catch (const InsufficientData&) {
  }
  rows.push_back({prefix + "_mean", L, key, acc.mean(), se, n});
  double var_se = std::nan("");
  if (n >= 2) var_se = block_jackknife(acc, [](double, double v) { return v; }).stderr_;
  rows.push_back({prefix + "_variance", L, key, acc.variance(), var_se, n});
  rows.push_back({prefix + "_tau_int", L, key, tau, std::nan(""), n});
}

}  // namespace

RunTables tabulate(const RunResult& run) {
  RunTables t;
  const int d = run.config.dimension;
  for (const auto& sz : run.sizes) {
    const auto& obs = sz.observables;
    const std::int64_t L = sz.L;
    const std::uint64_t n = obs.length_moments().count();
    moment_rows(t.moments, "length", L, "", obs.length_moments());
    if (n >= 2) {
      const Estimate r = moment_ratio(obs.length_moments());
      t.moments.push_back({"moment_ratio", L, "", r.value, r.stderr_, n});
    }
    double acc = 0.0;
    for (const auto& c : sz.chains) acc += c.acceptance;
    t.moments.push_back({"acceptance", L, "", acc / static_cast<double>(sz.chains.size()), std::nan(""), n});

    for (int a = 0; a < d; ++a) {
      const std::string key = "axis=" + std::to_string(a);
      moment_rows(t.winding, "winding", L, key, obs.winding_moments(a));
      for (const auto& [R, c] : obs.windings(a).counts())
        t.winding.push_back({"winding_count", L, key + ";R=" + std::to_string(R), static_cast<double>(c), std::nan(""), n});
    }

    const TwoPointHistogram& hist = sz.visits ? *sz.visits : obs.endpoints();
    const std::string name = sz.visits ? "g_tilde_visits" : "g_tilde";
    if (run.config.write_two_point && hist.normalizer() > 0.0)
      for (const Point& z : hist.keys()) {
        const Estimate e = hist.estimate(z);
        t.two_point.push_back({name, L, point_key(z, d), e.value, e.stderr_, hist.samples()});
      }

    for (const auto& [len, c] : obs.lengths().counts())
      t.length_histogram.push_back({"length_count", L, std::to_string(len), static_cast<double>(c), std::nan(""), n});

    if (run.config.write_ecdf && n >= 2 && obs.lengths().variance() > 0.0) {
      const ECDF e = ECDF::from_histogram(obs.lengths()).standardized();
      for (const auto& [x, F] : e.steps())
        t.ecdf.push_back({"ecdf", L, format_double(x), F, std::sqrt(F * (1.0 - F) / static_cast<double>(n)), n});
    }
  }
  return t;
}

void write_run(const RunResult& run, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const RunTables t = tabulate(run);
  std::vector<std::string> done;
  auto fail = [&](const std::string& file) {
    std::ofstream m(fs::path(dir) / "manifest.txt");
    m << "incomplete run output; complete files:\n";
    for (const auto& f : done) m << f << "\n";
    throw std::runtime_error("failed writing " + (fs::path(dir) / file).string());
  };
  auto table = [&](const std::string& file, const std::vector<ResultRow>& rows) {
    std::ofstream f(fs::path(dir) / file);
    if (!f) fail(file);
    write_rows(f, rows);
    f.flush();
    if (!f) fail(file);
    done.push_back(file);
  };
  table("moments.csv", t.moments);
  table("winding.csv", t.winding);
  table("two_point.csv", t.two_point);
  table("ecdf.csv", t.ecdf);
  table("length_hist.csv", t.length_histogram);

  nlohmann::ordered_json j;
  j["build_id"] = build_id();
  j["config_text"] = run.config.serialize();
  j["model"] = to_string(run.config.model);
  j["dimension"] = run.config.dimension;
  j["sizes"] = run.config.sizes;
  if (run.config.model == Model::Saw || run.config.model == Model::IsingWorm) {
    j["coupling"] = run.config.coupling();
    if (auto cp = default_critical_point(run.config.model, run.config.dimension))
      j["shipped_critical_point"] = {{"value", cp->value}, {"uncertainty", cp->uncertainty}};
  }
  j["seed"] = run.config.seed;
  auto& chains = j["chains"] = nlohmann::ordered_json::array();
  for (const auto& sz : run.sizes)
    for (const auto& c : sz.chains)
      chains.push_back({{"L", sz.L},
                        {"stream", c.chain_index},
                        {"steps", c.steps},
                        {"acceptance", c.acceptance},
                        {"first_half_mean_length", c.first_half_length},
                        {"second_half_mean_length", c.second_half_length}});
  j["warnings"] = run.warnings;
  j["wall_seconds"] = run.wall_seconds;
  j["files"] = done;
  std::ofstream f(fs::path(dir) / "summary.json");
  if (!f) fail("summary.json");
  f << j.dump(2) << "\n";
  if (!f) fail("summary.json");
}

}  // namespace uwalk

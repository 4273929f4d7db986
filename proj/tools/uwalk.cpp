#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uwalk/analyze.hpp"
#include "uwalk/config.hpp"
#include "uwalk/csv.hpp"
#include "uwalk/enumeration.hpp"
#include "uwalk/exact_walks.hpp"
#include "uwalk/simulate.hpp"
#include "uwalk/srw_kernel.hpp"
#include "uwalk/theory.hpp"
#include "uwalk/transfer_matrix.hpp"
#include "uwalk/verification.hpp"

using namespace uwalk;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> chains;
  std::string out;
  std::vector<std::string> overrides;
  bool quiet = false;
};

int cmd_simulate(const SimulateArgs& a) {
  RunConfig c;
  try {
    c = a.config_path.empty() ? RunConfig{} : RunConfig::load(a.config_path, false);
    for (const auto& kv : a.overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--override expects key=value, got '" + kv + "'");
      c.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (a.seed) c.seed = *a.seed;
    if (a.chains) c.chains = *a.chains;
    if (!a.out.empty()) c.output_dir = a.out;
    c.validate();
  } catch (const ConfigError& e) {
    throw UsageError(std::string("invalid configuration: ") + e.what());
  }
  const RunResult run = run_simulation(c, a.quiet ? nullptr : &std::cerr);
  write_run(run, c.output_dir);
  for (const auto& w : run.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "wrote " << c.output_dir << " (" << run.wall_seconds << " s)\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::vector<std::string> dirs;
  std::string out = "uwalk_analysis";
  std::optional<double> alpha, beta, gamma;
  bool fit_collapse = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  std::vector<RunTablesIn> runs;
  for (const auto& d : a.dirs) runs.push_back(load_run_dir(d));
  AnalyzeOptions opt;
  if (a.alpha || a.beta || a.gamma) {
    if (!(a.alpha && a.beta && a.gamma)) throw UsageError("--alpha, --beta and --gamma go together");
    opt.collapse = CollapseParams{*a.alpha, *a.beta, *a.gamma, 0};
  }
  opt.fit_collapse = a.fit_collapse;
  const AnalysisReport rep = analyze(runs, opt);
  write_analysis(rep, a.out);
  for (const auto& n : rep.notices) std::cerr << "notice: " << n << "\n";
  std::cerr << "wrote " << a.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct TheoryArgs {
  std::string function = "prop1";
  std::string law = "step";
  int d = 5;
  double lo = 0.05, hi = 3.0;
  int points = 60;
  double alpha = 1.0, beta = 1.0, gamma = 0.0;
  std::string out;
};

LimitLaw limit_law(const std::string& name) {
  if (name == "step") return LimitLaw::step(1.0);
  if (name == "zero") return LimitLaw::zero();
  if (name == "half_normal") return LimitLaw::half_normal();
  if (name == "standardized_half_normal") return LimitLaw::standardized_half_normal();
  throw UsageError("unknown limit law '" + name + "' (step, zero, half_normal, standardized_half_normal)");
}

int cmd_theory(const TheoryArgs& a) {
  if (a.points < 1 || !(a.hi >= a.lo)) throw UsageError("need --points >= 1 and --max >= --min");
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  const bool is_cdf = a.function == "F";
  out << (is_cdf ? "x" : "xi") << ",value,abs_error,converged\n";
  if (a.function != "F" && a.d < 3) throw UsageError("--d must be >= 3");
  const LimitLaw G = is_cdf ? LimitLaw::zero() : limit_law(a.law);
  bool all = true;
  for (int i = 0; i < a.points; ++i) {
    const double x = a.points == 1 ? a.lo : a.lo + (a.hi - a.lo) * i / (a.points - 1);
    QuadratureResult q;
    if (a.function == "prop1")
      q = prop1_rhs(G, a.d, x);
    else if (a.function == "h_d")
      q = h_d({a.alpha, a.beta, a.gamma, a.d}, x, a.law == "step" ? LimitLaw::standardized_half_normal() : G);
    else if (a.function == "F")
      q = {standardized_F(x), 0.0, true, 1};
    else
      throw UsageError("unknown function '" + a.function + "' (prop1, h_d, F)");
    all = all && q.converged;
    out << format_double(x) << "," << format_double(q.value) << "," << format_double(q.abs_error) << ","
        << (q.converged ? 1 : 0) << "\n";
  }
  if (!all) std::cerr << "warning: some quadratures did not reach the tolerance (see abs_error)\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string kind;
  int d = 2;
  std::int64_t L = 3;
  double coupling = 0.3;
  std::string law = "deterministic:2";
  std::int64_t radius = 2;
  std::uint64_t n_max = 10;
  std::string format = "csv";
};

struct ExactRow {
  std::string table;
  std::string key;
  double value;
  std::string exact;  // rational text when available
};

std::string rational_text(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

std::vector<Point> l1_ball(int d, std::int64_t r) {
  std::vector<Point> out;
  Point z{};
  auto rec = [&](auto& self, int a, std::int64_t left) -> void {
    if (a == d) {
      out.push_back(z);
      return;
    }
    for (std::int64_t x = -left; x <= left; ++x) {
      z[a] = x;
      self(self, a + 1, left - std::abs(x));
    }
    z[a] = 0;
  };
  rec(rec, 0, r);
  return out;
}

int cmd_oracle(const OracleArgs& a) {
  std::vector<ExactRow> rows;
  const auto vertex_key = [&](const TorusSpec& spec, std::uint64_t v) { return point_key(spec.point(v), spec.dim()); };
  if (a.kind == "saw") {
    const TorusSpec spec(a.d, a.L);
    const SawEnumeration en = enumerate_saw(spec);
    for (const auto& [n, p] : en.length_law(a.coupling)) rows.push_back({"length_law", std::to_string(n), p, ""});
    for (const auto& [z, g] : en.unwrapped_two_point(a.coupling)) rows.push_back({"g_tilde", point_key(z, a.d), g, ""});
    for (const auto& [v, g] : en.two_point(a.coupling)) rows.push_back({"g", vertex_key(spec, v), g, ""});
  } else if (a.kind == "high_temperature") {
    const TorusSpec spec(a.d, a.L);
    const HighTemperatureEnumeration en = enumerate_high_temperature(spec);
    for (std::uint64_t v = 0; v < spec.volume(); ++v)
      rows.push_back({"correlation", vertex_key(spec, v), en.correlation(v, a.coupling), ""});
    for (const auto& [n, p] : en.walk_length_law(a.coupling)) rows.push_back({"walk_length_law", std::to_string(n), p, ""});
    for (const auto& [z, g] : en.unwrapped_two_point(a.coupling)) rows.push_back({"g_tilde", point_key(z, a.d), g, ""});
  } else if (a.kind == "ising") {
    const TorusSpec spec(a.d, a.L);
    const auto c = ising_correlations(spec, a.coupling);
    for (std::uint64_t v = 0; v < c.size(); ++v) rows.push_back({"correlation", vertex_key(spec, v), c[v], ""});
  } else if (a.kind == "rlrw") {
    const LengthLaw law = LengthLaw::parse(a.law);
    for (const Point& z : l1_ball(a.d, a.radius)) {
      const RlrwOracle o = oracle_rlrw_two_point(law, z, a.d);
      rows.push_back({"g_tilde", point_key(z, a.d), o.value, ""});
      rows.push_back({"truncation_bound", point_key(z, a.d), o.truncation_bound, ""});
    }
  } else if (a.kind == "rlrw_exact" || a.kind == "rllerw") {
    const TorusSpec spec(a.d, a.L);
    const LengthLaw law = LengthLaw::parse(a.law);
    ExactTables t;
    if (a.kind == "rlrw_exact") {
      t = rlrw_expected_visits(spec, law);
    } else {
      const RllerwLaw ex = exact_rllerw(spec, law);
      t = rllerw_expected_visits(ex);
      for (const auto& [v, p] : ex.endpoint_law())
        rows.push_back({"endpoint_law", vertex_key(spec, v), static_cast<double>(p), rational_text(p)});
    }
    for (const auto& [v, p] : t.torus)
      rows.push_back({"expected_visits", vertex_key(spec, v), static_cast<double>(p), rational_text(p)});
    for (const auto& [z, p] : t.unwrapped)
      rows.push_back({a.kind == "rllerw" ? "visit_probability" : "g_tilde", point_key(z, a.d), static_cast<double>(p),
                      rational_text(p)});
  } else if (a.kind == "srw") {
    const auto t = SrwKernelTable::convolve(a.d, a.n_max, static_cast<std::int64_t>(a.n_max));
    for (const Point& z : l1_ball(a.d, std::min<std::int64_t>(a.radius, static_cast<std::int64_t>(a.n_max))))
      for (std::uint64_t n = 0; n <= a.n_max; ++n)
        if (parity(n, z, a.d)) rows.push_back({"p_n", "n=" + std::to_string(n) + ";z=" + point_key(z, a.d), t.p(n, z), ""});
  } else {
    throw UsageError("unknown oracle '" + a.kind + "' (saw, high_temperature, ising, rlrw, rlrw_exact, rllerw, srw)");
  }

  if (a.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o{{"table", r.table}, {"key", r.key}, {"value", r.value}};
      if (!r.exact.empty()) o["exact"] = r.exact;
      j.push_back(o);
    }
    std::cout << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    std::cout << "table,key,value,exact\n";
    for (const auto& r : rows)
      std::cout << csv_escape(r.table) << "," << csv_escape(r.key) << "," << format_double(r.value) << ","
                << csv_escape(r.exact) << "\n";
  } else {
    throw UsageError("--format must be csv or json");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> only;
  double scale = 1.0;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions o;
  o.scale = a.scale;
  if (a.seed) o.seed = *a.seed;
  if (a.verbose) o.log = &std::cout;
  const auto& ids = a.only.empty() ? check_ids() : a.only;
  std::size_t failed = 0;
  for (const auto& id : ids) {
    CheckResult r;
    try {
      r = run_check(id, o);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    std::cout << format_check(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " checks passed\n";
  return failed ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walks on discrete tori: simulation, analysis, theory and exact oracles"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run Monte Carlo chains and write CSV tables and summary.json");
  s->add_option("--config", sim.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  s->add_option("--seed", sim.seed, "global seed (overrides the file)");
  s->add_option("--chains", sim.chains, "independent chains per size")->check(CLI::PositiveNumber);
  s->add_option("--out", sim.out, "output directory");
  s->add_option("--override", sim.overrides, "key=value applied after the file (repeatable)");
  s->add_flag("--quiet", sim.quiet, "no progress lines");

  AnalyzeArgs ana;
  auto* an = app.add_subcommand("analyze", "Fit scaling laws and build profiles from run directories");
  an->add_option("runs", ana.dirs, "run directories written by simulate")->required()->check(CLI::ExistingDirectory);
  an->add_option("--out", ana.out, "output directory");
  an->add_option("--alpha", ana.alpha, "collapse amplitude");
  an->add_option("--beta", ana.beta, "collapse scale");
  an->add_option("--gamma", ana.gamma, "collapse shift");
  an->add_flag("--fit-collapse", ana.fit_collapse, "least-squares fit of alpha, beta, gamma");

  TheoryArgs th;
  auto* t = app.add_subcommand("theory-eval", "Evaluate limit formulas on a grid (CSV)");
  t->add_option("--function", th.function, "prop1, h_d or F");
  t->add_option("--law", th.law, "limit law for prop1: step, zero, half_normal, standardized_half_normal");
  t->add_option("--d", th.d, "dimension");
  t->add_option("--min", th.lo, "first grid point");
  t->add_option("--max", th.hi, "last grid point");
  t->add_option("--points", th.points, "grid size");
  t->add_option("--alpha", th.alpha);
  t->add_option("--beta", th.beta);
  t->add_option("--gamma", th.gamma);
  t->add_option("--out", th.out, "CSV file (default stdout)");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Exact small-instance tables");
  o->add_option("kind", orc.kind, "saw, high_temperature, ising, rlrw, rlrw_exact, rllerw, srw")->required();
  o->add_option("--d", orc.d, "dimension");
  o->add_option("--L", orc.L, "torus period");
  o->add_option("--coupling", orc.coupling, "J (saw) or tanh(beta) (high_temperature, ising)");
  o->add_option("--law", orc.law, "length law, e.g. deterministic:4, geometric:0.9, half_normal:10:1000");
  o->add_option("--radius", orc.radius, "l1 radius of displacements (rlrw, srw)");
  o->add_option("--n-max", orc.n_max, "largest n (srw)");
  o->add_option("--format", orc.format, "csv or json");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the end-to-end acceptance checks and print a scorecard");
  v->add_option("--only", ver.only, "check id (repeatable)");
  v->add_option("--scale", ver.scale, "Monte Carlo sample multiplier")->check(CLI::PositiveNumber);
  v->add_option("--seed", ver.seed, "seed");
  v->add_flag("--verbose", ver.verbose, "print per-check measurements");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*an) return cmd_analyze(ana);
    if (*t) return cmd_theory(th);
    if (*o) return cmd_oracle(orc);
    if (*v) return cmd_verify(ver);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

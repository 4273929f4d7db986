#include "uwalk/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "uwalk/fit.hpp"
#include "uwalk/observables.hpp"
#include "uwalk/simulate.hpp"

namespace uwalk {

namespace {

namespace fs = std::filesystem;

std::vector<ResultRow> read_table(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("cannot open " + p.string());
  try {
    return read_rows(f);
  } catch (const std::exception& e) {
    throw std::runtime_error(p.string() + ": " + e.what());
  }
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Group {
  std::string model;
  int d;
  std::vector<const RunTablesIn*> runs;
};

ScalingSeries series_of(const Group& g, const std::string& observable) {
  ScalingSeries s;
  for (const auto* r : g.runs)
    for (const auto& row : r->moments)
      if (row.observable == observable && std::isfinite(row.estimate))
        s.push_back({static_cast<double>(row.L), row.estimate, std::isfinite(row.stderr_) ? row.stderr_ : 0.0});
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.L < b.L; });
  return s;
}

/// Axis-averaged winding_mean per size; the mean per-axis error is kept as
/// a conservative error of the average.
ScalingSeries winding_series(const Group& g) {
  std::map<std::int64_t, std::pair<double, double>> sum;
  std::map<std::int64_t, int> axes;
  for (const auto* r : g.runs)
    for (const auto& row : r->winding)
      if (row.observable == "winding_mean") {
        sum[row.L].first += row.estimate;
        sum[row.L].second += std::isfinite(row.stderr_) ? row.stderr_ : 0.0;
        ++axes[row.L];
      }
  ScalingSeries s;
  for (const auto& [L, v] : sum) s.push_back({static_cast<double>(L), v.first / axes[L], v.second / axes[L]});
  return s;
}

void fit_rows(AnalysisReport& rep, const std::string& tag, const std::string& what, const ScalingSeries& s) {
  if (s.empty()) {
    rep.notices.push_back(tag + ": missing observable " + what + "; no fit");
    return;
  }
  std::vector<double> sizes;
  for (const auto& p : s) sizes.push_back(p.L);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 3) {
    rep.notices.push_back(tag + ": " + what + " has " + std::to_string(sizes.size()) +
                          " distinct size(s); power-law fit skipped (needs 3)");
    return;
  }
  const auto sweep = cutoff_sweep(s);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const PowerLawFit& f = sweep[i];
    const std::string key = tag + ";" + what + (i ? ";min_L=" + fmt(f.min_L) : "");
    const auto L = static_cast<std::int64_t>(std::llround(f.min_L));
    rep.fits.push_back({"fit_exponent", L, key, f.exponent, f.exponent_stderr, f.points});
    rep.fits.push_back({"fit_amplitude", L, key, f.amplitude, f.amplitude_stderr, f.points});
    rep.fits.push_back({"fit_chi2_per_dof", L, key, f.chi2_per_dof, std::nan(""), f.points});
    for (const auto& w : f.warnings) rep.notices.push_back(key + ": " + w);
  }
}

struct ProfilePoint {
  std::int64_t L;
  std::int64_t k;
  double xi, value, stderr_;
};

std::vector<ProfilePoint> on_axis_profile(const Group& g) {
  std::vector<ProfilePoint> out;
  for (const auto* r : g.runs)
    for (const auto& row : r->two_point) {
      if (row.observable != "g_tilde" && row.observable != "g_tilde_visits") continue;
      int d = 0;
      const Point z = parse_point_key(row.key, d);
      if (d != g.d || z[0] < 1) continue;
      bool axis = true;
      for (int a = 1; a < d; ++a) axis = axis && z[a] == 0;
      if (!axis) continue;
      const double k = static_cast<double>(z[0]);
      const double scale = std::pow(k, d - 2);
      out.push_back({row.L, z[0], k / std::pow(static_cast<double>(row.L), d / 4.0), scale * row.estimate,
                     scale * row.stderr_});
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return std::tie(a.L, a.k) < std::tie(b.L, b.k); });
  return out;
}

/// chi2 of the profile against h_d with alpha profiled out (it is linear).
std::pair<double, double> collapse_chi2(const std::vector<ProfilePoint>& pts, int d, double beta, double gamma) {
  double shh = 0, syh = 0, syy = 0;
  for (const auto& p : pts) {
    const double h = h_d({1.0, beta, gamma, d}, p.xi, LimitLaw::standardized_half_normal(), 1e-8).value;
    const double w = p.stderr_ > 0 ? 1.0 / (p.stderr_ * p.stderr_) : 1.0;
    shh += w * h * h;
    syh += w * p.value * h;
    syy += w * p.value * p.value;
  }
  const double alpha = shh > 0 ? syh / shh : 0.0;
  return {syy - 2 * alpha * syh + alpha * alpha * shh, alpha};
}

CollapseParams fit_collapse(const std::vector<ProfilePoint>& pts, int d) {
  double best_chi2 = INFINITY, best_beta = 1.0, best_gamma = 0.0;
  double beta_lo = std::log(0.05), beta_hi = std::log(20.0), gamma_lo = -3.0, gamma_hi = 3.0;
  for (int round = 0; round < 4; ++round) {
    const int n = 16;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const double beta = std::exp(beta_lo + (beta_hi - beta_lo) * i / n);
        const double gamma = gamma_lo + (gamma_hi - gamma_lo) * j / n;
        const double c = collapse_chi2(pts, d, beta, gamma).first;
        if (c < best_chi2) {
          best_chi2 = c;
          best_beta = beta;
          best_gamma = gamma;
        }
      }
    const double wb = (beta_hi - beta_lo) / 8, wg = (gamma_hi - gamma_lo) / 8;
    beta_lo = std::log(best_beta) - wb;
    beta_hi = std::log(best_beta) + wb;
    gamma_lo = best_gamma - wg;
    gamma_hi = best_gamma + wg;
  }
  return {collapse_chi2(pts, d, best_beta, best_gamma).second, best_beta, best_gamma, d};
}

}  // namespace

RunTablesIn load_run_dir(const std::string& dir) {
  const fs::path root(dir);
  RunTablesIn in;
  in.source = dir;
  std::ifstream sf(root / "summary.json");
  if (!sf) throw std::runtime_error("cannot open " + (root / "summary.json").string());
  const auto j = nlohmann::json::parse(sf);
  for (const char* key : {"model", "dimension"})
    if (!j.contains(key)) throw std::runtime_error((root / "summary.json").string() + " is missing '" + key + "'");
  in.model = j.at("model").get<std::string>();
  in.dimension = j.at("dimension").get<int>();
  in.moments = read_table(root / "moments.csv");
  in.winding = read_table(root / "winding.csv");
  if (fs::exists(root / "two_point.csv")) in.two_point = read_table(root / "two_point.csv");
  return in;
}

AnalysisReport analyze(const std::vector<RunTablesIn>& runs, const AnalyzeOptions& options) {
  AnalysisReport rep;
  std::map<std::pair<std::string, int>, Group> groups;
  for (const auto& r : runs) {
    auto& g = groups[{r.model, r.dimension}];
    g.model = r.model;
    g.d = r.dimension;
    g.runs.push_back(&r);
  }
  for (const auto& [id, g] : groups) {
    const std::string tag = g.model + ";d=" + std::to_string(g.d);
    fit_rows(rep, tag, "length_mean", series_of(g, "length_mean"));
    fit_rows(rep, tag, "length_variance", series_of(g, "length_variance"));
    const ScalingSeries wind = winding_series(g);
    fit_rows(rep, tag, "winding_mean", wind);

    const ScalingSeries ratio = series_of(g, "moment_ratio");
    if (ratio.empty()) rep.notices.push_back(tag + ": missing observable moment_ratio");
    for (const auto& p : ratio)
      rep.fits.push_back({"moment_ratio_minus_phi", static_cast<std::int64_t>(p.L), tag, p.value - phi_constant(),
                          p.stderr_, 0});

    // E(R) / L^{d/4 - 1} above four dimensions, E(R) itself below.
    if (!wind.empty()) {
      const double power = std::max(0.0, g.d / 4.0 - 1.0);
      std::vector<double> v, e;
      for (const auto& p : wind) {
        const double s = std::pow(p.L, power);
        v.push_back(p.value / s);
        e.push_back(p.stderr_ / s);
        rep.fits.push_back({"winding_scaled", static_cast<std::int64_t>(p.L), tag, p.value / s, p.stderr_ / s, 0});
      }
      const WeightedMean m = weighted_mean(v, e);
      rep.fits.push_back({"winding_collapse_constant", static_cast<std::int64_t>(std::llround(wind.front().L)),
                          tag + ";power=" + fmt(power), m.value, m.stderr_, v.size()});
    }

    const auto profile = on_axis_profile(g);
    if (profile.empty()) {
      rep.notices.push_back(tag + ": no on-axis two-point rows; profile skipped");
      continue;
    }
    if (g.d < 3) {
      rep.notices.push_back(tag + ": radial profile needs d >= 3; skipped");
      continue;
    }
    std::optional<CollapseParams> params = options.collapse;
    if (options.fit_collapse) {
      params = fit_collapse(profile, g.d);
      rep.fits.push_back({"collapse_alpha", 0, tag, params->alpha, std::nan(""), profile.size()});
      rep.fits.push_back({"collapse_beta", 0, tag, params->beta, std::nan(""), profile.size()});
      rep.fits.push_back({"collapse_gamma", 0, tag, params->gamma, std::nan(""), profile.size()});
    }
    if (params) params->d = g.d;
    for (const auto& p : profile) {
      const std::string key = tag + ";xi=" + fmt(p.xi) + ";k=" + std::to_string(p.k);
      rep.profiles.push_back({"scaled_two_point", p.L, key, p.value, p.stderr_, 0});
      if (params) rep.profiles.push_back({"h_d", p.L, key, h_d(*params, p.xi).value, std::nan(""), 0});
    }
  }
  return rep;
}

void write_analysis(const AnalysisReport& report, const std::string& dir) {
  fs::create_directories(dir);
  auto table = [&](const std::string& name, const std::vector<ResultRow>& rows) {
    std::ofstream f(fs::path(dir) / name);
    write_rows(f, rows);
    if (!f) throw std::runtime_error("failed writing " + (fs::path(dir) / name).string());
  };
  table("fits.csv", report.fits);
  table("profiles.csv", report.profiles);
  std::ofstream n(fs::path(dir) / "notices.txt");
  for (const auto& s : report.notices) n << s << "\n";
  if (!n) throw std::runtime_error("failed writing notices.txt");
}

}  // namespace uwalk

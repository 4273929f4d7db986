#include "uwalk/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace uwalk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return x;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::Saw: return "saw";
    case Model::IsingWorm: return "ising_worm";
    case Model::Rlrw: return "rlrw";
    case Model::Rllerw: return "rllerw";
  }
  return "?";
}

Model parse_model(const std::string& s) {
  if (s == "saw") return Model::Saw;
  if (s == "ising_worm") return Model::IsingWorm;
  if (s == "rlrw") return Model::Rlrw;
  if (s == "rllerw") return Model::Rllerw;
  throw ConfigError("model: expected saw, ising_worm, rlrw or rllerw, got '" + s + "'");
}

const std::vector<CriticalPoint>& critical_points() {
  static const std::vector<CriticalPoint> table{
      {"ising_worm", 5, 0.1134248, 5e-7},
      {"ising_worm", 2, std::sqrt(2.0) - 1.0, 0.0},
      {"saw", 2, 0.379052277758, 4e-12},
      {"saw", 5, 0.11314084, 1e-8},
      {"saw", 6, 0.09192786, 4e-8},
  };
  return table;
}

std::optional<CriticalPoint> default_critical_point(Model m, int d) {
  const std::string name = to_string(m);
  for (const auto& c : critical_points())
    if (name == c.model && c.d == d) return c;
  return std::nullopt;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "model") model = parse_model(v);
  else if (key == "dimension") dimension = to_int<int>(key, v);
  else if (key == "sizes") {
    sizes.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(to_int<std::int64_t>(key, trim(item)));
  } else if (key == "fugacity") fugacity = to_double(key, v);
  else if (key == "tanh_beta") tanh_beta = to_double(key, v);
  else if (key == "length_law") {
    if (v != "complete_graph") try {
        (void)LengthLaw::parse(v);
      } catch (const std::exception& e) {
        throw ConfigError(key + ": " + e.what());
      }
    length_law = v;
  } else if (key == "lifted") lifted = to_bool(key, v);
  else if (key == "burn_in_sweeps") burn_in_sweeps = to_double(key, v);
  else if (key == "measure_interval_sweeps") measure_interval_sweeps = to_double(key, v);
  else if (key == "measurements_per_chain") measurements_per_chain = to_int<std::uint64_t>(key, v);
  else if (key == "chains") chains = to_int<unsigned>(key, v);
  else if (key == "seed") seed = to_int<std::uint64_t>(key, v);
  else if (key == "two_point_l1_radius") two_point_l1_radius = to_int<std::int64_t>(key, v);
  else if (key == "two_point_axes") two_point_axes = to_bool(key, v);
  else if (key == "write_two_point") write_two_point = to_bool(key, v);
  else if (key == "write_ecdf") write_ecdf = to_bool(key, v);
  else if (key == "output_dir") output_dir = v;
  else throw ConfigError("unknown key '" + key + "'");
}

RunConfig RunConfig::parse(const std::string& text, bool check) {
  RunConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    c.set(key, line.substr(eq + 1));
  }
  if (check) c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path, bool check) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), check);
}

std::string RunConfig::serialize() const {
  std::ostringstream o;
  o << "model = " << to_string(model) << "\n";
  o << "dimension = " << dimension << "\n";
  o << "sizes = ";
  for (std::size_t i = 0; i < sizes.size(); ++i) o << (i ? "," : "") << sizes[i];
  o << "\n";
  o << "fugacity = " << fmt_double(fugacity) << "\n";
  o << "tanh_beta = " << fmt_double(tanh_beta) << "\n";
  o << "length_law = " << length_law << "\n";
  o << "lifted = " << (lifted ? "true" : "false") << "\n";
  o << "burn_in_sweeps = " << fmt_double(burn_in_sweeps) << "\n";
  o << "measure_interval_sweeps = " << fmt_double(measure_interval_sweeps) << "\n";
  o << "measurements_per_chain = " << measurements_per_chain << "\n";
  o << "chains = " << chains << "\n";
  o << "seed = " << seed << "\n";
  o << "two_point_l1_radius = " << two_point_l1_radius << "\n";
  o << "two_point_axes = " << (two_point_axes ? "true" : "false") << "\n";
  o << "write_two_point = " << (write_two_point ? "true" : "false") << "\n";
  o << "write_ecdf = " << (write_ecdf ? "true" : "false") << "\n";
  o << "output_dir = " << output_dir << "\n";
  return o.str();
}

void RunConfig::validate() const {
  if (dimension < 1 || dimension > kMaxDim) throw ConfigError("dimension: must be in 1.." + std::to_string(kMaxDim));
  if (sizes.empty()) throw ConfigError("sizes: need at least one L");
  for (auto L : sizes)
    if (L < 2) throw ConfigError("sizes: every L must be >= 2");
  if (fugacity < 0.0) throw ConfigError("fugacity: must be positive (0 selects the critical point)");
  if (tanh_beta < 0.0 || tanh_beta >= 1.0) throw ConfigError("tanh_beta: must be in (0, 1) (0 selects the critical point)");
  if (chains < 1) throw ConfigError("chains: must be >= 1");
  if (burn_in_sweeps < 0.0) throw ConfigError("burn_in_sweeps: must be >= 0");
  if (!(measure_interval_sweeps > 0.0)) throw ConfigError("measure_interval_sweeps: must be positive");
  if (measurements_per_chain < 1) throw ConfigError("measurements_per_chain: must be >= 1");
  if (model == Model::Saw || model == Model::IsingWorm) (void)coupling();
}

double RunConfig::coupling() const {
  const double given = model == Model::Saw ? fugacity : tanh_beta;
  if (given > 0.0) return given;
  if (auto c = default_critical_point(model, dimension)) return c->value;
  throw ConfigError(std::string(model == Model::Saw ? "fugacity" : "tanh_beta") +
                    ": no shipped critical point for d = " + std::to_string(dimension) + ", set it explicitly");
}

LengthLaw RunConfig::law_for(const TorusSpec& spec) const {
  if (length_law == "complete_graph") return LengthLaw::complete_graph(spec);
  return LengthLaw::parse(length_law);
}

}  // namespace uwalk

#include "uwalk/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace uwalk {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultHeader << "\n";
  for (const auto& r : rows)
    out << csv_escape(r.observable) << ',' << r.L << ',' << csv_escape(r.key) << ',' << format_double(r.estimate) << ','
        << format_double(r.stderr_) << ',' << r.n_samples << "\n";
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get(c);
      rec.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(rec));
      rec.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  if (any) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double x = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::runtime_error("bad number '" + s + "' in CSV");
  return x;
}

template <class Int>
Int parse_int(const std::string& s) {
  Int x{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::runtime_error("bad integer '" + s + "' in CSV");
  return x;
}

}  // namespace

std::vector<ResultRow> read_rows(std::istream& in) {
  const auto records = parse_csv(in);
  if (records.empty()) throw std::runtime_error("empty CSV: missing header");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < records[0].size(); ++i) col[records[0][i]] = i;
  for (const char* name : {"observable", "L", "key", "estimate", "stderr", "n_samples"})
    if (!col.count(name)) throw std::runtime_error(std::string("CSV is missing column '") + name + "'");
  std::vector<ResultRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != records[0].size()) throw std::runtime_error("CSV row " + std::to_string(r) + " has wrong field count");
    rows.push_back({f[col["observable"]], parse_int<std::int64_t>(f[col["L"]]), f[col["key"]],
                    parse_double(f[col["estimate"]]), parse_double(f[col["stderr"]]),
                    parse_int<std::uint64_t>(f[col["n_samples"]])});
  }
  return rows;
}

}  // namespace uwalk

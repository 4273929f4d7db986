#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uwalk {

/// One output row: (observable, L, key, estimate, stderr, n_samples).
struct ResultRow {
  std::string observable;
  std::int64_t L = 0;
  std::string key;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n_samples = 0;
};

inline constexpr const char* kResultHeader = "observable,L,key,estimate,stderr,n_samples";

/// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string csv_escape(std::string_view field);
/// Shortest text that parses back to the same double ("nan", "inf" allowed).
std::string format_double(double x);

void write_rows(std::ostream& out, const std::vector<ResultRow>& rows);

/// Splits RFC 4180 text into records.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

/// Reads a result table; std::runtime_error names any missing column.
std::vector<ResultRow> read_rows(std::istream& in);

}  // namespace uwalk

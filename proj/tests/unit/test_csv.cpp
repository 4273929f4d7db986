#include <stdexcept>
#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "uwalk/csv.hpp"
#include "uwalk/rng.hpp"

using namespace uwalk;

TEST_CASE("escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("parsing handles quotes and CRLF") {
  std::istringstream in("a,b,c\r\n\"x,1\",\"q\"\"\",\r\n\"multi\nline\",2,3\n");
  const auto recs = parse_csv(in);
  REQUIRE(recs.size() == 3);
  CHECK(recs[1] == std::vector<std::string>{"x,1", "q\"", ""});
  CHECK(recs[2][0] == "multi\nline");
}

TEST_CASE("format_double round trips") {
  Philox4x32 rng(5, 0);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.below(200)) - 100);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("result rows round trip") {
  const std::vector<ResultRow> rows{{"g_tilde", 5, "(1,0,0)", 0.125, 1e-3, 100},
                                    {"length_mean", 7, "", 3.5, std::nan(""), 7}};
  std::stringstream s;
  write_rows(s, rows);
  CHECK(s.str().rfind(kResultHeader, 0) == 0);
  const auto back = read_rows(s);
  REQUIRE(back.size() == 2);
  CHECK(back[0].key == "(1,0,0)");
  CHECK(back[0].estimate == 0.125);
  CHECK(back[0].n_samples == 100);
  CHECK(std::isnan(back[1].stderr_));
}

TEST_CASE("missing columns are named") {
  std::istringstream in("observable,L,key,estimate,n_samples\nx,1,,2,3\n");
  try {
    read_rows(in);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("stderr") != std::string::npos);
  }
}

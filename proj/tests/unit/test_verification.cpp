#include <stdexcept>

#include "doctest.h"
#include "uwalk/verification.hpp"

using namespace uwalk;

TEST_CASE("check registry") {
  const auto& ids = check_ids();
  CHECK(ids.size() == 10);
  CHECK_THROWS_AS(run_check("no_such_check", {}), std::invalid_argument);
}

TEST_CASE("quick checks pass") {
  for (const char* id : {"wrap", "appendix", "lemma"}) {
    const CheckResult r = run_check(id, {});
    INFO(format_check(r));
    CHECK(r.passed);
    CHECK(format_check(r).rfind(std::string("PASS ") + id, 0) == 0);
  }
}

TEST_CASE("failed checks are formatted as FAIL") {
  CheckResult r{"x", "title", false, "detail", 1.5};
  CHECK(format_check(r).rfind("FAIL x", 0) == 0);
  CHECK(format_check(r).find("detail") != std::string::npos);
}

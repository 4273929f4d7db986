#include <stdexcept>
#include <unordered_map>

#include "doctest.h"
#include "uwalk/rng.hpp"
#include "uwalk/site_map.hpp"

using namespace uwalk;

TEST_CASE("site map matches a reference map under random operations") {
  for (std::uint64_t dense_limit : {std::uint64_t{1} << 20, std::uint64_t{0}}) {
    SiteIndexMap m(5000, dense_limit);
    CHECK(m.dense() == (dense_limit > 0));
    std::unordered_map<std::uint64_t, std::int32_t> ref;
    Philox4x32 rng(8, dense_limit);
    for (int i = 0; i < 200000; ++i) {
      const auto k = rng.below(5000);
      switch (rng.below(3)) {
        case 0:
          m.insert(k, i);
          ref[k] = i;
          break;
        case 1:
          m.erase(k);
          ref.erase(k);
          break;
        default: {
          auto it = ref.find(k);
          REQUIRE(m.find(k) == (it == ref.end() ? SiteIndexMap::kAbsent : it->second));
        }
      }
      REQUIRE(m.size() == ref.size());
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "dynpred/core/rng.hpp"
#include "dynpred/core/symdiff.hpp"

#include <map>
#include <vector>

using namespace dynpred;

namespace {

// Reference: recompute the symmetric difference of two prefixes from scratch.
std::size_t symdiff_size(const std::vector<int>& a, const std::vector<int>& b,
                         std::size_t t) {
  std::map<int, long> counts;
  for (std::size_t i = 0; i < t; ++i) {
    ++counts[a[i]];
    --counts[b[i]];
  }
  std::size_t size = 0;
  for (auto& [_, c] : counts) size += static_cast<std::size_t>(std::abs(c));
  return size;
}

}  // namespace

TEST_CASE("symdiff step examples") {
  SymDiffTracker<int> tracker;
  tracker.step(7, 7);
  CHECK(tracker.size() == 0);
  CHECK(tracker.empty());

  tracker.step(1, 2);
  CHECK(tracker.size() == 2);
  CHECK(tracker.count(1) == 1);
  CHECK(tracker.count(2) == -1);

  tracker.step(2, 1);  // cancels out
  CHECK(tracker.size() == 0);
  CHECK(tracker.empty());
}

TEST_CASE("tracker equals from-scratch recomputation at every step") {
  Rng rng(31001);
  for (int it = 0; it < 200; ++it) {
    const std::size_t T = 1 + uniform_below(rng, 60);
    std::vector<int> a(T), b(T);
    for (auto& x : a) x = static_cast<int>(uniform_below(rng, 6));
    for (auto& x : b) x = static_cast<int>(uniform_below(rng, 6));
    SymDiffTracker<int> tracker;
    for (std::size_t t = 1; t <= T; ++t) {
      tracker.step(a[t - 1], b[t - 1]);
      CHECK(tracker.size() == symdiff_size(a, b, t));
    }
  }
}

TEST_CASE("no zero entries are ever stored") {
  Rng rng(31002);
  SymDiffTracker<int> tracker;
  for (int i = 0; i < 2000; ++i) {
    tracker.step(static_cast<int>(uniform_below(rng, 4)),
                 static_cast<int>(uniform_below(rng, 4)));
    std::size_t sum = 0;
    for (const auto& [_, c] : tracker.counts()) {
      CHECK(c != 0);
      sum += static_cast<std::size_t>(std::abs(c));
    }
    CHECK(sum == tracker.size());
  }
}

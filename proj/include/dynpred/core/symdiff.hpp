#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>

namespace dynpred {

/// The multiset D_t = rho_{<=t} (symmetric difference) rhohat_{<=t},
/// maintained incrementally. Positive count: surplus in rho; negative:
/// surplus in rhohat. Zero entries are erased, so size() is the sum of
/// absolute counts.
template <typename R>
class SymDiffTracker {
 public:
  void step(const R& actual, const R& predicted) {
    if (actual == predicted) return;
    bump(actual, +1);
    bump(predicted, -1);
  }

  /// One-sided step for length-mismatched tails (actual request only).
  void step_actual(const R& actual) { bump(actual, +1); }
  void step_predicted(const R& predicted) { bump(predicted, -1); }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::int64_t count(const R& r) const {
    auto it = counts_.find(r);
    return it == counts_.end() ? 0 : it->second;
  }
  [[nodiscard]] const std::map<R, std::int64_t>& counts() const { return counts_; }
  [[nodiscard]] bool empty() const { return counts_.empty(); }

 private:
  void bump(const R& r, std::int64_t delta) {
    auto [it, inserted] = counts_.try_emplace(r, 0);
    size_ -= static_cast<std::size_t>(std::abs(it->second));
    it->second += delta;
    size_ += static_cast<std::size_t>(std::abs(it->second));
    if (it->second == 0) counts_.erase(it);
  }

  std::map<R, std::int64_t> counts_;
  std::size_t size_{0};
};

}  // namespace dynpred

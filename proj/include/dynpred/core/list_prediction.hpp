#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

#include "dynpred/core/rng.hpp"

namespace dynpred {

/// Per-step candidate sets: slot t is guaranteed to contain the true t-th
/// request. bound is the advertised L.
template <typename R>
struct ListPrediction {
  std::vector<std::set<R>> slots;
  std::size_t bound{1};

  [[nodiscard]] std::size_t size() const { return slots.size(); }

  [[nodiscard]] bool contains(std::size_t t, const R& r) const {
    return slots[t - 1].count(r) != 0;  // t is 1-based
  }

  [[nodiscard]] bool well_formed() const {
    for (const auto& s : slots)
      if (s.empty() || s.size() > bound) return false;
    return true;
  }
};

/// Window expansion of a delay prediction: slot t collects rhohat over
/// [max(1,t-d), min(T,t+d)], so each slot has at most 2d+1 candidates.
template <typename R>
ListPrediction<R> delay_to_list(const std::vector<R>& rhohat, std::size_t d) {
  const std::size_t T = rhohat.size();
  ListPrediction<R> lp;
  lp.bound = 2 * d + 1;
  lp.slots.resize(T);
  for (std::size_t t = 1; t <= T; ++t) {
    const std::size_t lo = t > d ? t - d : 1;
    const std::size_t hi = std::min(T, t + d);
    for (std::size_t tau = lo; tau <= hi; ++tau) lp.slots[t - 1].insert(rhohat[tau - 1]);
  }
  return lp;
}

/// One uniformly random candidate per slot; deterministic for a fixed seed.
template <typename R>
std::vector<R> list_to_point_sample(const ListPrediction<R>& lp, Rng& rng) {
  std::vector<R> out;
  out.reserve(lp.slots.size());
  for (const auto& slot : lp.slots) {
    if (slot.empty())
      throw std::invalid_argument("list_to_point_sample: empty slot");
    auto it = slot.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(uniform_below(rng, slot.size())));
    out.push_back(*it);
  }
  return out;
}

}  // namespace dynpred

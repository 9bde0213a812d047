#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dynpred {

namespace detail {

// Positions (0-based) of every occurrence of each distinct element.
template <typename R>
std::map<R, std::vector<std::size_t>> occurrence_positions(const std::vector<R>& seq) {
  std::map<R, std::vector<std::size_t>> pos;
  for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]].push_back(i);
  return pos;
}

template <typename R>
bool multiset_equal(const std::vector<R>& a, const std::vector<R>& b) {
  if (a.size() != b.size()) return false;
  auto sa = a;
  auto sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

}  // namespace detail

/// The permutation matching the j-th occurrence of each distinct request in
/// rho to its j-th occurrence in rhohat. pi[t] = p means rhohat[t] = rho[p]
/// (0-based). Empty optional when the sequences differ as multisets.
///
/// This matching minimizes both the max and the total displacement: crossing
/// matchings of equal elements can always be uncrossed without increasing
/// either objective.
template <typename R>
std::optional<std::vector<std::size_t>> occurrence_matching(
    const std::vector<R>& rho, const std::vector<R>& rhohat) {
  if (!detail::multiset_equal(rho, rhohat)) return std::nullopt;
  auto pos = detail::occurrence_positions(rho);
  std::map<R, std::size_t> next;
  std::vector<std::size_t> pi(rhohat.size());
  for (std::size_t t = 0; t < rhohat.size(); ++t) {
    auto& lst = pos[rhohat[t]];
    pi[t] = lst[next[rhohat[t]]++];
  }
  return pi;
}

template <typename R>
std::optional<std::size_t> min_delay(const std::vector<R>& rho,
                                     const std::vector<R>& rhohat) {
  auto pi = occurrence_matching(rho, rhohat);
  if (!pi) return std::nullopt;
  std::size_t d = 0;
  for (std::size_t t = 0; t < pi->size(); ++t) {
    const auto p = (*pi)[t];
    d = std::max(d, p > t ? p - t : t - p);
  }
  return d;
}

template <typename R>
std::optional<std::size_t> total_delay(const std::vector<R>& rho,
                                       const std::vector<R>& rhohat) {
  auto pi = occurrence_matching(rho, rhohat);
  if (!pi) return std::nullopt;
  std::size_t sum = 0;
  for (std::size_t t = 0; t < pi->size(); ++t) {
    const auto p = (*pi)[t];
    sum += p > t ? p - t : t - p;
  }
  return sum;
}

namespace detail {

template <typename R, typename Cost>
void delay_search(const std::vector<R>& rho, const std::vector<R>& rhohat,
                  std::vector<bool>& used, std::size_t t, std::size_t acc,
                  std::size_t& best, Cost cost) {
  if (acc >= best) return;  // prune
  if (t == rhohat.size()) {
    best = acc;
    return;
  }
  for (std::size_t p = 0; p < rho.size(); ++p) {
    if (used[p] || !(rho[p] == rhohat[t])) continue;
    used[p] = true;
    delay_search(rho, rhohat, used, t + 1, cost(acc, p, t), best, cost);
    used[p] = false;
  }
}

}  // namespace detail

/// Exhaustive minimum over all permutations pi with pi(rho) = rhohat.
/// Verification oracle; refuses T > 8.
template <typename R>
std::optional<std::size_t> min_delay_bruteforce(const std::vector<R>& rho,
                                                const std::vector<R>& rhohat) {
  if (rho.size() > 8 || rhohat.size() > 8)
    throw std::invalid_argument("min_delay_bruteforce: T > 8 refused");
  if (!detail::multiset_equal(rho, rhohat)) return std::nullopt;
  std::size_t best = rho.size() + 1;
  std::vector<bool> used(rho.size(), false);
  detail::delay_search(rho, rhohat, used, 0, 0, best,
                       [](std::size_t acc, std::size_t p, std::size_t t) {
                         const std::size_t disp = p > t ? p - t : t - p;
                         return std::max(acc, disp);
                       });
  return best;
}

template <typename R>
std::optional<std::size_t> total_delay_bruteforce(const std::vector<R>& rho,
                                                  const std::vector<R>& rhohat) {
  if (rho.size() > 8 || rhohat.size() > 8)
    throw std::invalid_argument("total_delay_bruteforce: T > 8 refused");
  if (!detail::multiset_equal(rho, rhohat)) return std::nullopt;
  std::size_t best = SIZE_MAX;
  std::vector<bool> used(rho.size(), false);
  detail::delay_search(rho, rhohat, used, 0, 0, best,
                       [](std::size_t acc, std::size_t p, std::size_t t) {
                         const std::size_t disp = p > t ? p - t : t - p;
                         return acc + disp;
                       });
  return best;
}

/// True iff rhohat_{<=t-d} <= rho_{<=t} <= rhohat_{<=t+d} as multisets for
/// every t in [T].
template <typename R>
bool containment_check(const std::vector<R>& rho, const std::vector<R>& rhohat,
                       std::size_t d) {
  if (rho.size() != rhohat.size()) return false;
  const std::size_t T = rho.size();

  // lo[x] = count in rhohat_{<=t-d} minus count in rho_{<=t}; must stay <= 0.
  // hi[x] = count in rho_{<=t} minus count in rhohat_{<=t+d}; must stay <= 0.
  std::map<R, std::int64_t> lo, hi;
  std::size_t lo_violations = 0, hi_violations = 0;
  auto bump = [](std::map<R, std::int64_t>& m, const R& x, std::int64_t delta,
                 std::size_t& violations) {
    auto& v = m[x];
    const bool was_pos = v > 0;
    v += delta;
    const bool is_pos = v > 0;
    if (was_pos && !is_pos) --violations;
    if (!was_pos && is_pos) ++violations;
  };

  // Seed hi with the first d predicted requests already subtracted.
  for (std::size_t i = 0; i < std::min(d, T); ++i)
    bump(hi, rhohat[i], -1, hi_violations);

  for (std::size_t t = 1; t <= T; ++t) {
    bump(hi, rho[t - 1], +1, hi_violations);
    if (t + d <= T) bump(hi, rhohat[t + d - 1], -1, hi_violations);
    if (t > d) bump(lo, rhohat[t - d - 1], +1, lo_violations);
    bump(lo, rho[t - 1], -1, lo_violations);
    if (lo_violations != 0 || hi_violations != 0) return false;
  }
  return true;
}

}  // namespace dynpred

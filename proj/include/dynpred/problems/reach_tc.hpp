#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "dynpred/core/request.hpp"
#include "dynpred/graph/flip_graph.hpp"

namespace dynpred::reach_tc {

/// Directed edge flip or pairwise reachability query.
struct Payload {
  std::int32_t u{-1};
  std::int32_t v{-1};
  friend auto operator<=>(const Payload&, const Payload&) = default;
};

using Req = Request<Payload>;
using Seq = RequestSequence<Payload>;

inline Req flip_request(std::int32_t u, std::int32_t v) {
  if (u == v) throw std::invalid_argument("reach_tc: self-loop flip");
  return Req{RequestKind::update, Payload{u, v}};
}
inline Req query_request(std::int32_t u, std::int32_t v) {
  return Req{RequestKind::query, Payload{u, v}};
}

/// DFS reachability on the current digraph; the oracle for this module.
inline bool reachable(const DiGraph& g, std::size_t u, std::size_t v) {
  if (u == v) return true;
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::vector<std::size_t> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    if (x == v) return true;
    for (std::size_t y = 0; y < g.size(); ++y)
      if (!seen[y] && g.has_edge(x, y)) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  return false;
}

struct PromiseBroken : std::runtime_error {
  PromiseBroken() : std::runtime_error("reach_tc: delay promise broken") {}
};

struct LevelTables {
  std::size_t d{0};
  std::vector<std::vector<std::int32_t>> enter;  // edge ids u*n+v, indexed by t
  std::vector<std::vector<std::int32_t>> leave;
  std::vector<std::uint8_t> hosted;
  std::vector<std::vector<std::int32_t>> active;
  std::vector<std::vector<std::int16_t>> active_idx;
  std::vector<std::vector<std::uint8_t>> reach;  // |A| x |A| over active ids

  [[nodiscard]] bool reach_at(std::size_t t, std::int16_t i, std::int16_t j) const {
    return reach[t][static_cast<std::size_t>(i) * active[t].size() +
                    static_cast<std::size_t>(j)] != 0;
  }
};

/// Permanent-edge events and through-P reachability tables for one level.
inline LevelTables promise_preprocess(const DiGraph& g0, const Seq& rhohat,
                                      std::size_t d) {
  const std::size_t n = g0.size();
  const std::size_t T = rhohat.size();
  LevelTables tab;
  tab.d = d;
  tab.enter.resize(T + 1);
  tab.leave.resize(T + 1);
  tab.hosted.assign(T + 1, 0);
  tab.active.resize(T + 1);
  tab.active_idx.resize(T + 1);
  tab.reach.resize(T + 1);

  // Predicted edge snapshots and per-edge flip times.
  std::vector<std::vector<std::uint8_t>> ehat(T + 1,
                                              std::vector<std::uint8_t>(n * n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) ehat[0][u * n + v] = g0.has_edge(u, v) ? 1 : 0;
  std::vector<std::vector<std::size_t>> flips(n * n);
  for (std::size_t t = 1; t <= T; ++t) {
    ehat[t] = ehat[t - 1];
    const Req& r = rhohat[t - 1];
    if (r.is_update()) {
      const auto e = static_cast<std::size_t>(r.payload.u) * n +
                     static_cast<std::size_t>(r.payload.v);
      ehat[t][e] ^= 1;
      flips[e].push_back(t);
    }
  }
  auto flip_free = [&](std::size_t e, std::size_t lo, std::size_t hi) {
    // no flip time in (lo, hi]
    auto it = std::upper_bound(flips[e].begin(), flips[e].end(), lo);
    return it == flips[e].end() || *it > hi;
  };

  std::vector<std::uint8_t> prev_p(n * n, 0);
  std::vector<std::uint8_t> in_p(n * n, 0);
  for (std::size_t t = 0; t <= T; ++t) {
    // Reference time point for presence: t - d, clamped to the initial
    // state. An edge is permanent when present there and flip-free
    // afterwards through the window end; a flip at exactly t - d (its
    // insertion) is consistent with being present throughout.
    const std::size_t t0 = t > d ? std::min(t - d, T) : 0;
    const std::size_t t1 = std::max<std::size_t>(1, t0);
    const std::size_t t2 = std::min(T, t + d);

    bool has_query = false;
    std::vector<std::uint8_t> act(n, 0);
    for (std::size_t tau = t1; tau <= t2 && T > 0; ++tau) {
      const Req& r = rhohat[tau - 1];
      act[static_cast<std::size_t>(r.payload.u)] = 1;
      act[static_cast<std::size_t>(r.payload.v)] = 1;
      if (r.is_query()) has_query = true;
    }

    for (std::size_t e = 0; e < n * n; ++e) {
      const bool p = T > 0 && ehat[t0][e] != 0 && flip_free(e, t0, t2);
      in_p[e] = p ? 1 : 0;
      if (in_p[e] && !prev_p[e]) tab.enter[t].push_back(static_cast<std::int32_t>(e));
      if (!in_p[e] && prev_p[e]) tab.leave[t].push_back(static_cast<std::int32_t>(e));
    }
    prev_p = in_p;

    tab.hosted[t] = (t >= 1 && has_query) ? 1 : 0;
    if (!tab.hosted[t]) continue;

    for (std::size_t v = 0; v < n; ++v)
      if (act[v]) tab.active[t].push_back(static_cast<std::int32_t>(v));
    tab.active_idx[t].assign(n, -1);
    for (std::size_t i = 0; i < tab.active[t].size(); ++i)
      tab.active_idx[t][static_cast<std::size_t>(tab.active[t][i])] =
          static_cast<std::int16_t>(i);

    // Reachability over (V, P_t) from each active source, word-packed.
    const std::size_t words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(n,
                                                std::vector<std::uint64_t>(words, 0));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (in_p[u * n + v]) adj[u][v / 64] |= 1ull << (v % 64);
    const auto& actv = tab.active[t];
    tab.reach[t].assign(actv.size() * actv.size(), 0);
    for (std::size_t i = 0; i < actv.size(); ++i) {
      const auto mask = reach_mask(adj, n, static_cast<std::size_t>(actv[i]));
      for (std::size_t j = 0; j < actv.size(); ++j) {
        const auto v = static_cast<std::size_t>(actv[j]);
        tab.reach[t][i * actv.size() + j] =
            (mask[v / 64] >> (v % 64)) & 1ull ? 1 : 0;
      }
    }
  }
  return tab;
}

struct Stats {
  std::optional<std::size_t> dstar;
  std::uint64_t scanned_vertices{0};
  std::size_t f_size{0};
};

class ReachTC {
 public:
  ReachTC(DiGraph g0, Seq rhohat, std::vector<std::size_t> ds, bool promise_mode)
      : g_(std::move(g0)), rhohat_(std::move(rhohat)), promise_mode_(promise_mode) {
    const std::size_t n = g_.size();
    for (auto d : ds) {
      Level lvl;
      lvl.tab = promise_preprocess(g_, rhohat_, d);
      lvl.in_p.assign(n * n, 0);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if (g_.has_edge(u, v))
            lvl.f_set.insert(static_cast<std::int32_t>(u * n + v));
      levels_.push_back(std::move(lvl));
    }
    for (auto& lvl : levels_) slide(lvl, 0);
  }

  static ReachTC promise(DiGraph g0, Seq rhohat, std::size_t d) {
    return ReachTC(std::move(g0), std::move(rhohat), {d}, true);
  }

  /// Doubling levels reach 2n, not n, so a certified delay close to n still
  /// lands on a level before the fallback.
  static ReachTC agnostic(DiGraph g0, Seq rhohat) {
    std::vector<std::size_t> ds{0};
    const std::size_t n = std::max<std::size_t>(2, g0.size());
    for (std::size_t d = 1; d / 2 < 2 * n; d *= 2) ds.push_back(d);
    return ReachTC(std::move(g0), std::move(rhohat), std::move(ds), false);
  }

  void apply(std::size_t t, const Req& r) {
    for (auto& lvl : levels_) slide(lvl, t);
    if (!r.is_update()) return;
    const auto u = static_cast<std::size_t>(r.payload.u);
    const auto v = static_cast<std::size_t>(r.payload.v);
    const bool present = g_.flip(u, v);
    const auto e = static_cast<std::int32_t>(u * g_.size() + v);
    for (auto& lvl : levels_) {
      if (lvl.in_p[static_cast<std::size_t>(e)]) {
        lvl.violations += present ? -1 : +1;
      } else {
        if (present)
          lvl.f_set.insert(e);
        else
          lvl.f_set.erase(e);
      }
    }
  }

  [[nodiscard]] bool query(std::size_t t, std::size_t u, std::size_t v) {
    const std::size_t n = g_.size();
    if (u >= n || v >= n)
      throw std::out_of_range("reach_tc: queried vertex out of range");
    stats_ = Stats{};
    if (u == v) return true;
    for (auto& lvl : levels_) {
      if (lvl.violations != 0) continue;
      if (lvl.f_set.size() > 2 * lvl.tab.d + 1) continue;
      if (t >= lvl.tab.hosted.size() || !lvl.tab.hosted[t]) continue;
      const auto& idx = lvl.tab.active_idx[t];
      if (idx[u] < 0 || idx[v] < 0) continue;
      bool covered = true;
      for (auto e : lvl.f_set) {
        const auto a = static_cast<std::size_t>(e) / n;
        const auto b = static_cast<std::size_t>(e) % n;
        if (idx[a] < 0 || idx[b] < 0) {
          covered = false;
          break;
        }
      }
      if (!covered) continue;
      stats_.dstar = lvl.tab.d;
      stats_.f_size = lvl.f_set.size();
      return promise_query(lvl, t, u, v);
    }
    if (promise_mode_) throw PromiseBroken{};
    stats_.scanned_vertices = n;
    return reachable(g_, u, v);
  }

  [[nodiscard]] const Stats& stats() const { return stats_; }
  [[nodiscard]] const DiGraph& graph() const { return g_; }
  [[nodiscard]] std::size_t level_count() const { return levels_.size(); }
  [[nodiscard]] std::size_t level_delay(std::size_t i) const { return levels_[i].tab.d; }
  [[nodiscard]] std::size_t level_f_size(std::size_t i) const {
    return levels_[i].f_set.size();
  }
  [[nodiscard]] bool level_p_in_e(std::size_t i) const {
    return levels_[i].violations == 0;
  }

 private:
  struct Level {
    LevelTables tab;
    std::vector<std::uint8_t> in_p;
    std::set<std::int32_t> f_set;  // E_t \ P_t
    std::size_t violations{0};     // |P_t \ E_t|
  };

  void slide(Level& lvl, std::size_t t) {
    if (t >= lvl.tab.enter.size()) return;  // past the prediction horizon
    const std::size_t n = g_.size();
    for (auto e : lvl.tab.enter[t]) {
      lvl.in_p[static_cast<std::size_t>(e)] = 1;
      const auto u = static_cast<std::size_t>(e) / n;
      const auto v = static_cast<std::size_t>(e) % n;
      if (g_.has_edge(u, v))
        lvl.f_set.erase(e);
      else
        ++lvl.violations;
    }
    for (auto e : lvl.tab.leave[t]) {
      lvl.in_p[static_cast<std::size_t>(e)] = 0;
      const auto u = static_cast<std::size_t>(e) / n;
      const auto v = static_cast<std::size_t>(e) % n;
      if (g_.has_edge(u, v))
        lvl.f_set.insert(e);
      else
        --lvl.violations;
    }
  }

  /// H_t on V(F_t) + {u, v}: induced current edges plus directed shortcuts
  /// through P, then DFS from u.
  bool promise_query(const Level& lvl, std::size_t t, std::size_t u, std::size_t v) {
    const std::size_t n = g_.size();
    std::set<std::int32_t> vert_set;
    for (auto e : lvl.f_set) {
      vert_set.insert(static_cast<std::int32_t>(static_cast<std::size_t>(e) / n));
      vert_set.insert(static_cast<std::int32_t>(static_cast<std::size_t>(e) % n));
    }
    vert_set.insert(static_cast<std::int32_t>(u));
    vert_set.insert(static_cast<std::int32_t>(v));
    std::vector<std::int32_t> verts(vert_set.begin(), vert_set.end());
    stats_.scanned_vertices = verts.size();

    const std::size_t m = verts.size();
    const auto& idx = lvl.tab.active_idx[t];
    std::vector<std::uint8_t> adj(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const auto a = static_cast<std::size_t>(verts[i]);
        const auto b = static_cast<std::size_t>(verts[j]);
        bool e = g_.has_edge(a, b);
        e = e || lvl.tab.reach_at(t, idx[a], idx[b]);
        adj[i * m + j] = e ? 1 : 0;
      }

    std::size_t src = 0, dst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (verts[i] == static_cast<std::int32_t>(u)) src = i;
      if (verts[i] == static_cast<std::int32_t>(v)) dst = i;
    }
    std::vector<std::uint8_t> seen(m, 0);
    std::vector<std::size_t> stack{src};
    seen[src] = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (x == dst) return true;
      for (std::size_t y = 0; y < m; ++y)
        if (!seen[y] && adj[x * m + y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return false;
  }

  DiGraph g_;
  Seq rhohat_;
  bool promise_mode_;
  std::vector<Level> levels_;
  Stats stats_;
};

}  // namespace dynpred::reach_tc

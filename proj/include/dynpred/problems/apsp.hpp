#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "dynpred/core/request.hpp"

namespace dynpred::apsp {

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

/// Weighted directed edge flip (the weight rides on the flip and applies
/// when the flip inserts) or a distance query.
struct Payload {
  std::int32_t u{-1};
  std::int32_t v{-1};
  std::int64_t w{0};
  friend auto operator<=>(const Payload&, const Payload&) = default;
};

using Req = Request<Payload>;
using Seq = RequestSequence<Payload>;

inline Req flip_request(std::int32_t u, std::int32_t v, std::int64_t w) {
  if (u == v) throw std::invalid_argument("apsp: self-loop flip");
  if (w < 0) throw std::invalid_argument("apsp: negative weight");
  return Req{RequestKind::update, Payload{u, v, w}};
}
inline Req query_request(std::int32_t u, std::int32_t v) {
  return Req{RequestKind::query, Payload{u, v, 0}};
}

/// Dense weighted digraph under weighted edge flips.
class WeightedDiGraph {
 public:
  WeightedDiGraph() : WeightedDiGraph(0) {}
  explicit WeightedDiGraph(std::size_t n)
      : n_(n), present_(n * n, 0), weight_(n * n, 0) {}

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    return present_[u * n_ + v] != 0;
  }
  [[nodiscard]] std::int64_t weight(std::size_t u, std::size_t v) const {
    return weight_[u * n_ + v];
  }
  void set_edge(std::size_t u, std::size_t v, std::int64_t w) {
    if (w < 0) throw std::invalid_argument("apsp: negative weight");
    present_[u * n_ + v] = 1;
    weight_[u * n_ + v] = w;
  }
  void remove_edge(std::size_t u, std::size_t v) { present_[u * n_ + v] = 0; }

  /// Toggle presence; on insertion the flip's weight takes effect.
  bool flip(std::size_t u, std::size_t v, std::int64_t w) {
    if (u >= n_ || v >= n_) throw std::out_of_range("apsp: vertex out of range");
    if (u == v) throw std::invalid_argument("apsp: self-loop");
    if (has_edge(u, v)) {
      remove_edge(u, v);
      return false;
    }
    set_edge(u, v, w);
    return true;
  }

  friend bool operator==(const WeightedDiGraph&, const WeightedDiGraph&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> present_;
  std::vector<std::int64_t> weight_;
};

/// Bellman-Ford distances from src; deliberately a different route than the
/// Dijkstra used by the solvers, so the two can cross-check each other.
inline std::vector<std::int64_t> bellman_ford(const WeightedDiGraph& g,
                                              std::size_t src) {
  const std::size_t n = g.size();
  std::vector<std::int64_t> dist(n, kInf);
  dist[src] = 0;
  for (std::size_t round = 0; round + 1 < n; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] == kInf) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (g.has_edge(u, v) && dist[u] + g.weight(u, v) < dist[v]) {
          dist[v] = dist[u] + g.weight(u, v);
          changed = true;
        }
    }
    if (!changed) break;
  }
  return dist;
}

/// Dijkstra over an explicit adjacency-matrix view (kInf = absent edge).
inline std::vector<std::int64_t> dijkstra_dense(
    const std::vector<std::int64_t>& adj, std::size_t m, std::size_t src) {
  std::vector<std::int64_t> dist(m, kInf);
  std::vector<std::uint8_t> done(m, 0);
  dist[src] = 0;
  for (std::size_t it = 0; it < m; ++it) {
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && dist[i] != kInf && (best == m || dist[i] < dist[best]))
        best = i;
    if (best == m) break;
    done[best] = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (adj[best * m + j] == kInf) continue;
      const auto cand = sat_add(dist[best], adj[best * m + j]);
      if (cand < dist[j]) dist[j] = cand;
    }
  }
  return dist;
}

inline std::int64_t dijkstra_full(const WeightedDiGraph& g, std::size_t u,
                                  std::size_t v) {
  const std::size_t n = g.size();
  std::vector<std::int64_t> adj(n * n, kInf);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.has_edge(a, b)) adj[a * n + b] = g.weight(a, b);
  return dijkstra_dense(adj, n, u)[v];
}

struct PromiseBroken : std::runtime_error {
  PromiseBroken() : std::runtime_error("apsp: delay promise broken") {}
};

struct LevelTables {
  std::size_t d{0};
  std::vector<std::vector<std::int32_t>> enter;  // edge ids, with weights below
  std::vector<std::vector<std::int64_t>> enter_w;
  std::vector<std::vector<std::int32_t>> leave;
  std::vector<std::uint8_t> hosted;
  std::vector<std::vector<std::int32_t>> active;
  std::vector<std::vector<std::int16_t>> active_idx;
  std::vector<std::vector<std::int64_t>> dist;  // |A| x |A| over active ids

  [[nodiscard]] std::int64_t dist_at(std::size_t t, std::int16_t i,
                                     std::int16_t j) const {
    return dist[t][static_cast<std::size_t>(i) * active[t].size() +
                   static_cast<std::size_t>(j)];
  }
};

/// Permanent-edge events and through-P distance tables for one level. A
/// permanent edge keeps one weight across its window, read off the predicted
/// replay at the window start.
inline LevelTables promise_preprocess(const WeightedDiGraph& g0, const Seq& rhohat,
                                      std::size_t d) {
  const std::size_t n = g0.size();
  const std::size_t T = rhohat.size();
  LevelTables tab;
  tab.d = d;
  tab.enter.resize(T + 1);
  tab.enter_w.resize(T + 1);
  tab.leave.resize(T + 1);
  tab.hosted.assign(T + 1, 0);
  tab.active.resize(T + 1);
  tab.active_idx.resize(T + 1);
  tab.dist.resize(T + 1);

  std::vector<std::vector<std::uint8_t>> ehat(T + 1,
                                              std::vector<std::uint8_t>(n * n, 0));
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> flips(n * n);
  std::vector<std::int64_t> what0(n * n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      ehat[0][u * n + v] = g0.has_edge(u, v) ? 1 : 0;
      what0[u * n + v] = g0.has_edge(u, v) ? g0.weight(u, v) : 0;
    }
  for (std::size_t t = 1; t <= T; ++t) {
    ehat[t] = ehat[t - 1];
    const Req& r = rhohat[t - 1];
    if (r.is_update()) {
      const auto e = static_cast<std::size_t>(r.payload.u) * n +
                     static_cast<std::size_t>(r.payload.v);
      ehat[t][e] ^= 1;
      flips[e].emplace_back(t, r.payload.w);
    }
  }
  auto flip_free = [&](std::size_t e, std::size_t lo, std::size_t hi) {
    auto it = std::upper_bound(
        flips[e].begin(), flips[e].end(), lo,
        [](std::size_t lhs, const auto& p) { return lhs < p.first; });
    return it == flips[e].end() || it->first > hi;
  };
  auto weight_at = [&](std::size_t e, std::size_t t) {
    // weight of a present edge: from the last flip at or before t, else the
    // initial instance
    auto it = std::upper_bound(
        flips[e].begin(), flips[e].end(), t,
        [](std::size_t lhs, const auto& p) { return lhs < p.first; });
    if (it == flips[e].begin()) return what0[e];
    return std::prev(it)->second;
  };

  std::vector<std::uint8_t> prev_p(n * n, 0);
  std::vector<std::uint8_t> in_p(n * n, 0);
  for (std::size_t t = 0; t <= T; ++t) {
    // Presence reference point t - d, clamped to the initial state; a flip
    // at exactly t - d (the insertion) keeps the edge permanent.
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
      if (in_p[e] && !prev_p[e]) {
        tab.enter[t].push_back(static_cast<std::int32_t>(e));
        tab.enter_w[t].push_back(weight_at(e, t0));
      }
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

    // Dijkstra from each active source over (V, P_t).
    std::vector<std::int64_t> adj(n * n, kInf);
    for (std::size_t e = 0; e < n * n; ++e)
      if (in_p[e]) adj[e] = weight_at(e, t0);
    const auto& actv = tab.active[t];
    tab.dist[t].assign(actv.size() * actv.size(), kInf);
    for (std::size_t i = 0; i < actv.size(); ++i) {
      const auto dsts = dijkstra_dense(adj, n, static_cast<std::size_t>(actv[i]));
      for (std::size_t j = 0; j < actv.size(); ++j)
        tab.dist[t][i * actv.size() + j] = dsts[static_cast<std::size_t>(actv[j])];
    }
  }
  return tab;
}

struct Stats {
  std::optional<std::size_t> dstar;
  std::uint64_t scanned_vertices{0};
  std::size_t f_size{0};
};

class Apsp {
 public:
  Apsp(WeightedDiGraph g0, Seq rhohat, std::vector<std::size_t> ds, bool promise_mode)
      : g_(std::move(g0)), rhohat_(std::move(rhohat)), promise_mode_(promise_mode) {
    const std::size_t n = g_.size();
    for (auto d : ds) {
      Level lvl;
      lvl.tab = promise_preprocess(g_, rhohat_, d);
      lvl.in_p.assign(n * n, 0);
      lvl.expected_w.assign(n * n, 0);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if (g_.has_edge(u, v))
            lvl.f_set.insert(static_cast<std::int32_t>(u * n + v));
      levels_.push_back(std::move(lvl));
    }
    for (auto& lvl : levels_) slide(lvl, 0);
  }

  static Apsp promise(WeightedDiGraph g0, Seq rhohat, std::size_t d) {
    return Apsp(std::move(g0), std::move(rhohat), {d}, true);
  }

  static Apsp agnostic(WeightedDiGraph g0, Seq rhohat) {
    std::vector<std::size_t> ds{0};
    const std::size_t n = std::max<std::size_t>(2, g0.size());
    for (std::size_t d = 1; d / 2 < 2 * n; d *= 2) ds.push_back(d);
    return Apsp(std::move(g0), std::move(rhohat), std::move(ds), false);
  }

  void apply(std::size_t t, const Req& r) {
    for (auto& lvl : levels_) slide(lvl, t);
    if (!r.is_update()) return;
    const auto u = static_cast<std::size_t>(r.payload.u);
    const auto v = static_cast<std::size_t>(r.payload.v);
    const auto e = static_cast<std::size_t>(u) * g_.size() + v;
    for (auto& lvl : levels_)
      if (lvl.in_p[e]) drop_p_counters(lvl, e);
    const bool present = g_.flip(u, v, r.payload.w);
    const auto eid = static_cast<std::int32_t>(e);
    for (auto& lvl : levels_) {
      if (lvl.in_p[e]) {
        add_p_counters(lvl, e);
      } else {
        if (present)
          lvl.f_set.insert(eid);
        else
          lvl.f_set.erase(eid);
      }
    }
  }

  [[nodiscard]] std::int64_t query(std::size_t t, std::size_t u, std::size_t v) {
    const std::size_t n = g_.size();
    if (u >= n || v >= n)
      throw std::out_of_range("apsp: queried vertex out of range");
    stats_ = Stats{};
    if (u == v) return 0;
    for (auto& lvl : levels_) {
      if (lvl.violations != 0 || lvl.w_mismatch != 0) continue;
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
    return dijkstra_full(g_, u, v);
  }

  [[nodiscard]] const Stats& stats() const { return stats_; }
  [[nodiscard]] const WeightedDiGraph& graph() const { return g_; }
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
    std::vector<std::int64_t> expected_w;  // tabulated weight of in-P edges
    std::set<std::int32_t> f_set;
    std::size_t violations{0};   // P edges absent from E
    std::size_t w_mismatch{0};   // P edges present with the wrong weight
  };

  // Presence and weight bookkeeping for an edge while it belongs to P.
  void add_p_counters(Level& lvl, std::size_t e) {
    const std::size_t n = g_.size();
    const std::size_t u = e / n, v = e % n;
    if (!g_.has_edge(u, v))
      ++lvl.violations;
    else if (g_.weight(u, v) != lvl.expected_w[e])
      ++lvl.w_mismatch;
  }
  void drop_p_counters(Level& lvl, std::size_t e) {
    const std::size_t n = g_.size();
    const std::size_t u = e / n, v = e % n;
    if (!g_.has_edge(u, v))
      --lvl.violations;
    else if (g_.weight(u, v) != lvl.expected_w[e])
      --lvl.w_mismatch;
  }

  void slide(Level& lvl, std::size_t t) {
    if (t >= lvl.tab.enter.size()) return;  // past the prediction horizon
    for (std::size_t i = 0; i < lvl.tab.enter[t].size(); ++i) {
      const auto e = static_cast<std::size_t>(lvl.tab.enter[t][i]);
      lvl.in_p[e] = 1;
      lvl.expected_w[e] = lvl.tab.enter_w[t][i];
      add_p_counters(lvl, e);
      if (g_.has_edge(e / g_.size(), e % g_.size()))
        lvl.f_set.erase(static_cast<std::int32_t>(e));
    }
    for (auto eid : lvl.tab.leave[t]) {
      const auto e = static_cast<std::size_t>(eid);
      drop_p_counters(lvl, e);
      lvl.in_p[e] = 0;
      if (g_.has_edge(e / g_.size(), e % g_.size())) lvl.f_set.insert(eid);
    }
  }

  /// H_t on V(F_t) + {u, v}: induced current edges, shortcut (a, b) of weight
  /// D(a, b, t) when finite, the minimum when both exist. Dijkstra from u.
  std::int64_t promise_query(const Level& lvl, std::size_t t, std::size_t u,
                             std::size_t v) {
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
    std::vector<std::int64_t> adj(m * m, kInf);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const auto a = static_cast<std::size_t>(verts[i]);
        const auto b = static_cast<std::size_t>(verts[j]);
        std::int64_t w = kInf;
        if (g_.has_edge(a, b)) w = g_.weight(a, b);
        w = std::min(w, lvl.tab.dist_at(t, idx[a], idx[b]));
        adj[i * m + j] = w;
      }

    std::size_t src = 0, dst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (verts[i] == static_cast<std::int32_t>(u)) src = i;
      if (verts[i] == static_cast<std::int32_t>(v)) dst = i;
    }
    return dijkstra_dense(adj, m, src)[dst];
  }

  WeightedDiGraph g_;
  Seq rhohat_;
  bool promise_mode_;
  std::vector<Level> levels_;
  Stats stats_;
};

}  // namespace dynpred::apsp

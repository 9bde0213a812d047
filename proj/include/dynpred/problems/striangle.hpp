#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "dynpred/core/list_prediction.hpp"
#include "dynpred/core/request.hpp"
#include "dynpred/core/simulate.hpp"
#include "dynpred/core/symdiff.hpp"
#include "dynpred/graph/flip_graph.hpp"

namespace dynpred::striangle {

/// Payload of a #s-triangle request: an unordered edge for flips, (-1,-1)
/// for the parameterless count query. Vertex s is index 0 by convention.
struct Payload {
  std::int32_t u{-1};
  std::int32_t v{-1};
  friend auto operator<=>(const Payload&, const Payload&) = default;
};

using Req = Request<Payload>;
using Seq = RequestSequence<Payload>;

inline Req flip_request(std::int32_t u, std::int32_t v) {
  if (u == v) throw std::invalid_argument("striangle: self-loop flip");
  if (u > v) std::swap(u, v);
  return Req{RequestKind::update, Payload{u, v}};
}

inline Req query_request() { return Req{RequestKind::query, Payload{}}; }

/// |{ {a,b} : (s,a), (s,b), (a,b) in E }|, by scanning pairs of neighbors
/// of s. The brute-force oracle for everything in this header.
inline std::int64_t count_striangles(const FlipGraph& g, std::size_t s) {
  const auto nbr = g.neighbors(s);
  std::int64_t c = 0;
  for (std::size_t i = 0; i < nbr.size(); ++i)
    for (std::size_t j = i + 1; j < nbr.size(); ++j)
      if (g.has_edge(nbr[i], nbr[j])) ++c;
  return c;
}

/// Sensitivity of u: the change a flip of (s,u) would cause, i.e. the number
/// of v outside {s,u} with both (u,v) and (v,s) present.
inline std::int64_t sensitivity(const FlipGraph& g, std::size_t s, std::size_t u) {
  std::int64_t m = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (v == s || v == u) continue;
    if (g.has_edge(u, v) && g.has_edge(v, s)) ++m;
  }
  return m;
}

/// Prediction-free baseline: O(n) per update, O(1) per query.
class Baseline {
 public:
  Baseline(FlipGraph g, std::size_t s)
      : g_(std::move(g)), s_(s), count_(count_striangles(g_, s_)) {}

  void apply(const Req& r) {
    if (!r.is_update()) return;
    const auto u = static_cast<std::size_t>(r.payload.u);
    const auto v = static_cast<std::size_t>(r.payload.v);
    const bool inserted = g_.flip(u, v);
    const int b = inserted ? +1 : -1;
    if (u != s_ && v != s_) {
      if (g_.has_edge(s_, u) && g_.has_edge(s_, v)) count_ += b;
    } else {
      const std::size_t x = (u == s_) ? v : u;
      count_ += b * sensitivity(g_, s_, x);
    }
  }

  [[nodiscard]] std::int64_t count() const { return count_; }
  [[nodiscard]] const FlipGraph& graph() const { return g_; }

 private:
  FlipGraph g_;
  std::size_t s_;
  std::int64_t count_;
};

/// Per-vertex change lists of the predicted sensitivities; lookup(v, t)
/// returns the value at the largest change point <= t. Ties at equal t
/// resolve to the later entry written.
class SensitivityTimeline {
 public:
  explicit SensitivityTimeline(std::size_t n) : lists_(n) {}

  void record(std::size_t v, std::size_t t, std::int64_t value) {
    lists_[v].emplace_back(t, value);
  }

  [[nodiscard]] std::int64_t lookup(std::size_t v, std::size_t t) const {
    const auto& lst = lists_[v];
    auto it = std::upper_bound(
        lst.begin(), lst.end(), t,
        [](std::size_t lhs, const auto& e) { return lhs < e.first; });
    if (it == lst.begin()) return 0;
    return std::prev(it)->second;
  }

  [[nodiscard]] const std::vector<std::pair<std::size_t, std::int64_t>>& entries(
      std::size_t v) const {
    return lists_[v];
  }

 private:
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> lists_;
};

namespace detail {

/// Shared preprocessing walk over the predicted sequence: sensitivity change
/// lists and, when asked, per-step predicted counts.
inline SensitivityTimeline build_timeline(const FlipGraph& g0, std::size_t s,
                                          const Seq& rhohat,
                                          std::vector<std::int64_t>* chat) {
  const std::size_t n = g0.size();
  SensitivityTimeline timeline(n);
  std::vector<std::int64_t> sens(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (v == s) continue;
    sens[v] = sensitivity(g0, s, v);
    timeline.record(v, 0, sens[v]);
  }

  Baseline predicted(g0, s);
  if (chat != nullptr) {
    chat->clear();
    chat->push_back(predicted.count());
  }
  for (std::size_t t = 1; t <= rhohat.size(); ++t) {
    const Req& r = rhohat[t - 1];
    if (r.is_update()) {
      const auto u = static_cast<std::size_t>(r.payload.u);
      const auto v = static_cast<std::size_t>(r.payload.v);
      const bool inserted = !predicted.graph().has_edge(u, v);
      const int e = inserted ? +1 : -1;
      predicted.apply(r);
      const FlipGraph& gh = predicted.graph();
      if (u == s || v == s) {
        const std::size_t x = (u == s) ? v : u;
        for (std::size_t w = 0; w < n; ++w) {
          if (w == x || w == s || !gh.has_edge(x, w)) continue;
          sens[w] += e;
          timeline.record(w, t, sens[w]);
        }
      } else {
        if (gh.has_edge(s, v)) {
          sens[u] += e;
          timeline.record(u, t, sens[u]);
        }
        if (gh.has_edge(s, u)) {
          sens[v] += e;
          timeline.record(v, t, sens[v]);
        }
      }
    }
    if (chat != nullptr) chat->push_back(predicted.count());
  }
  return timeline;
}

/// Symmetric-difference tracker specialised to edge requests: keeps the set
/// of endpoints of divergent edges.
class EdgeDiff {
 public:
  void step(const Req& actual, const Req& predicted) {
    if (actual == predicted) return;
    apply(actual, /*from_actual=*/true);
    apply(predicted, /*from_actual=*/false);
  }
  void step_actual(const Req& r) { apply(r, true); }

  [[nodiscard]] std::size_t size() const { return tracker_.size(); }
  [[nodiscard]] const std::map<std::int32_t, std::int32_t>& incidence() const {
    return incidence_;
  }

 private:
  void apply(const Req& r, bool from_actual) {
    const bool was = tracker_.count(r) != 0;
    if (from_actual)
      tracker_.step_actual(r);
    else
      tracker_.step_predicted(r);
    const bool now = tracker_.count(r) != 0;
    if (was == now || !r.is_update()) return;
    const int delta = now ? +1 : -1;
    for (auto vtx : {r.payload.u, r.payload.v}) {
      auto [it, _] = incidence_.try_emplace(vtx, 0);
      it->second += delta;
      if (it->second == 0) incidence_.erase(it);
    }
  }

  SymDiffTracker<Req> tracker_;
  std::map<std::int32_t, std::int32_t> incidence_;
};

}  // namespace detail

struct StriStats {
  std::uint64_t scans{0};      // V_D vertices visited by the last update
  std::uint64_t pair_scans{0};  // V_D pairs visited by the last query
  std::size_t diff_size{0};    // |D_t|
};

/// Query-optimized algorithm: updates correct the running count through the
/// divergence set, queries return it directly.
class Qopt {
 public:
  Qopt(FlipGraph g0, std::size_t s, Seq rhohat)
      : s_(s),
        g_(g0),
        ghat_(g0),
        rhohat_(std::move(rhohat)),
        timeline_(detail::build_timeline(g0, s, rhohat_, nullptr)),
        count_(count_striangles(g0, s)) {}

  /// Process the request at 1-based step t. Updates adjust the count;
  /// queries leave all state untouched except the prediction replay.
  void apply(std::size_t t, const Req& actual) {
    const Req predicted = predicted_at(t);
    if (predicted.is_update())
      ghat_.flip(static_cast<std::size_t>(predicted.payload.u),
                 static_cast<std::size_t>(predicted.payload.v));
    diff_.step(actual, predicted);
    stats_.scans = 0;
    stats_.diff_size = diff_.size();
    if (!actual.is_update()) return;

    const auto u = static_cast<std::size_t>(actual.payload.u);
    const auto v = static_cast<std::size_t>(actual.payload.v);
    const bool inserted = g_.flip(u, v);
    const int b = inserted ? +1 : -1;
    if (u != s_ && v != s_) {
      if (g_.has_edge(s_, u) && g_.has_edge(s_, v)) count_ += b;
      return;
    }
    const std::size_t x = (u == s_) ? v : u;
    std::int64_t sensediff = 0;
    for (const auto& [w, _] : diff_.incidence()) {
      if (w == static_cast<std::int32_t>(x) || w == static_cast<std::int32_t>(s_))
        continue;
      const auto wv = static_cast<std::size_t>(w);
      const bool path_g = g_.has_edge(x, wv) && g_.has_edge(s_, wv);
      const bool path_ghat = ghat_.has_edge(x, wv) && ghat_.has_edge(s_, wv);
      if (path_g && !path_ghat) ++sensediff;
      if (path_ghat && !path_g) --sensediff;
      ++stats_.scans;
    }
    count_ += b * (timeline_.lookup(x, t) + sensediff);
  }

  [[nodiscard]] std::int64_t query() const { return count_; }
  [[nodiscard]] const StriStats& stats() const { return stats_; }
  [[nodiscard]] const FlipGraph& graph() const { return g_; }

 private:
  Req predicted_at(std::size_t t) const {
    return t <= rhohat_.size() ? rhohat_[t - 1] : query_request();
  }

  std::size_t s_;
  FlipGraph g_;
  FlipGraph ghat_;
  Seq rhohat_;
  SensitivityTimeline timeline_;
  std::int64_t count_;
  detail::EdgeDiff diff_;
  StriStats stats_;
};

/// Update-optimized algorithm: O(1) updates, queries correct the
/// precomputed predicted count over pairs of divergent endpoints.
class Uopt {
 public:
  Uopt(FlipGraph g0, std::size_t s, Seq rhohat)
      : s_(s),
        g_(g0),
        ghat_(g0),
        rhohat_(std::move(rhohat)),
        timeline_(detail::build_timeline(g0, s, rhohat_, &chat_)) {}

  void apply(std::size_t t, const Req& actual) {
    const Req predicted = predicted_at(t);
    if (predicted.is_update())
      ghat_.flip(static_cast<std::size_t>(predicted.payload.u),
                 static_cast<std::size_t>(predicted.payload.v));
    diff_.step(actual, predicted);
    stats_.diff_size = diff_.size();
    if (actual.is_update())
      g_.flip(static_cast<std::size_t>(actual.payload.u),
              static_cast<std::size_t>(actual.payload.v));
  }

  [[nodiscard]] std::int64_t query(std::size_t t) {
    stats_.pair_scans = 0;
    std::vector<std::size_t> vd;
    for (const auto& [w, _] : diff_.incidence())
      if (w != static_cast<std::int32_t>(s_)) vd.push_back(static_cast<std::size_t>(w));

    // cdiff accumulates half-units over ordered pairs; kept doubled in an
    // integer and halved at the end.
    std::int64_t cdiff2 = 0;
    for (std::size_t i = 0; i < vd.size(); ++i) {
      const std::size_t vi = vd[i];
      std::int64_t sensediff = 0;
      for (std::size_t j = 0; j < vd.size(); ++j) {
        if (j == i) continue;
        const std::size_t vj = vd[j];
        const bool tri_g =
            g_.has_edge(s_, vj) && g_.has_edge(vj, vi) && g_.has_edge(vi, s_);
        const bool tri_ghat = ghat_.has_edge(s_, vj) && ghat_.has_edge(vj, vi) &&
                              ghat_.has_edge(vi, s_);
        if (tri_g && !tri_ghat) cdiff2 += 1;
        if (tri_ghat && !tri_g) cdiff2 -= 1;
        if (ghat_.has_edge(s_, vj) && ghat_.has_edge(vj, vi)) --sensediff;
        ++stats_.pair_scans;
      }
      int b = 0;
      if (g_.has_edge(s_, vi) && !ghat_.has_edge(s_, vi)) b = +1;
      if (ghat_.has_edge(s_, vi) && !g_.has_edge(s_, vi)) b = -1;
      cdiff2 += 2 * b * (timeline_.lookup(vi, t) + sensediff);
    }
    return chat_[std::min(t, chat_.size() - 1)] + cdiff2 / 2;
  }

  [[nodiscard]] const StriStats& stats() const { return stats_; }
  [[nodiscard]] const FlipGraph& graph() const { return g_; }
  [[nodiscard]] const FlipGraph& predicted_graph() const { return ghat_; }
  [[nodiscard]] std::int64_t predicted_count(std::size_t t) const {
    return chat_[std::min(t, chat_.size() - 1)];
  }

 private:
  Req predicted_at(std::size_t t) const {
    return t <= rhohat_.size() ? rhohat_[t - 1] : query_request();
  }

  std::size_t s_;
  FlipGraph g_;
  FlipGraph ghat_;
  Seq rhohat_;
  std::vector<std::int64_t> chat_;
  SensitivityTimeline timeline_;
  detail::EdgeDiff diff_;
  StriStats stats_;
};

/// List-prediction-guided baseline used by the parallel-simulation
/// scheduler: always correct, pays a full recount whenever the realized
/// request misses its predicted slot. Work is charged in integer units via
/// the resumable interface.
class ListBaseline final : public ResumableAlgorithm<Payload, std::int64_t> {
 public:
  ListBaseline(FlipGraph g0, std::size_t s, ListPrediction<Req> lp)
      : s_(s), g_(std::move(g0)), lp_(std::move(lp)) {
    debt_ = static_cast<std::uint64_t>(g_.size()) * g_.size();  // initial count
  }

  void feed(const Req& r) override { buffer_.push_back(r); }

  bool step_preprocess(std::uint64_t budget) override {
    ensure_scheduled();
    while (budget > 0 && !caught_up()) {
      const std::uint64_t pay = std::min(budget, debt_);
      debt_ -= pay;
      budget -= pay;
      work_ += pay;
      if (debt_ == 0) {
        commit();
        ensure_scheduled();
      }
    }
    return caught_up();
  }

  bool answer_ready(std::size_t t) const override { return answers_.count(t) != 0; }
  std::int64_t answer(std::size_t t) const override { return answers_.at(t); }
  std::uint64_t work_spent() const override { return work_; }
  std::size_t completed() const override { return processed_; }

 private:
  enum class Phase { count, index, run };

  bool caught_up() const {
    return debt_ == 0 && phase_ == Phase::run && !pending_effect_ &&
           processed_ == buffer_.size();
  }

  void ensure_scheduled() {
    if (debt_ > 0) return;
    if (phase_ == Phase::run && !pending_effect_ && processed_ < buffer_.size()) {
      debt_ = request_cost(buffer_[processed_]);
      pending_effect_ = true;
    }
  }

  // Called whenever the current atomic action is fully paid for; applies its
  // effect and sets up the next action's debt.
  void commit() {
    switch (phase_) {
      case Phase::count:
        count_ = count_striangles(g_, s_);
        phase_ = Phase::index;
        next_slot_ = 0;
        advance_index();
        break;
      case Phase::index:
        ++next_slot_;
        advance_index();
        break;
      case Phase::run:
        if (pending_effect_) {
          run_request(buffer_[processed_]);
          ++processed_;
          pending_effect_ = false;
        }
        break;
    }
  }

  void advance_index() {
    // Slots with one candidate need no index; charging starts at size 2.
    while (next_slot_ < lp_.slots.size() && lp_.slots[next_slot_].size() <= 1)
      ++next_slot_;
    if (next_slot_ < lp_.slots.size()) {
      debt_ = lp_.slots[next_slot_].size() - 1;
    } else {
      phase_ = Phase::run;
    }
  }

  std::uint64_t request_cost(const Req& r) const {
    const std::size_t t = processed_ + 1;
    const std::size_t n = g_.size();
    std::uint64_t cost = 0;
    const bool in_slot = t <= lp_.slots.size() && lp_.contains(t, r);
    if (t <= lp_.slots.size() && lp_.slots[t - 1].size() > 1) cost += 1;  // set lookup
    if (!in_slot) cost += static_cast<std::uint64_t>(n) * n;  // recount penalty
    if (r.is_update() && in_slot &&
        (r.payload.u == static_cast<std::int32_t>(s_) ||
         r.payload.v == static_cast<std::int32_t>(s_)))
      cost += n;  // sensitivity scan for flips at s
    cost += 1;    // apply / read
    return cost;
  }

  void run_request(const Req& r) {
    const std::size_t t = processed_ + 1;
    if (r.is_update()) {
      const auto u = static_cast<std::size_t>(r.payload.u);
      const auto v = static_cast<std::size_t>(r.payload.v);
      const bool in_slot = t <= lp_.slots.size() && lp_.contains(t, r);
      if (in_slot && u != s_ && v != s_) {
        const bool inserted = g_.flip(u, v);
        if (g_.has_edge(s_, u) && g_.has_edge(s_, v)) count_ += inserted ? +1 : -1;
      } else if (in_slot) {
        const std::size_t x = (u == s_) ? v : u;
        const bool inserted = g_.flip(u, v);
        count_ += (inserted ? +1 : -1) * sensitivity(g_, s_, x);
      } else {
        g_.flip(u, v);
        count_ = count_striangles(g_, s_);
      }
    } else {
      answers_[t] = count_;
    }
  }

  std::size_t s_;
  FlipGraph g_;
  ListPrediction<Req> lp_;
  std::vector<Req> buffer_;
  std::map<std::size_t, std::int64_t> answers_;
  std::int64_t count_{0};
  std::uint64_t work_{0};
  std::uint64_t debt_{0};
  std::size_t processed_{0};
  std::size_t next_slot_{0};
  Phase phase_{Phase::count};
  bool pending_effect_{false};
};

}  // namespace dynpred::striangle

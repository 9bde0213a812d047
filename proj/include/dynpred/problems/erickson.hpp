#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "dynpred/core/request.hpp"
#include "dynpred/detail/addressable_heap.hpp"

namespace dynpred::erickson {

/// Row/column increment or a maximum query.
struct Payload {
  enum class Axis : std::int8_t { none = 0, row = 1, col = 2 };
  Axis axis{Axis::none};
  std::int32_t index{-1};
  friend auto operator<=>(const Payload&, const Payload&) = default;
};

using Req = Request<Payload>;
using Seq = RequestSequence<Payload>;

inline Req row_request(std::int32_t i) {
  return Req{RequestKind::update, Payload{Payload::Axis::row, i}};
}
inline Req col_request(std::int32_t j) {
  return Req{RequestKind::update, Payload{Payload::Axis::col, j}};
}
inline Req query_request() { return Req{RequestKind::query, Payload{}}; }

using Matrix = std::vector<std::vector<std::int64_t>>;  // n x n

/// Base state: initial matrix plus per-row/column increment counters, so
/// M_t[i][j] = M0[i][j] + I_R[i] + I_C[j].
struct Base {
  Matrix m0;
  std::vector<std::int64_t> inc_row;
  std::vector<std::int64_t> inc_col;

  explicit Base(Matrix m) : m0(std::move(m)) {
    inc_row.assign(m0.size(), 0);
    inc_col.assign(m0.size(), 0);
  }

  [[nodiscard]] std::size_t size() const { return m0.size(); }
  [[nodiscard]] std::int64_t entry(std::size_t i, std::size_t j) const {
    return m0[i][j] + inc_row[i] + inc_col[j];
  }

  void apply(const Req& r) {
    if (!r.is_update()) return;
    const auto idx = static_cast<std::size_t>(r.payload.index);
    if (idx >= size()) throw std::out_of_range("erickson: index out of range");
    if (r.payload.axis == Payload::Axis::row)
      ++inc_row[idx];
    else
      ++inc_col[idx];
  }
};

struct MaxResult {
  std::int64_t value;
  std::size_t i, j;
};

/// Full scan, ties broken by smallest (i, j) lexicographically.
inline MaxResult erickson_oracle(const Base& base) {
  MaxResult best{base.entry(0, 0), 0, 0};
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j)
      if (base.entry(i, j) > best.value) best = {base.entry(i, j), i, j};
  return best;
}

enum class HeapMode { full, lazy };

struct Stats {
  std::uint64_t corrected_keys{0};
  std::uint64_t heap_ops{0};
  std::uint64_t pair_scans{0};
  std::optional<std::size_t> dstar;
  std::size_t err_rows{0}, err_cols{0};
};

namespace detail_e {

/// Signed divergence ledger for one axis: membership iff the per-line
/// counter differs between the actual and the predicted replay.
class DiffLedger {
 public:
  explicit DiffLedger(std::size_t n) : diff_(n, 0) {}

  void bump(std::size_t idx, std::int64_t delta) {
    const bool was = diff_[idx] != 0;
    diff_[idx] += delta;
    const bool now = diff_[idx] != 0;
    if (!was && now) nonzero_.insert(static_cast<std::int32_t>(idx));
    if (was && !now) nonzero_.erase(static_cast<std::int32_t>(idx));
  }

  [[nodiscard]] std::int64_t diff(std::size_t idx) const { return diff_[idx]; }
  [[nodiscard]] const std::set<std::int32_t>& members() const { return nonzero_; }
  [[nodiscard]] std::size_t size() const { return nonzero_.size(); }

 private:
  std::vector<std::int64_t> diff_;
  std::set<std::int32_t> nonzero_;
};

/// Predicted replay prefix counters: rhat[t][i] increments of row i after t
/// predicted steps (flat layout).
struct PredictedCounts {
  std::size_t n{0};
  std::vector<std::int64_t> rows;  // (T+1) x n
  std::vector<std::int64_t> cols;

  PredictedCounts(std::size_t n_, const Seq& rhohat) : n(n_) {
    const std::size_t T = rhohat.size();
    rows.assign((T + 1) * n, 0);
    cols.assign((T + 1) * n, 0);
    for (std::size_t t = 1; t <= T; ++t) {
      std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>((t - 1) * n), n,
                  rows.begin() + static_cast<std::ptrdiff_t>(t * n));
      std::copy_n(cols.begin() + static_cast<std::ptrdiff_t>((t - 1) * n), n,
                  cols.begin() + static_cast<std::ptrdiff_t>(t * n));
      const Req& r = rhohat[t - 1];
      if (!r.is_update()) continue;
      const auto idx = static_cast<std::size_t>(r.payload.index);
      if (r.payload.axis == Payload::Axis::row)
        ++rows[t * n + idx];
      else
        ++cols[t * n + idx];
    }
  }

  [[nodiscard]] std::int64_t row(std::size_t t, std::size_t i) const {
    return rows[t * n + i];
  }
  [[nodiscard]] std::int64_t col(std::size_t t, std::size_t j) const {
    return cols[t * n + j];
  }
};

}  // namespace detail_e

/// Shared machinery of both variants: the actual/predicted counters, error
/// ledgers, and the per-step heap snapshots of the predicted matrix.
class SolverCore {
 public:
  SolverCore(Matrix m0, Seq rhohat, HeapMode mode)
      : base_(std::move(m0)),
        rhohat_(std::move(rhohat)),
        mode_(mode),
        pred_(base_.size(), rhohat_),
        row_err_(base_.size()),
        col_err_(base_.size()) {
    if (mode_ == HeapMode::full) {
      const std::size_t T = rhohat_.size();
      row_heaps_.resize(T + 1);
      col_heaps_.resize(T + 1);
      for (std::size_t t = 1; t <= T; ++t) {
        row_heaps_[t].reserve(base_.size());
        col_heaps_[t].reserve(base_.size());
        std::vector<std::int64_t> vals(base_.size());
        for (std::size_t i = 0; i < base_.size(); ++i) {
          for (std::size_t j = 0; j < base_.size(); ++j) vals[j] = predicted_entry(t, i, j);
          row_heaps_[t].emplace_back(vals);
        }
        for (std::size_t j = 0; j < base_.size(); ++j) {
          for (std::size_t i = 0; i < base_.size(); ++i) vals[i] = predicted_entry(t, i, j);
          col_heaps_[t].emplace_back(vals);
        }
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return base_.size(); }
  [[nodiscard]] const Base& base() const { return base_; }

  [[nodiscard]] std::int64_t predicted_entry(std::size_t t, std::size_t i,
                                             std::size_t j) const {
    return base_.m0[i][j] + pred_.row(t, i) + pred_.col(t, j);
  }

  [[nodiscard]] std::int64_t row_diff(std::size_t i) const { return row_err_.diff(i); }
  [[nodiscard]] std::int64_t col_diff(std::size_t j) const { return col_err_.diff(j); }
  [[nodiscard]] const detail_e::DiffLedger& row_err() const { return row_err_; }
  [[nodiscard]] const detail_e::DiffLedger& col_err() const { return col_err_; }
  [[nodiscard]] const detail_e::PredictedCounts& predicted() const { return pred_; }

  /// Advance actual and predicted counters through step t.
  void ingest(std::size_t t, const Req& actual) {
    if (actual.is_update()) {
      base_.apply(actual);
      const auto idx = static_cast<std::size_t>(actual.payload.index);
      if (actual.payload.axis == Payload::Axis::row)
        row_err_.bump(idx, +1);
      else
        col_err_.bump(idx, +1);
    }
    if (t <= rhohat_.size() && rhohat_[t - 1].is_update()) {
      const Req& p = rhohat_[t - 1];
      const auto idx = static_cast<std::size_t>(p.payload.index);
      if (p.payload.axis == Payload::Axis::row)
        row_err_.bump(idx, -1);
      else
        col_err_.bump(idx, -1);
    }
  }

  /// Heap over the predicted row i at time t (full mode: the stored
  /// snapshot; lazy mode: rebuilt in O(n), excluded from the counters).
  dynpred::detail::AddressableMaxHeap& row_heap(std::size_t t, std::size_t i) {
    if (mode_ == HeapMode::full) return row_heaps_[t][i];
    std::vector<std::int64_t> vals(size());
    for (std::size_t j = 0; j < size(); ++j) vals[j] = predicted_entry(t, i, j);
    scratch_.build(vals);
    return scratch_;
  }
  dynpred::detail::AddressableMaxHeap& col_heap(std::size_t t, std::size_t j) {
    if (mode_ == HeapMode::full) return col_heaps_[t][j];
    std::vector<std::int64_t> vals(size());
    for (std::size_t i = 0; i < size(); ++i) vals[i] = predicted_entry(t, i, j);
    scratch2_.build(vals);
    return scratch2_;
  }

  [[nodiscard]] std::size_t horizon() const { return rhohat_.size(); }
  [[nodiscard]] const Seq& prediction() const { return rhohat_; }

 private:
  Base base_;
  Seq rhohat_;
  HeapMode mode_;
  detail_e::PredictedCounts pred_;
  detail_e::DiffLedger row_err_, col_err_;
  std::vector<std::vector<dynpred::detail::AddressableMaxHeap>> row_heaps_, col_heaps_;
  dynpred::detail::AddressableMaxHeap scratch_, scratch2_;
};

/// Query-optimized variant: the maximum is carried across updates with at
/// most |E_C| (resp. |E_R|) heap-key corrections per update.
class Qopt {
 public:
  Qopt(Matrix m0, Seq rhohat, HeapMode mode = HeapMode::full)
      : core_(std::move(m0), std::move(rhohat), mode) {
    const auto best = erickson_oracle(core_.base());
    max_ = best.value;
    argmax_i_ = best.i;
    argmax_j_ = best.j;
  }

  void apply(std::size_t t, const Req& r) {
    stats_ = Stats{};
    core_.ingest(t, r);
    stats_.err_rows = core_.row_err().size();
    stats_.err_cols = core_.col_err().size();
    if (!r.is_update() || t > core_.horizon()) {
      if (r.is_update() && t > core_.horizon()) refresh_full();
      return;
    }
    const auto idx = static_cast<std::size_t>(r.payload.index);
    if (r.payload.axis == Payload::Axis::row) {
      if (idx == argmax_i_) {
        ++max_;
        return;
      }
      auto& heap = core_.row_heap(t, idx);
      for (auto j : core_.col_err().members()) {
        heap.update_key(static_cast<std::size_t>(j),
                        core_.predicted_entry(t, idx, static_cast<std::size_t>(j)) +
                            core_.col_diff(static_cast<std::size_t>(j)));
        ++stats_.corrected_keys;
        ++stats_.heap_ops;
      }
      const auto [c0, j0] = heap.top();
      ++stats_.heap_ops;
      const std::int64_t c1 = c0 + core_.row_diff(idx);
      if (c1 > max_) {
        max_ = c1;
        argmax_i_ = idx;
        argmax_j_ = j0;
      }
    } else {
      if (idx == argmax_j_) {
        ++max_;
        return;
      }
      auto& heap = core_.col_heap(t, idx);
      for (auto i : core_.row_err().members()) {
        heap.update_key(static_cast<std::size_t>(i),
                        core_.predicted_entry(t, static_cast<std::size_t>(i), idx) +
                            core_.row_diff(static_cast<std::size_t>(i)));
        ++stats_.corrected_keys;
        ++stats_.heap_ops;
      }
      const auto [c0, i0] = heap.top();
      ++stats_.heap_ops;
      const std::int64_t c1 = c0 + core_.col_diff(idx);
      if (c1 > max_) {
        max_ = c1;
        argmax_i_ = i0;
        argmax_j_ = idx;
      }
    }
  }

  [[nodiscard]] std::int64_t query() const { return max_; }
  [[nodiscard]] const Stats& stats() const { return stats_; }
  [[nodiscard]] const Base& base() const { return core_.base(); }

 private:
  // Past the predicted horizon there is nothing precomputed left; fall back
  // to a full rescan to stay correct.
  void refresh_full() {
    const auto best = erickson_oracle(core_.base());
    max_ = best.value;
    argmax_i_ = best.i;
    argmax_j_ = best.j;
  }

  SolverCore core_;
  std::int64_t max_{0};
  std::size_t argmax_i_{0}, argmax_j_{0};
  Stats stats_;
};

inline constexpr std::int64_t kNoPartialMax = std::numeric_limits<std::int64_t>::min();

/// Update-optimized variant: per doubling level, window-shifted divergence
/// arrays pick the cheapest usable level d*; queries fold the permanent-part
/// maximum with heap corrections over non-permanent lines.
class Uopt {
 public:
  Uopt(Matrix m0, Seq rhohat, HeapMode mode = HeapMode::full)
      : core_(std::move(m0), std::move(rhohat), mode) {
    // Doubling levels reach 2n so certified delays near n still land on a
    // level before the full-scan fallback.
    const std::size_t n = core_.size();
    std::vector<std::size_t> ds{0};
    for (std::size_t d = 1; d / 2 < 2 * std::max<std::size_t>(2, n); d *= 2)
      ds.push_back(d);
    const std::size_t T = core_.horizon();
    for (auto d : ds) {
      Level lvl;
      lvl.d = d;
      lvl.dr_minus.assign(n, 0);
      lvl.dc_minus.assign(n, 0);
      lvl.dr_plus.resize(n);
      lvl.dc_plus.resize(n);
      const std::size_t t0 = std::min(T, d);
      for (std::size_t i = 0; i < n; ++i) {
        lvl.dr_plus[i] = core_.predicted().row(t0, i);
        lvl.dc_plus[i] = core_.predicted().col(t0, i);
      }
      lvl.bad_rows = lvl.bad_cols = 0;  // B sets start at [n]
      lvl.gt_rows = lvl.gt_cols = 0;    // strict-positive sets start empty
      build_level_tables(lvl);
      levels_.push_back(std::move(lvl));
    }
  }

  void apply(std::size_t t, const Req& r) {
    stats_ = Stats{};
    // Window shifts: predicted step t-d enters the lower bound, t+d the
    // upper one.
    for (auto& lvl : levels_) {
      if (t >= lvl.d + 1) shift_minus(lvl, t - lvl.d);
      if (t + lvl.d <= core_.horizon()) shift_plus(lvl, t + lvl.d);
    }
    core_.ingest(t, r);
    stats_.err_rows = core_.row_err().size();
    stats_.err_cols = core_.col_err().size();
    if (!r.is_update()) return;
    const auto idx = static_cast<std::size_t>(r.payload.index);
    const bool is_row = r.payload.axis == Payload::Axis::row;
    for (auto& lvl : levels_) {
      if (is_row) {
        adjust(lvl.dr_minus[idx], +1, lvl.bad_rows, lvl.gt_rows, lvl.dr_plus[idx],
               true);
        adjust(lvl.dr_plus[idx], -1, lvl.bad_rows, lvl.gt_rows, lvl.dr_minus[idx],
               false);
      } else {
        adjust(lvl.dc_minus[idx], +1, lvl.bad_cols, lvl.gt_cols, lvl.dc_plus[idx],
               true);
        adjust(lvl.dc_plus[idx], -1, lvl.bad_cols, lvl.gt_cols, lvl.dc_minus[idx],
               false);
      }
    }
  }

  [[nodiscard]] std::int64_t query(std::size_t t) {
    stats_.pair_scans = 0;
    stats_.heap_ops = 0;
    const Level* chosen = nullptr;
    for (const auto& lvl : levels_)
      if (lvl.bad_rows == 0 && lvl.bad_cols == 0 && t <= core_.horizon()) {
        chosen = &lvl;
        break;
      }
    if (chosen == nullptr) {
      // No usable level: rebuild and scan.
      stats_.dstar.reset();
      stats_.pair_scans = core_.size() * core_.size();
      return erickson_oracle(core_.base()).value;
    }
    const Level& lvl = *chosen;
    stats_.dstar = lvl.d;

    std::int64_t c = lvl.partial_max[t];
    const auto& np_rows = lvl.np_rows[t];
    const auto& np_cols = lvl.np_cols[t];
    for (auto i : np_rows)
      for (auto j : np_cols) {
        auto& rh = core_.row_heap(t, static_cast<std::size_t>(i));
        rh.update_key(static_cast<std::size_t>(j),
                      core_.predicted_entry(t, static_cast<std::size_t>(i),
                                            static_cast<std::size_t>(j)) +
                          core_.col_diff(static_cast<std::size_t>(j)));
        auto& ch = core_.col_heap(t, static_cast<std::size_t>(j));
        ch.update_key(static_cast<std::size_t>(i),
                      core_.predicted_entry(t, static_cast<std::size_t>(i),
                                            static_cast<std::size_t>(j)) +
                          core_.row_diff(static_cast<std::size_t>(i)));
        ++stats_.pair_scans;
        stats_.heap_ops += 2;
      }
    for (auto i : np_rows) {
      const auto [v, _] = core_.row_heap(t, static_cast<std::size_t>(i)).top();
      ++stats_.heap_ops;
      c = std::max(c, core_.row_diff(static_cast<std::size_t>(i)) + v);
    }
    for (auto j : np_cols) {
      const auto [v, _] = core_.col_heap(t, static_cast<std::size_t>(j)).top();
      ++stats_.heap_ops;
      c = std::max(c, core_.col_diff(static_cast<std::size_t>(j)) + v);
    }
    return c;
  }

  [[nodiscard]] const Stats& stats() const { return stats_; }
  [[nodiscard]] const Base& base() const { return core_.base(); }
  [[nodiscard]] std::optional<std::size_t> current_dstar() const {
    for (const auto& lvl : levels_)
      if (lvl.bad_rows == 0 && lvl.bad_cols == 0) return lvl.d;
    return std::nullopt;
  }

 private:
  struct Level {
    std::size_t d{0};
    std::vector<std::int64_t> dr_minus, dr_plus, dc_minus, dc_plus;
    std::size_t bad_rows{0}, bad_cols{0};  // lines outside B
    std::size_t gt_rows{0}, gt_cols{0};    // lines with strictly positive lower slack
    std::vector<std::int64_t> partial_max;            // per t
    std::vector<std::vector<std::int32_t>> np_rows;   // non-permanent lines per t
    std::vector<std::vector<std::int32_t>> np_cols;
  };

  /// Permanent-line masks and the permanent-by-permanent maxima, per step.
  void build_level_tables(Level& lvl) {
    const std::size_t n = core_.size();
    const std::size_t T = core_.horizon();
    lvl.partial_max.assign(T + 1, kNoPartialMax);
    lvl.np_rows.resize(T + 1);
    lvl.np_cols.resize(T + 1);
    const auto& pred = core_.prediction();
    for (std::size_t t = 1; t <= T; ++t) {
      const std::size_t t1 = std::max<std::size_t>(1, t > lvl.d ? t - lvl.d : 1);
      const std::size_t t2 = std::min(T, t + lvl.d);
      std::vector<std::uint8_t> row_perm(n, 1), col_perm(n, 1);
      for (std::size_t tau = t1; tau <= t2; ++tau) {
        const Req& r = pred[tau - 1];
        if (!r.is_update()) continue;
        const auto idx = static_cast<std::size_t>(r.payload.index);
        if (r.payload.axis == Payload::Axis::row)
          row_perm[idx] = 0;
        else
          col_perm[idx] = 0;
      }
      for (std::size_t i = 0; i < n; ++i)
        if (!row_perm[i]) lvl.np_rows[t].push_back(static_cast<std::int32_t>(i));
      for (std::size_t j = 0; j < n; ++j)
        if (!col_perm[j]) lvl.np_cols[t].push_back(static_cast<std::int32_t>(j));
      std::int64_t best = kNoPartialMax;
      for (std::size_t i = 0; i < n; ++i) {
        if (!row_perm[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (col_perm[j]) best = std::max(best, core_.predicted_entry(t, i, j));
      }
      lvl.partial_max[t] = best;
    }
  }

  /// Membership bookkeeping for one array entry; `other` is the paired
  /// entry that decides B membership together with this one.
  void adjust(std::int64_t& entry, std::int64_t delta, std::size_t& bad,
              std::size_t& gt, std::int64_t other, bool is_minus) {
    const bool was_bad = entry < 0 || other < 0;
    const bool was_gt = is_minus ? entry > 0 : other > 0;
    entry += delta;
    const bool now_bad = entry < 0 || other < 0;
    const bool now_gt = is_minus ? entry > 0 : other > 0;
    if (was_bad != now_bad) bad += now_bad ? +1 : -1;
    if (was_gt != now_gt) gt += now_gt ? +1 : -1;
  }

  void shift_minus(Level& lvl, std::size_t tau) {
    if (tau < 1 || tau > core_.horizon()) return;
    const Req& r = core_.prediction()[tau - 1];
    if (!r.is_update()) return;
    const auto idx = static_cast<std::size_t>(r.payload.index);
    if (r.payload.axis == Payload::Axis::row)
      adjust(lvl.dr_minus[idx], -1, lvl.bad_rows, lvl.gt_rows, lvl.dr_plus[idx], true);
    else
      adjust(lvl.dc_minus[idx], -1, lvl.bad_cols, lvl.gt_cols, lvl.dc_plus[idx], true);
  }

  void shift_plus(Level& lvl, std::size_t tau) {
    if (tau < 1 || tau > core_.horizon()) return;
    const Req& r = core_.prediction()[tau - 1];
    if (!r.is_update()) return;
    const auto idx = static_cast<std::size_t>(r.payload.index);
    if (r.payload.axis == Payload::Axis::row)
      adjust(lvl.dr_plus[idx], +1, lvl.bad_rows, lvl.gt_rows, lvl.dr_minus[idx], false);
    else
      adjust(lvl.dc_plus[idx], +1, lvl.bad_cols, lvl.gt_cols, lvl.dc_minus[idx], false);
  }

  SolverCore core_;
  std::vector<Level> levels_;
  Stats stats_;
};

}  // namespace dynpred::erickson

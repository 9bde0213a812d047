#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dynpred/core/list_prediction.hpp"
#include "dynpred/core/request.hpp"

namespace dynpred {

/// Contract for an algorithm copy the parallel-simulation scheduler can
/// pause and resume. The copy receives a list prediction at construction;
/// feed() only buffers a request, all actual work happens inside
/// step_preprocess() in work-unit sized slices. Pausing between slices must
/// never change answers, and work_spent() is monotone.
template <typename P, typename Answer>
class ResumableAlgorithm {
 public:
  virtual ~ResumableAlgorithm() = default;

  virtual void feed(const Request<P>& r) = 0;

  /// Advance by roughly `budget` work units (preprocessing first, then
  /// buffered requests). Returns true when fully caught up. A zero budget
  /// must do no work; the scheduler uses it to probe for pending work.
  virtual bool step_preprocess(std::uint64_t budget) = 0;

  virtual bool answer_ready(std::size_t t) const = 0;  // t 1-based
  virtual Answer answer(std::size_t t) const = 0;
  virtual std::uint64_t work_spent() const = 0;
  virtual std::size_t completed() const = 0;
};

/// Alternating parallel simulation over copies for d in {0, 1, 2, 4, ...}.
/// The copy for the next d is spawned once some copy has spent at least T*d
/// work; a copy is paused while its work exceeds twice the work of the
/// fastest progressing copy (most completed requests per work unit). Queries
/// are answered by the fastest progressing copy that has the answer.
template <typename P, typename Answer>
class ParallelSimulation {
 public:
  using Algorithm = ResumableAlgorithm<P, Answer>;
  using Factory =
      std::function<std::unique_ptr<Algorithm>(const ListPrediction<Request<P>>&)>;

  ParallelSimulation(Factory factory, RequestSequence<P> rhohat)
      : factory_(std::move(factory)), rhohat_(std::move(rhohat)) {
    spawn(0);
  }

  /// Feed the next online request; returns the answer when it is a query.
  std::optional<Answer> push(const Request<P>& r) {
    ++t_;
    log_.push_back(r);
    for (auto& c : copies_) c.alg->feed(r);
    if (!r.is_query()) return std::nullopt;

    while (true) {
      maybe_spawn();
      const Algorithm* best = nullptr;
      for (const auto& c : copies_) {
        if (!c.alg->answer_ready(t_)) continue;
        if (best == nullptr || faster(*c.alg, *best)) best = c.alg.get();
      }
      if (best != nullptr) return best->answer(t_);
      if (!tick())
        throw std::runtime_error(
            "parallel_simulation: no copy produced an answer (incorrect factory)");
    }
  }

  [[nodiscard]] std::uint64_t total_work() const {
    std::uint64_t w = scheduler_work_;
    for (const auto& c : copies_) w += c.alg->work_spent();
    return w;
  }
  [[nodiscard]] std::uint64_t scheduler_work() const { return scheduler_work_; }
  [[nodiscard]] std::size_t copy_count() const { return copies_.size(); }
  [[nodiscard]] std::vector<std::size_t> spawned_delays() const {
    std::vector<std::size_t> ds;
    for (const auto& c : copies_) ds.push_back(c.d);
    return ds;
  }
  [[nodiscard]] std::uint64_t copy_work(std::size_t i) const {
    return copies_[i].alg->work_spent();
  }

 private:
  struct Copy {
    std::size_t d;
    std::unique_ptr<Algorithm> alg;
  };

  static bool faster(const Algorithm& a, const Algorithm& b) {
    // progress = completed / work; zero work counts as infinite progress.
    const auto wa = a.work_spent(), wb = b.work_spent();
    if (wa == 0 || wb == 0) return wa == 0 && (wb != 0 || a.completed() >= b.completed());
    return static_cast<long double>(a.completed()) * static_cast<long double>(wb) >
           static_cast<long double>(b.completed()) * static_cast<long double>(wa);
  }

  void spawn(std::size_t d) {
    const auto lp = delay_to_list(rhohat_, d);
    for (const auto& slot : lp.slots) scheduler_work_ += slot.size();
    auto alg = factory_(lp);
    for (const auto& r : log_) alg->feed(r);
    copies_.push_back(Copy{d, std::move(alg)});
  }

  void maybe_spawn() {
    const std::size_t T = rhohat_.size();
    while (true) {
      const std::size_t next_d = copies_.size() == 1 ? 1 : copies_.back().d * 2;
      if (copies_.size() > 1 && copies_.back().d >= T) return;  // ladder saturated
      std::uint64_t max_work = 0;
      for (const auto& c : copies_) max_work = std::max(max_work, c.alg->work_spent());
      if (max_work < static_cast<std::uint64_t>(T) * next_d) return;
      spawn(next_d);
    }
  }

  /// One scheduler round: every runnable copy advances by one work unit.
  /// Returns false when no copy has pending work.
  bool tick() {
    const Algorithm* fastest = nullptr;
    for (const auto& c : copies_)
      if (fastest == nullptr || faster(*c.alg, *fastest)) fastest = c.alg.get();
    const std::uint64_t envelope = 2 * std::max<std::uint64_t>(1, fastest->work_spent());

    bool advanced = false;
    Copy* least = nullptr;
    for (auto& c : copies_) {
      const bool pending = !c.alg->step_preprocess(0);
      if (!pending) continue;
      if (least == nullptr || c.alg->work_spent() < least->alg->work_spent())
        least = &c;
      if (c.alg->work_spent() > envelope && c.alg.get() != fastest) continue;  // paused
      c.alg->step_preprocess(1);
      advanced = true;
    }
    if (!advanced && least != nullptr) {
      // Everyone with pending work sits outside the envelope and the fastest
      // copy is already caught up; resume the cheapest pending copy so the
      // simulation cannot stall.
      least->alg->step_preprocess(1);
      advanced = true;
    }
    return advanced;
  }

  Factory factory_;
  RequestSequence<P> rhohat_;
  std::vector<Copy> copies_;
  std::vector<Request<P>> log_;
  std::size_t t_{0};
  std::uint64_t scheduler_work_{0};
};

}  // namespace dynpred

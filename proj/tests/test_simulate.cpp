#include <catch2/catch_amalgamated.hpp>

#include "dynpred/adversary/perturb.hpp"
#include "dynpred/core/simulate.hpp"
#include "dynpred/problems/striangle.hpp"

#include <cmath>
#include <memory>

using namespace dynpred;
using namespace dynpred::striangle;

namespace {

// Scripted workloads for the scheduler: flips avoid s so the guided
// baseline's per-request work is constant, and a handful of queries probe
// the answers.
struct Script {
  FlipGraph g0;
  Seq rhohat;
  Seq rho;
};

Script make_script(std::size_t n, std::size_t T, std::size_t dstar,
                   std::uint64_t seed) {
  Rng rng(seed);
  Script sc{FlipGraph(n), {}, {}};
  for (std::size_t v = 1; v < n; ++v)
    if (coin(rng)) sc.g0.set_edge(0, v, true);
  for (std::size_t u = 1; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) sc.g0.set_edge(u, v, true);

  for (std::size_t t = 0; t < T; ++t) {
    if (t % 8 == 7) {
      sc.rhohat.push_back(query_request());
    } else {
      const auto u = 1 + uniform_below(rng, n - 1);
      auto v = 1 + uniform_below(rng, n - 2);
      if (v >= u) ++v;
      sc.rhohat.push_back(
          flip_request(static_cast<std::int32_t>(u), static_cast<std::int32_t>(v)));
    }
  }
  auto pert = adversary::perturb(sc.rhohat, dstar, 0, rng, [n](Rng& r) {
    const auto u = 1 + uniform_below(r, n - 1);
    auto v = 1 + uniform_below(r, n - 2);
    if (v >= u) ++v;
    return flip_request(static_cast<std::int32_t>(u), static_cast<std::int32_t>(v));
  });
  sc.rho = std::move(pert.rho);
  return sc;
}

using Sim = ParallelSimulation<Payload, std::int64_t>;

Sim::Factory make_factory(const Script& sc) {
  return [&sc](const ListPrediction<Req>& lp) {
    return std::make_unique<ListBaseline>(sc.g0, 0, lp);
  };
}

/// Work of one copy driven standalone over the stream (no scheduler).
std::uint64_t standalone_work(const Script& sc, std::size_t d) {
  ListBaseline copy(sc.g0, 0, delay_to_list(sc.rhohat, d));
  for (std::size_t t = 1; t <= sc.rho.size(); ++t) {
    copy.feed(sc.rho[t - 1]);
    if (sc.rho[t - 1].is_query())
      while (!copy.step_preprocess(64))
        ;
  }
  return copy.work_spent();
}

std::uint64_t best_single_copy_work(const Script& sc) {
  std::uint64_t best = UINT64_MAX;
  for (std::size_t d = 0; d <= 2 * sc.rhohat.size(); d = d == 0 ? 1 : 2 * d)
    best = std::min(best, standalone_work(sc, d));
  return best;
}

}  // namespace

TEST_CASE("perfect prediction: copy 0 serves everything within budget") {
  const auto sc = make_script(8, 128, 0, 2001);
  Sim sim(make_factory(sc), sc.rhohat);
  striangle::Baseline oracle(sc.g0, 0);
  for (std::size_t t = 1; t <= sc.rho.size(); ++t) {
    oracle.apply(sc.rho[t - 1]);
    const auto ans = sim.push(sc.rho[t - 1]);
    if (sc.rho[t - 1].is_query()) {
      REQUIRE(ans.has_value());
      CHECK(*ans == oracle.count());
    }
  }
  // The d = 0 copy's work stays below the 2T spawn threshold, so copies for
  // d >= 2 are never spawned (d = 1 may appear right at the T boundary).
  for (auto d : sim.spawned_delays()) CHECK(d <= 1);
}

TEST_CASE("shuffled streams are answered correctly with bounded total work") {
  for (std::size_t dstar : {0ul, 2ul, 8ul}) {
    const auto sc = make_script(8, 128, dstar, 3000 + dstar);
    Sim sim(make_factory(sc), sc.rhohat);
    striangle::Baseline oracle(sc.g0, 0);
    for (std::size_t t = 1; t <= sc.rho.size(); ++t) {
      oracle.apply(sc.rho[t - 1]);
      const auto ans = sim.push(sc.rho[t - 1]);
      if (sc.rho[t - 1].is_query()) {
        REQUIRE(ans.has_value());
        CHECK(*ans == oracle.count());
      }
    }
    const auto best = best_single_copy_work(sc);
    const auto logT =
        static_cast<std::uint64_t>(std::ceil(std::log2(double(sc.rho.size()))));
    CHECK(sim.total_work() <= 4 * logT * best);
  }
}

TEST_CASE("empty stream produces no answers and spawns only the base copy") {
  const auto sc = make_script(6, 16, 0, 2002);
  Sim sim(make_factory(sc), sc.rhohat);
  CHECK(sim.copy_count() == 1);
  CHECK(sim.total_work() >= sc.rhohat.size());  // list construction charge
}

TEST_CASE("an unanswerable query raises a protocol error") {
  // A factory whose copies never produce answers.
  class Mute final : public ResumableAlgorithm<Payload, std::int64_t> {
   public:
    void feed(const Req&) override {}
    bool step_preprocess(std::uint64_t budget) override {
      work_ += budget;
      return true;  // always claims to be caught up, never has answers
    }
    bool answer_ready(std::size_t) const override { return false; }
    std::int64_t answer(std::size_t) const override { return 0; }
    std::uint64_t work_spent() const override { return work_; }
    std::size_t completed() const override { return 0; }

   private:
    std::uint64_t work_{0};
  };

  Seq rhohat{query_request()};
  Sim sim([](const ListPrediction<Req>&) { return std::make_unique<Mute>(); },
          rhohat);
  CHECK_THROWS_AS(sim.push(query_request()), std::runtime_error);
}

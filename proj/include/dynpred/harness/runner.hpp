#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynpred/harness/generators.hpp"

namespace dynpred::harness {

enum class OracleMode { every_step, queries_only, off };
enum class Variant { baseline, qopt, uopt, promise, agnostic };

inline std::optional<Variant> variant_from_name(const std::string& s) {
  if (s == "baseline") return Variant::baseline;
  if (s == "qopt") return Variant::qopt;
  if (s == "uopt") return Variant::uopt;
  if (s == "promise") return Variant::promise;
  if (s == "agnostic") return Variant::agnostic;
  return std::nullopt;
}

struct StepRow {
  std::size_t t{0};
  char kind{'U'};
  std::string answer;  // empty when the step produced none
  std::string oracle;
  bool ok{true};
  std::uint64_t probes{0};
  std::uint64_t heap_ops{0};
  std::optional<std::size_t> dstar;
  std::size_t errset{0};
};

struct RunReport {
  std::vector<StepRow> rows;
  bool all_ok{true};
  std::uint64_t total_probes{0};
  std::uint64_t total_heap_ops{0};
  std::size_t peak_errset{0};
  double wall_seconds{0};

  void add(StepRow row) {
    all_ok = all_ok && row.ok;
    total_probes += row.probes;
    total_heap_ops += row.heap_ops;
    peak_errset = std::max(peak_errset, row.errset);
    rows.push_back(std::move(row));
  }
};

inline void write_csv(std::ostream& os, const RunReport& report) {
  os << "t,kind,answer,oracle,probes,heap_ops,dstar,errset_size\n";
  for (const auto& r : report.rows) {
    os << r.t << ',' << r.kind << ',' << r.answer << ',' << r.oracle << ','
       << r.probes << ',' << r.heap_ops << ',';
    if (r.dstar) os << *r.dstar;
    os << ',' << r.errset << '\n';
  }
}

inline void write_json(std::ostream& os, const RunReport& report) {
  nlohmann::json j;
  j["all_ok"] = report.all_ok;
  j["total_probes"] = report.total_probes;
  j["total_heap_ops"] = report.total_heap_ops;
  j["peak_errset_size"] = report.peak_errset;
  j["wall_seconds"] = report.wall_seconds;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row;
    row["t"] = r.t;
    row["kind"] = std::string(1, r.kind);
    row["answer"] = r.answer;
    row["oracle"] = r.oracle;
    row["ok"] = r.ok;
    row["probes"] = r.probes;
    row["heap_ops"] = r.heap_ops;
    if (r.dstar)
      row["dstar"] = *r.dstar;
    else
      row["dstar"] = nullptr;
    row["errset_size"] = r.errset;
    j["rows"].push_back(std::move(row));
  }
  os << j.dump(2) << '\n';
}

namespace detail {

class WallTimer {
 public:
  explicit WallTimer(RunReport& report) : report_(report) {}
  ~WallTimer() {
    report_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  RunReport& report_;
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline std::string show(std::int64_t v) {
  return v == apsp::kInf ? "inf" : std::to_string(v);
}
inline std::string show(bool v) { return v ? "1" : "0"; }

}  // namespace detail

inline RunReport run_striangle(const StriWorkload& wl, Variant variant,
                               OracleMode mode) {
  RunReport report;
  detail::WallTimer timer(report);
  std::optional<striangle::Baseline> base;
  std::optional<striangle::Qopt> qopt;
  std::optional<striangle::Uopt> uopt;
  switch (variant) {
    case Variant::baseline:
      base.emplace(wl.instance.g0, wl.instance.s);
      break;
    case Variant::qopt:
      qopt.emplace(wl.instance.g0, wl.instance.s, wl.rhohat);
      break;
    case Variant::uopt:
      uopt.emplace(wl.instance.g0, wl.instance.s, wl.rhohat);
      break;
    default:
      throw std::invalid_argument("striangle: variant must be baseline/qopt/uopt");
  }

  FlipGraph oracle_g = wl.instance.g0;
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    if (r.is_update())
      oracle_g.flip(static_cast<std::size_t>(r.payload.u),
                    static_cast<std::size_t>(r.payload.v));
    StepRow row;
    row.t = t;
    row.kind = r.is_update() ? 'U' : 'Q';
    std::optional<std::int64_t> got;
    if (base) {
      base->apply(r);
      if (r.is_query() || mode == OracleMode::every_step) got = base->count();
    } else if (qopt) {
      qopt->apply(t, r);
      row.probes = qopt->stats().scans;
      row.errset = qopt->stats().diff_size;
      if (r.is_query() || mode == OracleMode::every_step) got = qopt->query();
    } else {
      uopt->apply(t, r);
      row.errset = uopt->stats().diff_size;
      if (r.is_query() || (mode == OracleMode::every_step)) got = uopt->query(t);
      row.probes = uopt->stats().pair_scans;
    }
    if (got && mode != OracleMode::off) {
      const auto want = striangle::count_striangles(oracle_g, wl.instance.s);
      row.answer = detail::show(*got);
      row.oracle = detail::show(want);
      row.ok = *got == want;
    } else if (got) {
      row.answer = detail::show(*got);
    }
    report.add(std::move(row));
  }
  return report;
}

inline RunReport run_subconn(const SubConnWorkload& wl, Variant variant,
                             OracleMode mode) {
  RunReport report;
  detail::WallTimer timer(report);
  std::optional<subconn::SubConn> alg;
  if (variant == Variant::promise)
    alg.emplace(subconn::SubConn::promise(wl.instance, wl.rhohat, wl.cert.d));
  else if (variant == Variant::agnostic)
    alg.emplace(subconn::SubConn::agnostic(wl.instance, wl.rhohat));
  else if (variant != Variant::baseline)
    throw std::invalid_argument("subconn: variant must be baseline/promise/agnostic");

  std::vector<std::uint8_t> in_s = wl.instance.s0;
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    StepRow row;
    row.t = t;
    row.kind = r.is_update() ? 'U' : 'Q';
    if (alg)
      alg->apply(t, r);
    if (r.is_update()) subconn::apply_to_set(in_s, r);
    if (r.is_query()) {
      const auto u = static_cast<std::size_t>(r.payload.a);
      const auto v = static_cast<std::size_t>(r.payload.b);
      bool got;
      if (alg) {
        got = alg->query(t, u, v);
        row.probes = alg->stats().scanned_vertices;
        row.dstar = alg->stats().dstar;
        row.errset = alg->stats().q_size;
      } else {
        got = subconn::connected_in_subgraph(wl.instance.g, in_s, u, v);
        row.probes = wl.instance.g.size();
      }
      row.answer = detail::show(got);
      if (mode != OracleMode::off) {
        const bool want = subconn::connected_in_subgraph(wl.instance.g, in_s, u, v);
        row.oracle = detail::show(want);
        row.ok = got == want;
      }
    }
    report.add(std::move(row));
  }
  return report;
}

inline RunReport run_tc(const TcWorkload& wl, Variant variant, OracleMode mode) {
  RunReport report;
  detail::WallTimer timer(report);
  std::optional<reach_tc::ReachTC> alg;
  if (variant == Variant::promise)
    alg.emplace(reach_tc::ReachTC::promise(wl.instance, wl.rhohat, wl.cert.d));
  else if (variant == Variant::agnostic)
    alg.emplace(reach_tc::ReachTC::agnostic(wl.instance, wl.rhohat));
  else if (variant != Variant::baseline)
    throw std::invalid_argument("tc: variant must be baseline/promise/agnostic");

  DiGraph g = wl.instance;
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    StepRow row;
    row.t = t;
    row.kind = r.is_update() ? 'U' : 'Q';
    if (alg) alg->apply(t, r);
    if (r.is_update())
      g.flip(static_cast<std::size_t>(r.payload.u),
             static_cast<std::size_t>(r.payload.v));
    if (r.is_query()) {
      const auto u = static_cast<std::size_t>(r.payload.u);
      const auto v = static_cast<std::size_t>(r.payload.v);
      bool got;
      if (alg) {
        got = alg->query(t, u, v);
        row.probes = alg->stats().scanned_vertices;
        row.dstar = alg->stats().dstar;
        row.errset = alg->stats().f_size;
      } else {
        got = reach_tc::reachable(g, u, v);
        row.probes = g.size();
      }
      row.answer = detail::show(got);
      if (mode != OracleMode::off) {
        const bool want = reach_tc::reachable(g, u, v);
        row.oracle = detail::show(want);
        row.ok = got == want;
      }
    }
    report.add(std::move(row));
  }
  return report;
}

inline RunReport run_apsp(const ApspWorkload& wl, Variant variant, OracleMode mode) {
  RunReport report;
  detail::WallTimer timer(report);
  std::optional<apsp::Apsp> alg;
  if (variant == Variant::promise)
    alg.emplace(apsp::Apsp::promise(wl.instance, wl.rhohat, wl.cert.d));
  else if (variant == Variant::agnostic)
    alg.emplace(apsp::Apsp::agnostic(wl.instance, wl.rhohat));
  else if (variant != Variant::baseline)
    throw std::invalid_argument("apsp: variant must be baseline/promise/agnostic");

  apsp::WeightedDiGraph g = wl.instance;
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    StepRow row;
    row.t = t;
    row.kind = r.is_update() ? 'U' : 'Q';
    if (alg) alg->apply(t, r);
    if (r.is_update())
      g.flip(static_cast<std::size_t>(r.payload.u),
             static_cast<std::size_t>(r.payload.v), r.payload.w);
    if (r.is_query()) {
      const auto u = static_cast<std::size_t>(r.payload.u);
      const auto v = static_cast<std::size_t>(r.payload.v);
      std::int64_t got;
      if (alg) {
        got = alg->query(t, u, v);
        row.probes = alg->stats().scanned_vertices;
        row.dstar = alg->stats().dstar;
        row.errset = alg->stats().f_size;
      } else {
        got = apsp::dijkstra_full(g, u, v);
        row.probes = g.size();
      }
      row.answer = detail::show(got);
      if (mode != OracleMode::off) {
        const auto want = apsp::bellman_ford(g, u)[v];
        row.oracle = detail::show(want);
        row.ok = got == want;
      }
    }
    report.add(std::move(row));
  }
  return report;
}

inline RunReport run_erickson(const EricksonWorkload& wl, Variant variant,
                              OracleMode mode) {
  RunReport report;
  detail::WallTimer timer(report);
  std::optional<erickson::Qopt> qopt;
  std::optional<erickson::Uopt> uopt;
  std::optional<erickson::Base> base;
  switch (variant) {
    case Variant::baseline:
      base.emplace(wl.instance);
      break;
    case Variant::qopt:
      qopt.emplace(wl.instance, wl.rhohat);
      break;
    case Variant::uopt:
      uopt.emplace(wl.instance, wl.rhohat);
      break;
    default:
      throw std::invalid_argument("erickson: variant must be baseline/qopt/uopt");
  }

  erickson::Base oracle(wl.instance);
  for (std::size_t t = 1; t <= wl.rho.size(); ++t) {
    const auto& r = wl.rho[t - 1];
    oracle.apply(r);
    StepRow row;
    row.t = t;
    row.kind = r.is_update() ? 'U' : 'Q';
    std::optional<std::int64_t> got;
    if (base) {
      base->apply(r);
      if (r.is_query() || mode == OracleMode::every_step)
        got = erickson_oracle(*base).value;
    } else if (qopt) {
      qopt->apply(t, r);
      row.probes = qopt->stats().corrected_keys;
      row.heap_ops = qopt->stats().heap_ops;
      row.errset = qopt->stats().err_rows + qopt->stats().err_cols;
      if (r.is_query() || mode == OracleMode::every_step) got = qopt->query();
    } else {
      uopt->apply(t, r);
      row.errset = uopt->stats().err_rows + uopt->stats().err_cols;
      if (r.is_query() || mode == OracleMode::every_step) {
        got = uopt->query(t);
        row.probes = uopt->stats().pair_scans;
        row.heap_ops = uopt->stats().heap_ops;
        row.dstar = uopt->stats().dstar;
      }
    }
    if (got && mode != OracleMode::off) {
      const auto want = erickson::erickson_oracle(oracle).value;
      row.answer = detail::show(*got);
      row.oracle = detail::show(want);
      row.ok = *got == want;
    } else if (got) {
      row.answer = detail::show(*got);
    }
    report.add(std::move(row));
  }
  return report;
}

}  // namespace dynpred::harness

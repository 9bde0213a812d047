// Command-line front end: generate workload directories, replay them through
// any algorithm variant with oracle checks and work counters, verify stored
// certificates and answers, and benchmark.
//
// Exit codes: 0 ok, 1 answer mismatch, 2 bad input.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "dynpred/adversary/striangle_reductions.hpp"
#include "dynpred/core/delay.hpp"
#include "dynpred/harness/generators.hpp"
#include "dynpred/harness/runner.hpp"
#include "dynpred/io/workload.hpp"

namespace {

using namespace dynpred;
namespace fs = std::filesystem;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DYNPRED_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw CLI::ValidationError("DYNPRED_SEED", "not an integer");
    }
  }
  return 1;
}

struct GenOptions {
  std::string kind;
  std::string problem{"striangle"};
  harness::GenSpec spec;
  std::string out;
};

int cmd_gen(const GenOptions& opt) {
  const fs::path dir(opt.out);
  if (opt.kind == "perturb") {
    const auto problem = io::problem_from_name(opt.problem);
    if (!problem) {
      std::cerr << "gen: unknown problem '" << opt.problem << "'\n";
      return 2;
    }
    switch (*problem) {
      case io::Problem::striangle:
        io::write_workload(dir, harness::gen_striangle(opt.spec));
        break;
      case io::Problem::subconn:
        io::write_workload(dir, harness::gen_subconn(opt.spec));
        break;
      case io::Problem::tc:
        io::write_workload(dir, harness::gen_tc(opt.spec));
        break;
      case io::Problem::apsp:
        io::write_workload(dir, harness::gen_apsp(opt.spec));
        break;
      case io::Problem::erickson:
        io::write_workload(dir, harness::gen_erickson(opt.spec));
        break;
    }
    return 0;
  }

  Rng rng(opt.spec.seed);
  const auto inst = omv::random_oumv(opt.spec.n, opt.spec.n, rng);
  if (opt.kind == "striangle-oumv") {
    io::write_workload(dir, adversary::gen_striangle_oumv(inst));
    return 0;
  }
  if (opt.kind == "striangle-rhostar") {
    const auto red = adversary::gen_striangle_rhostar(inst);
    harness::StriWorkload wl;
    wl.instance = red.instance;
    wl.rhohat = red.rhohat;
    wl.rho = red.rho_star;
    auto pi = occurrence_matching(wl.rho, wl.rhohat);
    if (!pi) {
      std::cerr << "gen: rho* is not a permutation of the universal prediction\n";
      return 2;
    }
    wl.cert = DelayCertificate::identity(wl.rho.size());
    wl.cert.pi = std::move(*pi);
    wl.cert.d = *min_delay(wl.rho, wl.rhohat);
    striangle::Baseline sim(wl.instance.g0, wl.instance.s);
    for (const auto& r : wl.rho) {
      sim.apply(r);
      if (r.is_query()) wl.answers.push_back(sim.count());
    }
    io::write_workload(dir, wl);
    return 0;
  }
  if (opt.kind == "striangle-2list") {
    const auto red = adversary::gen_2list_striangle(inst);
    fs::create_directories(dir);
    io::write_instance(dir, red.instance);
    io::write_requests(dir / "actual.txt", red.rho);
    io::write_answers_i64(dir / "answers.txt", red.answers, false);
    std::ofstream os(dir / "pred_list.txt");
    for (const auto& slot : red.prediction.slots) {
      bool first = true;
      for (const auto& r : slot) {
        if (!first) os << " | ";
        os << io::encode(r);
        first = false;
      }
      os << '\n';
    }
    return 0;
  }
  std::cerr << "gen: unknown kind '" << opt.kind << "'\n";
  return 2;
}

struct RunOptions {
  std::vector<std::string> workloads;
  std::string problem;
  harness::GenSpec spec;
  bool use_gen{false};
  std::string variant{"agnostic"};
  std::string oracle{"queries-only"};
  std::string format{"csv"};
  std::string out;
  unsigned jobs{1};
  bool summary_only{false};
};

harness::OracleMode oracle_mode(const std::string& s) {
  if (s == "every-step") return harness::OracleMode::every_step;
  if (s == "queries-only") return harness::OracleMode::queries_only;
  if (s == "off") return harness::OracleMode::off;
  throw CLI::ValidationError("--oracle", "must be every-step|queries-only|off");
}

harness::RunReport dispatch_run(io::Problem problem, const fs::path& dir,
                                const RunOptions& opt) {
  const auto variant = harness::variant_from_name(opt.variant);
  if (!variant) throw std::invalid_argument("unknown variant: " + opt.variant);
  const auto mode = oracle_mode(opt.oracle);
  switch (problem) {
    case io::Problem::striangle:
      return harness::run_striangle(io::read_striangle_workload(dir), *variant, mode);
    case io::Problem::subconn:
      return harness::run_subconn(io::read_subconn_workload(dir), *variant, mode);
    case io::Problem::tc:
      return harness::run_tc(io::read_tc_workload(dir), *variant, mode);
    case io::Problem::apsp:
      return harness::run_apsp(io::read_apsp_workload(dir), *variant, mode);
    case io::Problem::erickson:
      return harness::run_erickson(io::read_erickson_workload(dir), *variant, mode);
  }
  throw std::logic_error("unreachable");
}

void emit_report(const harness::RunReport& report, const RunOptions& opt,
                 std::ostream& os) {
  if (opt.summary_only) {
    os << "ok=" << (report.all_ok ? 1 : 0) << " probes=" << report.total_probes
       << " heap_ops=" << report.total_heap_ops
       << " peak_errset=" << report.peak_errset << " wall=" << report.wall_seconds
       << "s\n";
    return;
  }
  if (opt.format == "json")
    harness::write_json(os, report);
  else
    harness::write_csv(os, report);
}

int cmd_run(RunOptions opt, bool bench) {
  if (bench) {
    opt.oracle = "off";
    opt.summary_only = true;
  }
  if (opt.use_gen) {
    // Generator spec instead of a directory: build in a temp dir and replay.
    const fs::path dir =
        fs::temp_directory_path() /
        ("dynpred_gen_" + std::to_string(opt.spec.seed) + "_" + opt.problem);
    GenOptions gen;
    gen.kind = "perturb";
    gen.problem = opt.problem;
    gen.spec = opt.spec;
    gen.out = dir.string();
    if (int rc = cmd_gen(gen); rc != 0) return rc;
    opt.workloads = {dir.string()};
  }
  if (opt.workloads.empty()) {
    std::cerr << "run: no workload directory given\n";
    return 2;
  }

  std::atomic<int> worst{0};
  std::mutex io_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= opt.workloads.size()) return;
      const fs::path dir(opt.workloads[i]);
      try {
        const auto problem = io::detect_problem(dir);
        if (!problem) throw std::runtime_error("no instance.* file in " + dir.string());
        const auto report = dispatch_run(*problem, dir, opt);
        std::lock_guard<std::mutex> lock(io_mutex);
        if (!opt.out.empty()) {
          std::ofstream os(opt.out);
          emit_report(report, opt, os);
        } else if (opt.workloads.size() > 1 && !opt.summary_only) {
          const auto file =
              dir / (opt.format == "json" ? "report.json" : "report.csv");
          std::ofstream os(file);
          emit_report(report, opt, os);
          std::cout << dir.string() << ": " << (report.all_ok ? "ok" : "MISMATCH")
                    << '\n';
        } else {
          if (opt.workloads.size() > 1) std::cout << dir.string() << ": ";
          emit_report(report, opt, std::cout);
        }
        if (!report.all_ok) {
          int zero = 0;
          worst.compare_exchange_strong(zero, 1);
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << dir.string() << ": " << e.what() << '\n';
        worst.store(2);
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned jobs = std::max(1u, opt.jobs);
  for (unsigned j = 0; j + 1 < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return worst.load();
}

template <typename Workload, typename OracleFn>
bool verify_pair(const Workload& wl, OracleFn&& oracle_answers) {
  if (!wl.certificate_ok()) {
    std::cout << "certificate: FAIL\n";
    return false;
  }
  std::cout << "certificate: ok (d=" << wl.cert.d << ", k=" << wl.cert.k << ")\n";
  if (wl.cert.k == 0) {
    const bool contained = containment_check(wl.rho, wl.rhohat, wl.cert.d);
    std::cout << "prefix containment at d=" << wl.cert.d << ": "
              << (contained ? "ok" : "FAIL") << '\n';
    if (!contained) return false;
  }
  const auto expect = oracle_answers();
  const bool answers_ok = expect == wl.answers;
  std::cout << "answers: " << (answers_ok ? "ok" : "FAIL") << " (" << expect.size()
            << " queries)\n";
  return answers_ok;
}

int cmd_verify(const std::string& dir_str) {
  const fs::path dir(dir_str);
  const auto problem = io::detect_problem(dir);
  if (!problem) {
    std::cerr << "verify: no instance.* file in " << dir_str << '\n';
    return 2;
  }

  // 2-list workloads carry a slot file instead of a point prediction.
  if (*problem == io::Problem::striangle && fs::exists(dir / "pred_list.txt") &&
      !fs::exists(dir / "pred.txt")) {
    const auto inst = io::read_striangle_instance(dir);
    const auto rho = io::read_requests<striangle::Req>(dir / "actual.txt");
    const auto answers = io::read_answers_i64(dir / "answers.txt");
    std::ifstream is(dir / "pred_list.txt");
    std::string line;
    std::size_t t = 0;
    bool contained = true;
    while (std::getline(is, line) && t < rho.size()) {
      bool hit = false;
      std::size_t start = 0;
      while (start <= line.size()) {
        auto end = line.find(" | ", start);
        const auto piece = line.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        if (!piece.empty() && io::decode<striangle::Req>(piece) == rho[t]) hit = true;
        if (end == std::string::npos) break;
        start = end + 3;
      }
      contained = contained && hit;
      ++t;
    }
    std::cout << "list containment: " << (contained ? "ok" : "FAIL") << '\n';
    striangle::Baseline sim(inst.g0, inst.s);
    std::vector<std::int64_t> expect;
    for (const auto& r : rho) {
      sim.apply(r);
      if (r.is_query()) expect.push_back(sim.count());
    }
    const bool answers_ok = expect == answers;
    std::cout << "answers: " << (answers_ok ? "ok" : "FAIL") << '\n';
    return (contained && answers_ok) ? 0 : 1;
  }

  bool ok = false;
  switch (*problem) {
    case io::Problem::striangle: {
      const auto wl = io::read_striangle_workload(dir);
      ok = verify_pair(wl, [&] {
        striangle::Baseline sim(wl.instance.g0, wl.instance.s);
        std::vector<std::int64_t> expect;
        for (const auto& r : wl.rho) {
          sim.apply(r);
          if (r.is_query()) expect.push_back(sim.count());
        }
        return expect;
      });
      break;
    }
    case io::Problem::subconn: {
      const auto wl = io::read_subconn_workload(dir);
      ok = verify_pair(wl, [&] {
        std::vector<bool> expect;
        auto in_s = wl.instance.s0;
        for (const auto& r : wl.rho) {
          if (r.is_update())
            subconn::apply_to_set(in_s, r);
          else
            expect.push_back(subconn::connected_in_subgraph(
                wl.instance.g, in_s, static_cast<std::size_t>(r.payload.a),
                static_cast<std::size_t>(r.payload.b)));
        }
        return expect;
      });
      break;
    }
    case io::Problem::tc: {
      const auto wl = io::read_tc_workload(dir);
      ok = verify_pair(wl, [&] {
        std::vector<bool> expect;
        DiGraph g = wl.instance;
        for (const auto& r : wl.rho) {
          if (r.is_update())
            g.flip(static_cast<std::size_t>(r.payload.u),
                   static_cast<std::size_t>(r.payload.v));
          else
            expect.push_back(reach_tc::reachable(
                g, static_cast<std::size_t>(r.payload.u),
                static_cast<std::size_t>(r.payload.v)));
        }
        return expect;
      });
      break;
    }
    case io::Problem::apsp: {
      const auto wl = io::read_apsp_workload(dir);
      ok = verify_pair(wl, [&] {
        std::vector<std::int64_t> expect;
        apsp::WeightedDiGraph g = wl.instance;
        for (const auto& r : wl.rho) {
          if (r.is_update())
            g.flip(static_cast<std::size_t>(r.payload.u),
                   static_cast<std::size_t>(r.payload.v), r.payload.w);
          else
            expect.push_back(apsp::bellman_ford(
                g, static_cast<std::size_t>(r.payload.u))[static_cast<std::size_t>(
                r.payload.v)]);
        }
        return expect;
      });
      break;
    }
    case io::Problem::erickson: {
      const auto wl = io::read_erickson_workload(dir);
      ok = verify_pair(wl, [&] {
        std::vector<std::int64_t> expect;
        erickson::Base base(wl.instance);
        for (const auto& r : wl.rho) {
          base.apply(r);
          if (r.is_query()) expect.push_back(erickson::erickson_oracle(base).value);
        }
        return expect;
      });
      break;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic algorithms with predictions: workload tooling"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a workload directory");
  gen_cmd->add_option("kind", gen.kind,
                      "perturb | striangle-oumv | striangle-2list | striangle-rhostar")
      ->required();
  gen_cmd->add_option("--problem", gen.problem,
                      "striangle|subconn|tc|apsp|erickson (for perturb)");
  gen_cmd->add_option("--n", gen.spec.n, "instance size");
  gen_cmd->add_option("--T", gen.spec.T, "request count");
  gen_cmd->add_option("--d", gen.spec.d, "target delay");
  gen_cmd->add_option("--k", gen.spec.k, "outlier count");
  gen_cmd->add_option("--seed", gen.spec.seed, "rng seed (default: $DYNPRED_SEED)");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "replay workloads with oracle checks");
  run_cmd->add_option("workloads", run.workloads, "workload directories");
  run_cmd->add_option("--problem", run.problem, "generate instead of reading");
  run_cmd->add_option("--n", run.spec.n, "generator: instance size");
  run_cmd->add_option("--T", run.spec.T, "generator: request count");
  run_cmd->add_option("--d", run.spec.d, "generator: target delay");
  run_cmd->add_option("--k", run.spec.k, "generator: outlier count");
  run_cmd->add_option("--seed", run.spec.seed, "generator: rng seed");
  run_cmd->add_option("--variant", run.variant,
                      "baseline|qopt|uopt|promise|agnostic");
  run_cmd->add_option("--oracle", run.oracle, "every-step|queries-only|off");
  run_cmd->add_option("--format", run.format, "csv|json");
  run_cmd->add_option("--out", run.out, "report file (default: stdout)");
  run_cmd->add_option("--jobs", run.jobs, "parallel workloads");

  RunOptions bench = run;
  auto* bench_cmd = app.add_subcommand("bench", "replay without oracle checks");
  bench_cmd->add_option("workloads", bench.workloads, "workload directories");
  bench_cmd->add_option("--problem", bench.problem, "generate instead of reading");
  bench_cmd->add_option("--n", bench.spec.n, "generator: instance size");
  bench_cmd->add_option("--T", bench.spec.T, "generator: request count");
  bench_cmd->add_option("--d", bench.spec.d, "generator: target delay");
  bench_cmd->add_option("--k", bench.spec.k, "generator: outlier count");
  bench_cmd->add_option("--seed", bench.spec.seed, "generator: rng seed");
  bench_cmd->add_option("--variant", bench.variant,
                        "baseline|qopt|uopt|promise|agnostic");
  bench_cmd->add_option("--jobs", bench.jobs, "parallel workloads");

  std::string verify_dir;
  auto* verify_cmd = app.add_subcommand("verify", "validate a workload directory");
  verify_cmd->add_option("workload", verify_dir, "workload directory")->required();

  gen.spec.seed = run.spec.seed = bench.spec.seed = default_seed();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (run_cmd->parsed()) {
      run.use_gen = !run.problem.empty();
      return cmd_run(run, false);
    }
    if (bench_cmd->parsed()) {
      bench.use_gen = !bench.problem.empty();
      return cmd_run(bench, true);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynpred/adversary/striangle_reductions.hpp"
#include "dynpred/adversary/workload_pair.hpp"
#include "dynpred/harness/generators.hpp"
#include "dynpred/problems/apsp.hpp"
#include "dynpred/problems/erickson.hpp"
#include "dynpred/problems/reach_tc.hpp"
#include "dynpred/problems/striangle.hpp"
#include "dynpred/problems/subconn.hpp"

namespace dynpred::io {

namespace fs = std::filesystem;

enum class Problem { striangle, subconn, tc, apsp, erickson };

inline const char* problem_name(Problem p) {
  switch (p) {
    case Problem::striangle: return "striangle";
    case Problem::subconn: return "subconn";
    case Problem::tc: return "tc";
    case Problem::apsp: return "apsp";
    case Problem::erickson: return "erickson";
  }
  return "?";
}

inline std::optional<Problem> problem_from_name(const std::string& s) {
  for (Problem p : {Problem::striangle, Problem::subconn, Problem::tc, Problem::apsp,
                    Problem::erickson})
    if (s == problem_name(p)) return p;
  return std::nullopt;
}

/// A workload directory names its problem through the instance file
/// extension: instance.striangle, instance.subconn, ...
inline std::optional<Problem> detect_problem(const fs::path& dir) {
  for (Problem p : {Problem::striangle, Problem::subconn, Problem::tc, Problem::apsp,
                    Problem::erickson})
    if (fs::exists(dir / (std::string("instance.") + problem_name(p)))) return p;
  return std::nullopt;
}

// ---------------------------------------------------------------- requests

inline std::string encode(const striangle::Req& r) {
  if (r.is_query()) return "Q query";
  std::ostringstream os;
  os << "U edge " << r.payload.u << ' ' << r.payload.v;
  return os.str();
}

inline std::string encode(const subconn::Req& r) {
  std::ostringstream os;
  if (r.is_query()) {
    os << "Q query " << r.payload.a << ' ' << r.payload.b;
  } else {
    os << "U " << (r.payload.op == subconn::Payload::Op::add ? "vadd" : "vdel") << ' '
       << r.payload.a;
  }
  return os.str();
}

inline std::string encode(const reach_tc::Req& r) {
  std::ostringstream os;
  if (r.is_query())
    os << "Q query " << r.payload.u << ' ' << r.payload.v;
  else
    os << "U dedge " << r.payload.u << ' ' << r.payload.v;
  return os.str();
}

inline std::string encode(const apsp::Req& r) {
  std::ostringstream os;
  if (r.is_query())
    os << "Q query " << r.payload.u << ' ' << r.payload.v;
  else
    os << "U wedge " << r.payload.u << ' ' << r.payload.v << ' ' << r.payload.w;
  return os.str();
}

inline std::string encode(const erickson::Req& r) {
  std::ostringstream os;
  if (r.is_query())
    os << "Q query";
  else
    os << "U " << (r.payload.axis == erickson::Payload::Axis::row ? "row" : "col")
       << ' ' << r.payload.index;
  return os.str();
}

[[noreturn]] inline void bad_line(const std::string& line) {
  throw std::runtime_error("workload: cannot parse request line: " + line);
}

template <typename R>
R decode(const std::string& line);

template <>
inline striangle::Req decode<striangle::Req>(const std::string& line) {
  std::istringstream is(line);
  std::string kind, tag;
  is >> kind >> tag;
  if (kind == "Q" && tag == "query") return striangle::query_request();
  std::int32_t u, v;
  if (kind == "U" && tag == "edge" && (is >> u >> v))
    return striangle::flip_request(u, v);
  bad_line(line);
}

template <>
inline subconn::Req decode<subconn::Req>(const std::string& line) {
  std::istringstream is(line);
  std::string kind, tag;
  is >> kind >> tag;
  if (kind == "Q" && tag == "query") {
    std::int32_t u, v;
    if (is >> u >> v) return subconn::query_request(u, v);
  } else if (kind == "U" && (tag == "vadd" || tag == "vdel")) {
    std::int32_t v;
    if (is >> v) return tag == "vadd" ? subconn::add_request(v) : subconn::del_request(v);
  }
  bad_line(line);
}

template <>
inline reach_tc::Req decode<reach_tc::Req>(const std::string& line) {
  std::istringstream is(line);
  std::string kind, tag;
  std::int32_t u, v;
  is >> kind >> tag;
  if (is >> u >> v) {
    if (kind == "Q" && tag == "query") return reach_tc::query_request(u, v);
    if (kind == "U" && tag == "dedge") return reach_tc::flip_request(u, v);
  }
  bad_line(line);
}

template <>
inline apsp::Req decode<apsp::Req>(const std::string& line) {
  std::istringstream is(line);
  std::string kind, tag;
  std::int32_t u, v;
  is >> kind >> tag;
  if (kind == "Q" && tag == "query" && (is >> u >> v))
    return apsp::query_request(u, v);
  std::int64_t w;
  if (kind == "U" && tag == "wedge" && (is >> u >> v >> w))
    return apsp::flip_request(u, v, w);
  bad_line(line);
}

template <>
inline erickson::Req decode<erickson::Req>(const std::string& line) {
  std::istringstream is(line);
  std::string kind, tag;
  is >> kind >> tag;
  if (kind == "Q" && tag == "query") return erickson::query_request();
  std::int32_t idx;
  if (kind == "U" && (tag == "row" || tag == "col") && (is >> idx))
    return tag == "row" ? erickson::row_request(idx) : erickson::col_request(idx);
  bad_line(line);
}

template <typename R>
void write_requests(const fs::path& file, const std::vector<R>& seq) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error("workload: cannot write " + file.string());
  for (const auto& r : seq) os << encode(r) << '\n';
}

template <typename R>
std::vector<R> read_requests(const fs::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("workload: cannot read " + file.string());
  std::vector<R> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(decode<R>(line));
  }
  return out;
}

// ------------------------------------------------------------- certificate

inline void write_cert(const fs::path& file, const DelayCertificate& cert) {
  nlohmann::json j;
  j["pi"] = cert.pi;
  j["I"] = cert.I;
  j["Ihat"] = cert.Ihat;
  j["d"] = cert.d;
  j["k"] = cert.k;
  std::ofstream os(file);
  os << j.dump(2) << '\n';
}

inline DelayCertificate read_cert(const fs::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("workload: cannot read " + file.string());
  nlohmann::json j;
  is >> j;
  DelayCertificate cert;
  cert.pi = j.at("pi").get<std::vector<std::size_t>>();
  cert.I = j.at("I").get<std::vector<std::size_t>>();
  cert.Ihat = j.at("Ihat").get<std::vector<std::size_t>>();
  cert.d = j.at("d").get<std::size_t>();
  cert.k = j.at("k").get<std::size_t>();
  return cert;
}

// ----------------------------------------------------------------- answers

inline void write_answers_i64(const fs::path& file, const std::vector<std::int64_t>& a,
                              bool inf_sentinel) {
  std::ofstream os(file);
  for (auto x : a) {
    if (inf_sentinel && x == apsp::kInf)
      os << "inf\n";
    else
      os << x << '\n';
  }
}

inline std::vector<std::int64_t> read_answers_i64(const fs::path& file) {
  std::ifstream is(file);
  if (!is) throw std::runtime_error("workload: cannot read " + file.string());
  std::vector<std::int64_t> out;
  std::string tok;
  while (is >> tok) out.push_back(tok == "inf" ? apsp::kInf : std::stoll(tok));
  return out;
}

inline void write_answers_bool(const fs::path& file, const std::vector<bool>& a) {
  std::ofstream os(file);
  for (bool x : a) os << (x ? 1 : 0) << '\n';
}

inline std::vector<bool> read_answers_bool(const fs::path& file) {
  std::vector<bool> out;
  for (auto x : read_answers_i64(file)) out.push_back(x != 0);
  return out;
}

// --------------------------------------------------------------- instances

inline void write_instance(const fs::path& dir, const adversary::StriInstance& inst) {
  std::ofstream os(dir / "instance.striangle");
  const std::size_t n = inst.g0.size();
  os << n << ' ' << inst.g0.edge_count() << '\n';
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (inst.g0.has_edge(u, v)) os << u << ' ' << v << '\n';
}

inline adversary::StriInstance read_striangle_instance(const fs::path& dir) {
  std::ifstream is(dir / "instance.striangle");
  std::size_t n, m;
  if (!(is >> n >> m)) throw std::runtime_error("instance.striangle: bad header");
  adversary::StriInstance inst{FlipGraph(n), 0};
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t u, v;
    if (!(is >> u >> v)) throw std::runtime_error("instance.striangle: bad edge");
    inst.g0.set_edge(u, v, true);
  }
  return inst;
}

inline void write_instance(const fs::path& dir, const subconn::Instance& inst) {
  std::ofstream os(dir / "instance.subconn");
  const std::size_t n = inst.g.size();
  os << n << ' ' << inst.g.edge_count() << '\n';
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (inst.g.has_edge(u, v)) os << u << ' ' << v << '\n';
  std::size_t cnt = 0;
  for (auto b : inst.s0) cnt += b ? 1 : 0;
  os << "S " << cnt;
  for (std::size_t v = 0; v < n; ++v)
    if (inst.s0[v]) os << ' ' << v;
  os << '\n';
}

inline subconn::Instance read_subconn_instance(const fs::path& dir) {
  std::ifstream is(dir / "instance.subconn");
  std::size_t n, m;
  if (!(is >> n >> m)) throw std::runtime_error("instance.subconn: bad header");
  subconn::Instance inst{FlipGraph(n), std::vector<std::uint8_t>(n, 0)};
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t u, v;
    if (!(is >> u >> v)) throw std::runtime_error("instance.subconn: bad edge");
    inst.g.set_edge(u, v, true);
  }
  std::string tag;
  std::size_t cnt;
  if (!(is >> tag >> cnt) || tag != "S")
    throw std::runtime_error("instance.subconn: bad S line");
  for (std::size_t i = 0; i < cnt; ++i) {
    std::size_t v;
    if (!(is >> v)) throw std::runtime_error("instance.subconn: bad S vertex");
    inst.s0[v] = 1;
  }
  return inst;
}

inline void write_instance(const fs::path& dir, const DiGraph& g) {
  std::ofstream os(dir / "instance.tc");
  const auto edges = g.edges();
  os << g.size() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) os << u << ' ' << v << '\n';
}

inline DiGraph read_tc_instance(const fs::path& dir) {
  std::ifstream is(dir / "instance.tc");
  std::size_t n, m;
  if (!(is >> n >> m)) throw std::runtime_error("instance.tc: bad header");
  DiGraph g(n);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t u, v;
    if (!(is >> u >> v)) throw std::runtime_error("instance.tc: bad edge");
    g.set_edge(u, v, true);
  }
  return g;
}

inline void write_instance(const fs::path& dir, const apsp::WeightedDiGraph& g) {
  std::ofstream os(dir / "instance.apsp");
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> edges;
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.has_edge(u, v)) edges.emplace_back(u, v, g.weight(u, v));
  os << g.size() << ' ' << edges.size() << '\n';
  for (const auto& [u, v, w] : edges) os << u << ' ' << v << ' ' << w << '\n';
}

inline apsp::WeightedDiGraph read_apsp_instance(const fs::path& dir) {
  std::ifstream is(dir / "instance.apsp");
  std::size_t n, m;
  if (!(is >> n >> m)) throw std::runtime_error("instance.apsp: bad header");
  apsp::WeightedDiGraph g(n);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t u, v;
    std::int64_t w;
    if (!(is >> u >> v >> w)) throw std::runtime_error("instance.apsp: bad edge");
    g.set_edge(u, v, w);
  }
  return g;
}

inline void write_instance(const fs::path& dir, const erickson::Matrix& m) {
  std::ofstream os(dir / "instance.erickson");
  os << m.size() << '\n';
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << '\n';
  }
}

inline erickson::Matrix read_erickson_instance(const fs::path& dir) {
  std::ifstream is(dir / "instance.erickson");
  std::size_t n;
  if (!(is >> n)) throw std::runtime_error("instance.erickson: bad header");
  erickson::Matrix m(n, std::vector<std::int64_t>(n, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (!(is >> x)) throw std::runtime_error("instance.erickson: bad entry");
  return m;
}

// --------------------------------------------------------------- workloads

template <typename Instance, typename P, typename Answer>
void write_pair_common(const fs::path& dir,
                       const adversary::WorkloadPair<Instance, P, Answer>& wl) {
  fs::create_directories(dir);
  write_instance(dir, wl.instance);
  write_requests(dir / "pred.txt", wl.rhohat);
  write_requests(dir / "actual.txt", wl.rho);
  write_cert(dir / "cert.json", wl.cert);
}

inline void write_workload(const fs::path& dir, const harness::StriWorkload& wl) {
  write_pair_common(dir, wl);
  write_answers_i64(dir / "answers.txt", wl.answers, false);
}
inline void write_workload(const fs::path& dir, const harness::SubConnWorkload& wl) {
  write_pair_common(dir, wl);
  write_answers_bool(dir / "answers.txt", wl.answers);
}
inline void write_workload(const fs::path& dir, const harness::TcWorkload& wl) {
  write_pair_common(dir, wl);
  write_answers_bool(dir / "answers.txt", wl.answers);
}
inline void write_workload(const fs::path& dir, const harness::ApspWorkload& wl) {
  write_pair_common(dir, wl);
  write_answers_i64(dir / "answers.txt", wl.answers, true);
}
inline void write_workload(const fs::path& dir, const harness::EricksonWorkload& wl) {
  write_pair_common(dir, wl);
  write_answers_i64(dir / "answers.txt", wl.answers, false);
}

inline harness::StriWorkload read_striangle_workload(const fs::path& dir) {
  harness::StriWorkload wl;
  wl.instance = read_striangle_instance(dir);
  wl.rhohat = read_requests<striangle::Req>(dir / "pred.txt");
  wl.rho = read_requests<striangle::Req>(dir / "actual.txt");
  wl.cert = read_cert(dir / "cert.json");
  wl.answers = read_answers_i64(dir / "answers.txt");
  return wl;
}

inline harness::SubConnWorkload read_subconn_workload(const fs::path& dir) {
  harness::SubConnWorkload wl;
  wl.instance = read_subconn_instance(dir);
  wl.rhohat = read_requests<subconn::Req>(dir / "pred.txt");
  wl.rho = read_requests<subconn::Req>(dir / "actual.txt");
  wl.cert = read_cert(dir / "cert.json");
  auto answers = read_answers_bool(dir / "answers.txt");
  wl.answers.assign(answers.begin(), answers.end());
  return wl;
}

inline harness::TcWorkload read_tc_workload(const fs::path& dir) {
  harness::TcWorkload wl;
  wl.instance = read_tc_instance(dir);
  wl.rhohat = read_requests<reach_tc::Req>(dir / "pred.txt");
  wl.rho = read_requests<reach_tc::Req>(dir / "actual.txt");
  wl.cert = read_cert(dir / "cert.json");
  auto answers = read_answers_bool(dir / "answers.txt");
  wl.answers.assign(answers.begin(), answers.end());
  return wl;
}

inline harness::ApspWorkload read_apsp_workload(const fs::path& dir) {
  harness::ApspWorkload wl;
  wl.instance = read_apsp_instance(dir);
  wl.rhohat = read_requests<apsp::Req>(dir / "pred.txt");
  wl.rho = read_requests<apsp::Req>(dir / "actual.txt");
  wl.cert = read_cert(dir / "cert.json");
  wl.answers = read_answers_i64(dir / "answers.txt");
  return wl;
}

inline harness::EricksonWorkload read_erickson_workload(const fs::path& dir) {
  harness::EricksonWorkload wl;
  wl.instance = read_erickson_instance(dir);
  wl.rhohat = read_requests<erickson::Req>(dir / "pred.txt");
  wl.rho = read_requests<erickson::Req>(dir / "actual.txt");
  wl.cert = read_cert(dir / "cert.json");
  wl.answers = read_answers_i64(dir / "answers.txt");
  return wl;
}

}  // namespace dynpred::io

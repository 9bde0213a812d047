#pragma once

#include <cstddef>
#include <unordered_set>
#include <vector>

#include "dynpred/core/certificate.hpp"
#include "dynpred/core/rng.hpp"

namespace dynpred::adversary {

template <typename R>
struct Perturbation {
  std::vector<R> rho;
  DelayCertificate cert;
};

/// Random certified workload: replace up to k positions with junk from
/// `junk(rng)`, then shuffle the remaining elements by local transpositions
/// that keep everyone within displacement d of its origin. Junk stays where
/// it was injected, which keeps the rank displacement of the matched part
/// bounded by d as well, so the emitted certificate verifies with exactly
/// the requested (d, k). Outliers are only injected at positions whose
/// predicted element satisfies `eligible`; k is capped by their count.
template <typename R, typename JunkFn, typename EligibleFn>
Perturbation<R> perturb_where(const std::vector<R>& rhohat, std::size_t d,
                              std::size_t k, Rng& rng, JunkFn&& junk,
                              EligibleFn&& eligible) {
  const std::size_t T = rhohat.size();
  std::vector<std::size_t> candidates;
  for (std::size_t p = 0; p < T; ++p)
    if (eligible(rhohat[p])) candidates.push_back(p);
  if (k > candidates.size()) k = candidates.size();

  Perturbation<R> out;
  out.rho = rhohat;

  // Outlier slots, fixed in place.
  std::vector<bool> is_outlier(T, false);
  for (std::size_t injected = 0; injected < k;) {
    const std::size_t p = candidates[uniform_below(rng, candidates.size())];
    if (is_outlier[p]) continue;
    is_outlier[p] = true;
    out.rho[p] = junk(rng);
    ++injected;
  }

  // Positions of matched (non-outlier) elements, in order.
  std::vector<std::size_t> matched;
  for (std::size_t p = 0; p < T; ++p)
    if (!is_outlier[p]) matched.push_back(p);

  // origin[p] = rhohat index of the element currently at rho position p.
  std::vector<std::size_t> origin(T);
  for (std::size_t p = 0; p < T; ++p) origin[p] = p;

  if (d > 0 && matched.size() >= 2) {
    const std::size_t attempts = 6 * T * d;
    for (std::size_t a = 0; a < attempts; ++a) {
      const std::size_t r = uniform_below(rng, matched.size() - 1);
      const std::size_t p = matched[r];
      const std::size_t q = matched[r + 1];
      const std::size_t disp_pq = q > origin[p] ? q - origin[p] : origin[p] - q;
      const std::size_t disp_qp = p > origin[q] ? p - origin[q] : origin[q] - p;
      if (disp_pq > d || disp_qp > d) continue;
      std::swap(out.rho[p], out.rho[q]);
      std::swap(origin[p], origin[q]);
    }
  }

  // Certificate: I and Ihat are the matched positions (identical sets);
  // pi maps the rank of a predicted element to the rank of its landing spot.
  DelayCertificate& cert = out.cert;
  cert.I = matched;
  cert.Ihat = matched;
  cert.d = d;
  cert.k = k;
  std::vector<std::size_t> rank_of_pos(T, SIZE_MAX);
  for (std::size_t r = 0; r < matched.size(); ++r) rank_of_pos[matched[r]] = r;
  std::vector<std::size_t> pos_of_origin(T, SIZE_MAX);
  for (std::size_t p = 0; p < T; ++p)
    if (!is_outlier[p]) pos_of_origin[origin[p]] = p;
  cert.pi.resize(matched.size());
  for (std::size_t r = 0; r < matched.size(); ++r)
    cert.pi[r] = rank_of_pos[pos_of_origin[matched[r]]];
  return out;
}

template <typename R, typename JunkFn>
Perturbation<R> perturb(const std::vector<R>& rhohat, std::size_t d, std::size_t k,
                        Rng& rng, JunkFn&& junk) {
  return perturb_where(rhohat, d, k, rng, junk, [](const R&) { return true; });
}

}  // namespace dynpred::adversary

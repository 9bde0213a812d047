#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dynpred {

/// Machine-checkable witness that a prediction is d-delayed with k outliers:
/// a permutation pi over the T' = T - |outliers| matched ranks together with
/// the matched index sets I (in rho) and Ihat (in rhohat), both sorted,
/// 0-based. pi[j] = p means rhohat restricted to Ihat has at rank j the
/// element that rho restricted to I has at rank p.
struct DelayCertificate {
  std::vector<std::size_t> pi;
  std::vector<std::size_t> I;
  std::vector<std::size_t> Ihat;
  std::size_t d{0};
  std::size_t k{0};

  [[nodiscard]] static DelayCertificate identity(std::size_t T) {
    DelayCertificate c;
    c.pi.resize(T);
    c.I.resize(T);
    c.Ihat.resize(T);
    for (std::size_t i = 0; i < T; ++i) c.pi[i] = c.I[i] = c.Ihat[i] = i;
    return c;
  }

  /// Max rank displacement of pi, i.e. |pi - id|_inf.
  [[nodiscard]] std::size_t displacement() const {
    std::size_t disp = 0;
    for (std::size_t t = 0; t < pi.size(); ++t)
      disp = std::max(disp, pi[t] > t ? pi[t] - t : t - pi[t]);
    return disp;
  }

  /// Structural and element-wise validation against a concrete pair.
  template <typename R>
  [[nodiscard]] bool verify(const std::vector<R>& rho,
                            const std::vector<R>& rhohat) const {
    const std::size_t T = rho.size();
    if (rhohat.size() != T) return false;
    const std::size_t Tp = pi.size();
    if (I.size() != Tp || Ihat.size() != Tp) return false;
    if (T < Tp || T - Tp > k) return false;
    if (!std::is_sorted(I.begin(), I.end()) ||
        !std::is_sorted(Ihat.begin(), Ihat.end()))
      return false;
    if (Tp > 0 && (I.back() >= T || Ihat.back() >= T)) return false;
    if (std::adjacent_find(I.begin(), I.end()) != I.end()) return false;
    if (std::adjacent_find(Ihat.begin(), Ihat.end()) != Ihat.end()) return false;

    std::vector<bool> seen(Tp, false);
    for (std::size_t t = 0; t < Tp; ++t) {
      if (pi[t] >= Tp || seen[pi[t]]) return false;
      seen[pi[t]] = true;
      const std::size_t disp = pi[t] > t ? pi[t] - t : t - pi[t];
      if (disp > d) return false;
      if (!(rhohat[Ihat[t]] == rho[I[pi[t]]])) return false;
    }
    return true;
  }
};

}  // namespace dynpred

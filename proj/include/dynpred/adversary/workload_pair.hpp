#pragma once

#include <vector>

#include "dynpred/core/certificate.hpp"
#include "dynpred/core/request.hpp"

namespace dynpred::adversary {

/// The unit of testing and benchmarking: an initial instance, a predicted
/// and an actual request sequence, the certificate binding them, and the
/// ground-truth answer per query (in query order).
template <typename Instance, typename P, typename Answer>
struct WorkloadPair {
  Instance instance;
  RequestSequence<P> rhohat;
  RequestSequence<P> rho;
  DelayCertificate cert;
  std::vector<Answer> answers;

  [[nodiscard]] bool certificate_ok() const { return cert.verify(rho, rhohat); }
};

}  // namespace dynpred::adversary

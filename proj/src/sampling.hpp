#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "distribution.hpp"
#include "rng.hpp"

namespace clrbte {

// Exact sampler.  The k-th lower record value satisfies G(X_{L(k)}) ~ product
// of k independent standard uniforms, so: draw the component J with weights
// (p1, p2, 1-p1-p2), multiply J uniforms, invert the exponential CDF.
std::vector<double> sample_composition(const Params& p, std::size_t n,
                                       RngStream rng);

// Weibull proposal g(x) = gamma nu x^{nu-1} e^{-gamma x^nu} plus the envelope
// constant for acceptance-rejection.
struct ArProposal {
  double gamma = 1.0;
  double nu = 1.0;
  double envelope_k = 1.0;
};

struct ArStats {
  double acceptance_rate = 0.0;
  std::uint64_t proposals = 0;
};

class EnvelopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chooses nu (1 for the pure-exponential reduction, 0.8 otherwise, which
// dominates the squared-log divergence of the target at 0), matches proposal
// and target medians, then maximizes ln f - ln g on a log grid refined by
// golden section.  k is inflated by a 1.05 safety factor.
ArProposal tune_envelope(const Params& p);

// Acceptance-rejection sampler.  Aborts with EnvelopeError if the running
// acceptance rate falls below 1/(10 k) after 1000 proposals (bad envelope).
std::vector<double> sample_ar(const Params& p, const ArProposal& proposal,
                              std::size_t n, RngStream rng,
                              ArStats* stats = nullptr);

}  // namespace clrbte

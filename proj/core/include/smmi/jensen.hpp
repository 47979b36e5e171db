#ifndef SMMI_JENSEN_HPP
#define SMMI_JENSEN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "smmi/channel.hpp"
#include "smmi/constellation.hpp"

namespace smmi {

// The (Nt M)^2 received-space difference vectors
//   delta_x = sqrt(gamma) (h_l s_k - h_l' s_k'),
// Nt M of which are zero (the l = l', k = k' cases). Columns ordered by the
// antenna-major supersymbol index pair (outer, inner).
Eigen::MatrixXcd difference_set(const ChannelRealization& channel,
                                const Constellation& constellation);

struct JensenResult {
  double value = 0.0;  // clamped to >= 0
  double raw = 0.0;    // can dip slightly below 0 near gamma = 0
  bool clamped = false;
};

// Bias-corrected Jensen approximation of the finite-constellation MI:
//   I_J = -log2( sum_{dx} exp(-1/2 ||dx||^2) / (Nt M)^2 ).
// The exponent uses the squared received-space distance; see the quadratic
// form note in jensen.cpp. Deterministic, no sampling.
JensenResult jensen_mi_detail(const ChannelRealization& channel,
                              const Constellation& constellation);
double jensen_mi(const ChannelRealization& channel, const Constellation& constellation);

// Elementwise jensen_mi over several constellations, sharing the
// channel-derived supersymbol work.
std::vector<double> jensen_mi_all(const ChannelRealization& channel,
                                  const std::vector<Constellation>& constellations);

#ifdef SMMI_COUNT_OPS
// Runtime tallies of the expensive calls made by jensen_mi, for spot-checking
// the static complexity tables. Thread-local; reset before measuring.
struct JensenOpCounters {
  std::uint64_t pair_terms = 0;
  std::uint64_t exp_calls = 0;
  std::uint64_t log2_calls = 0;
};
JensenOpCounters& jensen_op_counters();
void reset_jensen_op_counters();
#endif

}  // namespace smmi

#endif

#include "smmi/jensen.hpp"

#include <cmath>

namespace smmi {

#ifdef SMMI_COUNT_OPS
JensenOpCounters& jensen_op_counters() {
  thread_local JensenOpCounters counters;
  return counters;
}
void reset_jensen_op_counters() { jensen_op_counters() = JensenOpCounters{}; }
#define SMMI_TALLY(field, amount) (jensen_op_counters().field += (amount))
#else
#define SMMI_TALLY(field, amount) ((void)0)
#endif

namespace {

Eigen::MatrixXcd scaled_supersymbols(const ChannelRealization& channel,
                                     const Constellation& constellation) {
  const int m = constellation.size();
  Eigen::MatrixXcd x(channel.nr(), channel.nt() * m);
  const double sq_gamma = std::sqrt(channel.gamma);
  for (int l = 0; l < channel.nt(); ++l)
    for (int k = 0; k < m; ++k)
      x.col(l * m + k) = sq_gamma * channel.H.col(l) * constellation.symbols[k];
  return x;
}

// The published formula writes the exponent as a quadratic form in H applied
// to delta_x, but delta_x is already a received-space vector (it carries the
// columns of H); applying H again is dimensionally inconsistent with the
// definition of the difference set and breaks the gamma -> 0 / gamma -> inf
// limits. The exponent used here is -1/2 ||delta_x||^2, which matches both
// limits and the difference-set definition.
double jensen_from_supersymbols(const Eigen::MatrixXcd& x, JensenResult* detail) {
  const int n = static_cast<int>(x.cols());
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int jp = 0; jp < n; ++jp) {
      const double d2 = (x.col(j) - x.col(jp)).squaredNorm();
      sum += std::exp(-0.5 * d2);
      SMMI_TALLY(pair_terms, 1);
      SMMI_TALLY(exp_calls, 1);
    }
  }
  const double raw = -std::log2(sum / (static_cast<double>(n) * n));
  SMMI_TALLY(log2_calls, 1);
  const double value = raw < 0.0 ? 0.0 : raw;
  if (detail) *detail = {value, raw, raw < 0.0};
  return value;
}

}  // namespace

Eigen::MatrixXcd difference_set(const ChannelRealization& channel,
                                const Constellation& constellation) {
  const Eigen::MatrixXcd x = scaled_supersymbols(channel, constellation);
  const int n = static_cast<int>(x.cols());
  Eigen::MatrixXcd deltas(channel.nr(), n * n);
  for (int j = 0; j < n; ++j)
    for (int jp = 0; jp < n; ++jp) deltas.col(j * n + jp) = x.col(j) - x.col(jp);
  return deltas;
}

JensenResult jensen_mi_detail(const ChannelRealization& channel,
                              const Constellation& constellation) {
  JensenResult result;
  jensen_from_supersymbols(scaled_supersymbols(channel, constellation), &result);
  return result;
}

double jensen_mi(const ChannelRealization& channel, const Constellation& constellation) {
  return jensen_from_supersymbols(scaled_supersymbols(channel, constellation), nullptr);
}

std::vector<double> jensen_mi_all(const ChannelRealization& channel,
                                  const std::vector<Constellation>& constellations) {
  std::vector<double> out;
  out.reserve(constellations.size());
  for (const auto& c : constellations)
    out.push_back(jensen_from_supersymbols(scaled_supersymbols(channel, c), nullptr));
  return out;
}

}  // namespace smmi

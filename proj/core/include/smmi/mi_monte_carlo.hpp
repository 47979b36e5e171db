#ifndef SMMI_MI_MONTE_CARLO_HPP
#define SMMI_MI_MONTE_CARLO_HPP

#include <cstdint>
#include <vector>

#include "smmi/channel.hpp"
#include "smmi/constellation.hpp"

namespace smmi {

// Monte Carlo estimate of an information rate in bits per channel use.
struct MiEstimate {
  double value = 0.0;      // raw MC mean, can spill slightly outside [0, max]
  int n_noise_draws = 0;
  double std_error = 0.0;  // sample standard error of the MC mean; NaN for 1 draw

  double clamped(double max_mi) const;
};

// Finite-constellation total mutual information of an SM link,
//   I_T = log2(Nt M) - (1/(Nt M)) sum_{s,l} E_w{ log2 sum_{s',l'}
//         exp(-||sqrt(g)(h_l s - h_l' s') + w||^2 + ||w||^2) },
// estimated with n_draws noise realizations w ~ CN(0, I_Nr). The exponent is
// the expanded form of the usual -g||h_l s - h_l' s' + w/sqrt(g)||^2 + ||w||^2,
// so gamma = 0 is well defined. Noise draws are shared across the (s,l) outer
// terms of one estimate (common random numbers); the inner sum is evaluated in
// the natural-log domain with running-max log-sum-exp.
MiEstimate mi_finite(const ChannelRealization& channel, const Constellation& constellation,
                     int n_draws, std::uint64_t seed);

// Gaussian-input capacity C = h(y|H) - h(w) with h(w) = Nr log2(pi e) and
// h(y|H) estimated by sampling y from the equal-weight Gaussian mixture with
// covariances Phi_l = gamma h_l h_l^H + I and averaging -log2 of the mixture
// density.
MiEstimate capacity_gaussian(const ChannelRealization& channel, int n_draws,
                             std::uint64_t seed);

// Batch evaluation over channels x constellations. Cell (i, j) uses the seed
// derive_seed(base_seed, i, j), so results are identical to sequential calls
// and bitwise independent of the worker count. threads <= 0 picks the
// hardware concurrency.
std::vector<std::vector<MiEstimate>> mi_finite_batch(
    const std::vector<ChannelRealization>& channels,
    const std::vector<Constellation>& constellations, int n_draws,
    std::uint64_t base_seed, int threads = 0);

}  // namespace smmi

#endif

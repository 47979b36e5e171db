#ifndef SMMI_CHANNEL_HPP
#define SMMI_CHANNEL_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace smmi {

// One channel-use snapshot of a square SM/IM link: channel matrix plus the
// average linear SNR attached to it.
struct ChannelRealization {
  Eigen::MatrixXcd H;  // Nr x Nt, Nr == Nt in {2, 4, 8}
  double gamma = 0.0;  // linear SNR, >= 0

  ChannelRealization() = default;
  ChannelRealization(Eigen::MatrixXcd h, double gamma_linear);

  int nt() const { return static_cast<int>(H.cols()); }
  int nr() const { return static_cast<int>(H.rows()); }
  double gamma_db() const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

// i.i.d. unit-variance Rayleigh channel: entries CN(0, 1), drawn row-major.
// Deterministic given the seed.
Eigen::MatrixXcd sample_rayleigh_h(std::uint64_t seed, int nt);

// Uniform SNR draw on [lo_db, hi_db). Deterministic given the seed.
double sample_snr_db(std::uint64_t seed, double lo_db, double hi_db);

// Two-column channel with unit-norm columns at a prescribed Hermitian angle
// theta_h in [0, pi/2] and pseudo-angle phi in (-pi, pi]:
//   H = [1, cos(theta_h) e^{i phi}; 0, sin(theta_h)]
Eigen::Matrix2cd angle_parametrized_channel(double theta_h, double phi);

}  // namespace smmi

#endif

#include "smmi/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "smmi/rng.hpp"

namespace smmi {

ChannelRealization::ChannelRealization(Eigen::MatrixXcd h, double gamma_linear)
    : H(std::move(h)), gamma(gamma_linear) {
  const int nt = static_cast<int>(H.cols());
  if (H.rows() != H.cols() || (nt != 2 && nt != 4 && nt != 8))
    throw std::invalid_argument("channel must be square with Nt in {2,4,8}");
  if (!H.allFinite()) throw std::invalid_argument("channel matrix has non-finite entries");
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw std::invalid_argument("gamma must be finite and >= 0");
}

double ChannelRealization::gamma_db() const { return linear_to_db(gamma); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

Eigen::MatrixXcd sample_rayleigh_h(std::uint64_t seed, int nt) {
  if (nt != 2 && nt != 4 && nt != 8) throw std::invalid_argument("Nt must be 2, 4 or 8");
  Rng rng(seed);
  Eigen::MatrixXcd h(nt, nt);
  for (int r = 0; r < nt; ++r)
    for (int c = 0; c < nt; ++c) h(r, c) = rng.complex_normal();
  return h;
}

double sample_snr_db(std::uint64_t seed, double lo_db, double hi_db) {
  if (!(lo_db < hi_db)) throw std::invalid_argument("need lo_db < hi_db");
  Rng rng(seed);
  return rng.uniform(lo_db, hi_db);
}

Eigen::Matrix2cd angle_parametrized_channel(double theta_h, double phi) {
  Eigen::Matrix2cd h;
  h(0, 0) = 1.0;
  h(1, 0) = 0.0;
  h(0, 1) = std::complex<double>(std::cos(phi), std::sin(phi)) * std::cos(theta_h);
  h(1, 1) = std::sin(theta_h);
  return h;
}

}  // namespace smmi

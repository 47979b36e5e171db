#ifndef SMMI_GEOMETRY_HPP
#define SMMI_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

#include "smmi/constellation.hpp"

namespace smmi {

// Received-space points h_l * s_k for every (antenna, symbol) combination,
// antenna-major: element (l-1)*M + k is column l times symbol k.
std::vector<Eigen::VectorXcd> supersymbols(const Eigen::MatrixXcd& h,
                                           const Constellation& constellation);

// Squared-distance geometry of the 2M supersymbols of a two-column channel.
// D is 2M x 2M, assembled blockwise from the per-constellation distances D_S
// and the cross-antenna block D_L (rank <= 4 for any H).
struct DistanceSet {
  Eigen::MatrixXd D;
  Eigen::MatrixXd D_S;  // |s_k - s_k'|^2
  Eigen::MatrixXd D_L;  // ||h_1 s_m - h_2 s_n||^2
};

DistanceSet distance_set(const Eigen::MatrixXcd& h, const Constellation& constellation);

// Hermitian angle in [0, pi/2] and Kasner pseudo-angle in (-pi, pi] between
// two complex vectors: h1^H h2 = |h1||h2| cos(theta_h) e^{i phi}. Orthogonal
// vectors get phi = 0 by convention (the phase term is unobservable there).
struct AnglePair {
  double theta_h;
  double phi;
};

AnglePair hermitian_angles(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2);

}  // namespace smmi

#endif

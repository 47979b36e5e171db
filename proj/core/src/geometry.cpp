#include "smmi/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smmi {

std::vector<Eigen::VectorXcd> supersymbols(const Eigen::MatrixXcd& h,
                                           const Constellation& constellation) {
  const int nt = static_cast<int>(h.cols());
  const int m = constellation.size();
  std::vector<Eigen::VectorXcd> x;
  x.reserve(static_cast<std::size_t>(nt) * m);
  for (int l = 0; l < nt; ++l)
    for (int k = 0; k < m; ++k) x.push_back(h.col(l) * constellation.symbols[k]);
  return x;
}

DistanceSet distance_set(const Eigen::MatrixXcd& h, const Constellation& constellation) {
  if (h.cols() != 2) throw std::invalid_argument("distance_set requires Nt = 2");
  const int m = constellation.size();
  const auto& s = constellation.symbols;

  DistanceSet out;
  out.D_S.resize(m, m);
  for (int k = 0; k < m; ++k)
    for (int kp = 0; kp < m; ++kp) out.D_S(k, kp) = std::norm(s[k] - s[kp]);

  const double n1 = h.col(0).squaredNorm();
  const double n2 = h.col(1).squaredNorm();
  const std::complex<double> p = h.col(0).dot(h.col(1));  // h1^H h2

  out.D_L.resize(m, m);
  for (int mm = 0; mm < m; ++mm)
    for (int nn = 0; nn < m; ++nn)
      out.D_L(mm, nn) = n1 * std::norm(s[mm]) + n2 * std::norm(s[nn]) -
                        2.0 * std::real(std::conj(s[mm]) * s[nn] * p);

  out.D.resize(2 * m, 2 * m);
  out.D.topLeftCorner(m, m) = n1 * out.D_S;
  out.D.bottomRightCorner(m, m) = n2 * out.D_S;
  out.D.topRightCorner(m, m) = out.D_L;
  out.D.bottomLeftCorner(m, m) = out.D_L.transpose();
  return out;
}

AnglePair hermitian_angles(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2) {
  const double a = h1.norm();
  const double b = h2.norm();
  if (a == 0.0 || b == 0.0) throw std::invalid_argument("hermitian_angles: zero-norm column");
  const std::complex<double> p = h1.dot(h2);  // conjugates h1
  const double mag = std::abs(p);
  if (mag == 0.0) return {std::numbers::pi / 2.0, 0.0};
  double c = mag / (a * b);
  if (c > 1.0) c = 1.0;
  return {std::acos(c), std::arg(p)};
}

}  // namespace smmi

#include "smmi/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "smmi/geometry.hpp"

namespace smmi {

FeatureOption parse_feature_option(const std::string& name) {
  if (name == "i") return FeatureOption::I;
  if (name == "ii") return FeatureOption::II;
  if (name == "iii") return FeatureOption::III;
  if (name == "iv") return FeatureOption::IV;
  if (name == "v") return FeatureOption::V;
  if (name == "multi4") return FeatureOption::Multi4;
  if (name == "quant8") return FeatureOption::Quant8;
  throw std::invalid_argument("unknown feature option: " + name);
}

std::string to_string(FeatureOption option) {
  switch (option) {
    case FeatureOption::I: return "i";
    case FeatureOption::II: return "ii";
    case FeatureOption::III: return "iii";
    case FeatureOption::IV: return "iv";
    case FeatureOption::V: return "v";
    case FeatureOption::Multi4: return "multi4";
    case FeatureOption::Quant8: return "quant8";
  }
  throw std::invalid_argument("unknown feature option");
}

int feature_length(FeatureOption option, int quantiles) {
  switch (option) {
    case FeatureOption::I:
    case FeatureOption::II: return 4;
    case FeatureOption::III: return 6;
    case FeatureOption::IV:
    case FeatureOption::V: return 8;
    case FeatureOption::Multi4: return 16;
    case FeatureOption::Quant8: return 8 + 2 * quantiles;
  }
  throw std::invalid_argument("unknown feature option");
}

int feature_nt(FeatureOption option) {
  switch (option) {
    case FeatureOption::Multi4: return 4;
    case FeatureOption::Quant8: return 8;
    default: return 2;
  }
}

namespace {

void require_nonzero_columns(const Eigen::MatrixXcd& h) {
  for (int l = 0; l < h.cols(); ++l)
    if (h.col(l).squaredNorm() == 0.0)
      throw std::invalid_argument("feature extraction: zero channel column");
}

// Column order of ascending ||h_l||^2, stable on ties. Features computed from
// the re-indexed columns are invariant to column permutations of H.
std::vector<int> energy_order(const Eigen::MatrixXcd& h) {
  std::vector<int> order(h.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return h.col(a).squaredNorm() < h.col(b).squaredNorm();
  });
  return order;
}

// Linear-interpolation quantiles at probabilities 0, 1/(q-1), ..., 1.
std::vector<double> quantiles_of(std::vector<double> values, int q) {
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size());
  std::vector<double> out(q);
  for (int i = 0; i < q; ++i) {
    const double pos = static_cast<double>(i) / (q - 1) * (n - 1);
    const int lo = static_cast<int>(std::floor(pos));
    const int hi = std::min(lo + 1, n - 1);
    const double frac = pos - lo;
    out[i] = values[lo] * (1.0 - frac) + values[hi] * frac;
  }
  return out;
}

}  // namespace

std::array<double, 4> qpsk_cross_distances(double gamma, const Eigen::MatrixXcd& h) {
  const double n1 = h.col(0).squaredNorm();
  const double n2 = h.col(1).squaredNorm();
  const std::complex<double> p = h.col(0).dot(h.col(1));
  const double base = gamma * (n1 + n2);
  const double re = 2.0 * gamma * p.real();
  const double im = 2.0 * gamma * p.imag();
  // u = 1, i, -1, -i  ->  Re{u p} = Re p, -Im p, -Re p, Im p
  std::array<double, 4> d{base - re, base + im, base + re, base - im};
  std::sort(d.begin(), d.end());
  return d;
}

FeatureVector extract(FeatureOption option, double gamma, const Eigen::MatrixXcd& h) {
  if (option == FeatureOption::Multi4) return extract_multi4(gamma, h);
  if (option == FeatureOption::Quant8) return extract_quantile(gamma, h, 5);
  if (h.cols() != 2) throw std::invalid_argument("feature options i-v require Nt = 2");
  require_nonzero_columns(h);

  const auto order = energy_order(h);
  const Eigen::VectorXcd h1 = h.col(order[0]);
  const Eigen::VectorXcd h2 = h.col(order[1]);
  const double e1 = gamma * h1.squaredNorm();
  const double e2 = gamma * h2.squaredNorm();

  Eigen::MatrixXcd hc(h.rows(), 2);
  hc.col(0) = h1;
  hc.col(1) = h2;
  const auto dist = qpsk_cross_distances(gamma, hc);

  const std::complex<double> p = h1.dot(h2);
  const std::complex<double> rho = p / (h1.norm() * h2.norm());
  const AnglePair angles = hermitian_angles(h1, h2);

  FeatureVector fv{option, Eigen::VectorXd(feature_length(option)), 2};
  auto& x = fv.values;
  switch (option) {
    case FeatureOption::I:
      x << e1, e2, rho.real(), rho.imag();
      break;
    case FeatureOption::II:
      x << e1, e2, angles.theta_h, angles.phi;
      break;
    case FeatureOption::III:
      x << e1, e2, dist[0], dist[1], dist[2], dist[3];
      break;
    case FeatureOption::IV:
      x << e1, e2, dist[0], dist[1], dist[2], dist[3], rho.real(), rho.imag();
      break;
    case FeatureOption::V:
      x << e1, e2, dist[0], dist[1], dist[2], dist[3], angles.theta_h, angles.phi;
      break;
    default:
      throw std::invalid_argument("unreachable");
  }
  return fv;
}

FeatureVector extract_multi4(double gamma, const Eigen::MatrixXcd& h) {
  if (h.cols() != 4) throw std::invalid_argument("multi4 features require Nt = 4");
  require_nonzero_columns(h);
  const auto order = energy_order(h);

  FeatureVector fv{FeatureOption::Multi4, Eigen::VectorXd(16), 4};
  for (int i = 0; i < 4; ++i) fv.values(i) = gamma * h.col(order[i]).squaredNorm();
  int at = 4;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const AnglePair a = hermitian_angles(h.col(order[i]), h.col(order[j]));
      fv.values(at++) = a.theta_h;
      fv.values(at++) = a.phi;
    }
  }
  return fv;
}

FeatureVector extract_quantile(double gamma, const Eigen::MatrixXcd& h, int quantiles) {
  if (h.cols() != 8) throw std::invalid_argument("quantile features require Nt = 8");
  if (quantiles < 2) throw std::invalid_argument("need at least 2 quantiles");
  require_nonzero_columns(h);
  const auto order = energy_order(h);

  FeatureVector fv{FeatureOption::Quant8, Eigen::VectorXd(8 + 2 * quantiles), 8};
  for (int i = 0; i < 8; ++i) fv.values(i) = gamma * h.col(order[i]).squaredNorm();

  std::vector<double> theta, phi;
  theta.reserve(28);
  phi.reserve(28);
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      const AnglePair a = hermitian_angles(h.col(order[i]), h.col(order[j]));
      theta.push_back(a.theta_h);
      phi.push_back(a.phi);
    }
  }
  const auto qt = quantiles_of(std::move(theta), quantiles);
  const auto qp = quantiles_of(std::move(phi), quantiles);
  for (int i = 0; i < quantiles; ++i) fv.values(8 + i) = qt[i];
  for (int i = 0; i < quantiles; ++i) fv.values(8 + quantiles + i) = qp[i];
  return fv;
}

}  // namespace smmi

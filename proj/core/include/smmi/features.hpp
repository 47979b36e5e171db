#ifndef SMMI_FEATURES_HPP
#define SMMI_FEATURES_HPP

#include <Eigen/Dense>
#include <array>
#include <string>

namespace smmi {

// Input feature layouts for the MI network. Lengths: i/ii 4, iii 6, iv/v 8,
// multi4 16 (Nt = 4), quant8 8 + 2Q (Nt = 8).
enum class FeatureOption { I, II, III, IV, V, Multi4, Quant8 };

FeatureOption parse_feature_option(const std::string& name);
std::string to_string(FeatureOption option);
int feature_length(FeatureOption option, int quantiles = 5);
int feature_nt(FeatureOption option);

struct FeatureVector {
  FeatureOption option;
  Eigen::VectorXd values;
  int nt;
};

// The four distinct cross-antenna squared distances of a QPSK supersymbol
// set, gamma-scaled and sorted ascending:
//   d(u) = gamma (||h1||^2 + ||h2||^2 - 2 Re{u h1^H h2}),  u in {1, i, -1, -i}.
// These four values also feed the 8PSK/16QAM outputs.
std::array<double, 4> qpsk_cross_distances(double gamma, const Eigen::MatrixXcd& h);

// Feature extraction x = f(gamma, H) for the two-antenna options i-v.
// Columns are re-indexed by ascending energy gamma ||h_l||^2 (stable on ties)
// before projections/angles are computed, so every option is invariant to
// column permutations of H.
FeatureVector extract(FeatureOption option, double gamma, const Eigen::MatrixXcd& h);

// Nt = 4: the 4 sorted column energies followed by the (theta_h, phi) pairs
// of the 6 re-indexed column pairs in lexicographic order -> 16 features.
FeatureVector extract_multi4(double gamma, const Eigen::MatrixXcd& h);

// Nt = 8: the 8 sorted column energies followed by Q quantiles of the 28
// Hermitian angles and Q quantiles of the 28 pseudo-angles, probabilities
// 0, 1/(Q-1), ..., 1 with linear interpolation -> 8 + 2Q features.
FeatureVector extract_quantile(double gamma, const Eigen::MatrixXcd& h, int quantiles);

}  // namespace smmi

#endif

#ifndef SMMI_NETWORK_HPP
#define SMMI_NETWORK_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "smmi/constellation.hpp"
#include "smmi/features.hpp"

namespace smmi {

// One-hidden-layer MI regressor with linear input/output scaling stages:
//   a0 = g0 o (x - x0) - 1
//   a1 = tanh(W1 a0 + b1)
//   a2 = W2 a1 + b2
//   y  = (a2 + 1) (/) g3 + y0
// The scaling stages map training inputs/targets onto [-1, +1]; they are
// fitted once and frozen, only W1, b1, W2, b2 are trained.
struct NetworkParams {
  Eigen::VectorXd g0, x0;  // input scaling, length F, g0 > 0
  Eigen::MatrixXd w1;      // N x F
  Eigen::VectorXd b1;      // N
  Eigen::MatrixXd w2;      // K x N
  Eigen::VectorXd b2;      // K
  Eigen::VectorXd g3, y0;  // output scaling, length K, g3 > 0

  struct Meta {
    std::string feature_option;                 // "i".."v", "multi4", "quant8", "raw"
    std::vector<ConstellationKind> constellations;
    int nt = 2;
    int quantiles = 0;                          // only meaningful for quant8
  } meta;

  int n_inputs() const { return static_cast<int>(g0.size()); }
  int n_hidden() const { return static_cast<int>(b1.size()); }
  int n_outputs() const { return static_cast<int>(b2.size()); }

  // Throws std::invalid_argument on inconsistent shapes, non-finite entries
  // or non-positive gains.
  void validate() const;
};

// Raw forward pass, y per the four stages above.
Eigen::VectorXd forward(const NetworkParams& params, const Eigen::VectorXd& x);

// Row-per-sample batch forward pass (L x F in, L x K out).
Eigen::MatrixXd forward_batch(const NetworkParams& params, const Eigen::MatrixXd& x);

struct Prediction {
  Eigen::VectorXd y;          // raw network output
  Eigen::VectorXd y_clamped;  // per-output clamp to [0, log2(Nt M_k)]
};

// Inference entry point: raw output plus the copy clamped to the physical
// MI range of each constellation.
Prediction predict(const NetworkParams& params, const Eigen::VectorXd& x);

struct Scalers {
  Eigen::VectorXd g0, x0, g3, y0;
};

// Per-column min/span scaling so that training features map onto [-1, +1]
// and the output stage inverts the same map for the targets. Rejects
// constant columns (naming the column).
Scalers fit_scalers(const Eigen::MatrixXd& features, const Eigen::MatrixXd& targets);

// Versioned JSON model file, lossless round trip. Load re-validates shapes.
void save_model(const NetworkParams& params, const std::string& path);
NetworkParams load_model(const std::string& path);

}  // namespace smmi

#endif

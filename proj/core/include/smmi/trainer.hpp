#ifndef SMMI_TRAINER_HPP
#define SMMI_TRAINER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smmi/network.hpp"

namespace smmi {

struct TrainConfig {
  int n_hidden = 10;
  int max_epochs = 200;
  double lambda_init = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 0.1;
  double lambda_min = 1e-12;
  double lambda_max = 1e12;
  int patience = 6;       // consecutive epochs without a new best validation MSE
  int restarts = 10;
  std::uint64_t seed = 1;

  void validate() const;
};

// Reads documented keys (n_hidden, max_epochs, lambda_init, lambda_up,
// lambda_down, patience, restarts, seed) from a JSON file; missing keys keep
// their defaults.
TrainConfig load_train_config(const std::string& path);

struct TrainReport {
  int epochs_run = 0;
  std::vector<double> train_mse;  // per accepted epoch
  std::vector<double> val_mse;
  int best_epoch = 0;             // epoch of the selected parameters
  int best_restart = 0;
  double best_val_mse = 0.0;
  double test_mse = 0.0;          // evaluated once, on the selected model
  double wall_seconds = 0.0;
  std::string stop_reason;        // max_epochs | patience | lambda_max

  // Appends one CSV record per epoch: restart,epoch,train_mse,val_mse.
  void write_csv(const std::string& path) const;
};

// Regression data in network-input form. MSE throughout is the mean over
// rows and outputs of the squared error.
struct TrainData {
  Eigen::MatrixXd x_train, t_train;
  Eigen::MatrixXd x_val, t_val;
  Eigen::MatrixXd x_test, t_test;
};

// Residuals e (L*K, ordered sample-major) and the Jacobian of e w.r.t. the
// trainable parameters in the order [W1 row-major, b1, W2 row-major, b2].
// The scaling stages are frozen and do not appear in J. Errors are in output
// units: y_k - t_k, so J carries the 1/g3 factor of the output stage.
struct JacobianResult {
  Eigen::VectorXd e;
  Eigen::MatrixXd j;
};

JacobianResult jacobian(const NetworkParams& params, const Eigen::MatrixXd& x,
                        const Eigen::MatrixXd& t);

// One damped Gauss-Newton candidate: solves (J^T J + lambda I) delta = -J^T e
// by a dense symmetric solve and returns params + delta. nullopt signals the
// caller to increase lambda.
std::optional<NetworkParams> lm_step(const NetworkParams& params,
                                     const Eigen::VectorXd& e,
                                     const Eigen::MatrixXd& j, double lambda);

struct TrainResult {
  NetworkParams params;
  TrainReport report;
};

// Multi-restart Levenberg-Marquardt batch training. Per restart: layer-aware
// random init, LM loop with accept/reject on training MSE, early stop on
// `patience` epochs without validation improvement; the restart (and epoch)
// with the best validation MSE wins and test MSE is computed once at the end.
// Deterministic given (seed, data, config).
TrainResult train(const TrainData& data, const NetworkParams::Meta& meta,
                  const TrainConfig& config);

double mse_of(const NetworkParams& params, const Eigen::MatrixXd& x,
              const Eigen::MatrixXd& t);

}  // namespace smmi

#endif

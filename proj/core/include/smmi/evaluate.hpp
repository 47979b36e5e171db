#ifndef SMMI_EVALUATE_HPP
#define SMMI_EVALUATE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "smmi/dataset.hpp"
#include "smmi/network.hpp"

namespace smmi {

// Maps one dataset row to K MI estimates (one per header constellation).
using Predictor = std::function<Eigen::VectorXd(const DatasetRow&)>;

Predictor nn_predictor(const NetworkParams& params);
Predictor jensen_predictor(const std::vector<ConstellationKind>& constellations);
// Fresh Monte Carlo estimates, seeded per (row_id, constellation).
Predictor oracle_predictor(const std::vector<ConstellationKind>& constellations,
                           int n_draws, std::uint64_t seed);

struct ConstellationErrors {
  std::string constellation;
  double three_sigma = 0.0;    // 3x standard deviation of signed errors
  double max_abs_error = 0.0;
  double mean_error = 0.0;     // signed bias
};

struct EvalReport {
  double global_mse = 0.0;     // mean over rows and constellations
  std::vector<ConstellationErrors> per_constellation;
  std::size_t n_rows = 0;
  double predictor_seconds = 0.0;
  // Label-noise floor estimate: mean squared MC standard error of the
  // targets, probed on a row subsample. NaN when not estimated.
  double noise_floor_mse = std::numeric_limits<double>::quiet_NaN();

  std::string to_csv() const;
};

EvalReport evaluate(const Predictor& predictor, const LabeledDataset& dataset,
                    Split split);

// Re-estimates target standard errors on up to n_probe rows of the split
// using the header's n_noise_draws, and returns mean(se^2): no trained
// predictor can be expected to beat this MSE floor against MC labels.
double estimate_label_noise_floor(const LabeledDataset& dataset, Split split,
                                  std::size_t n_probe, std::uint64_t seed);

// Feature matrix of a dataset split under a named option (or any extractor).
using FeatureFn = std::function<Eigen::VectorXd(double gamma, const Eigen::MatrixXcd&)>;
FeatureFn feature_fn(FeatureOption option, int quantiles = 5);
Eigen::MatrixXd feature_matrix(const LabeledDataset& dataset, Split split,
                               const FeatureFn& fn);

}  // namespace smmi

#endif

#ifndef SMMI_EXPERIMENTS_HPP
#define SMMI_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "smmi/complexity.hpp"
#include "smmi/dataset.hpp"
#include "smmi/evaluate.hpp"
#include "smmi/trainer.hpp"

namespace smmi {

// Assembles network training matrices from a labeled dataset under a feature
// extractor (features from (gamma, H), targets from the stored MI labels).
TrainData train_data_from_dataset(const LabeledDataset& dataset, const FeatureFn& fn);

// Trains on a dataset with a named feature option. Convenience wrapper
// filling NetworkParams::Meta from the dataset header.
TrainResult train_on_dataset(const LabeledDataset& dataset, FeatureOption option,
                             const TrainConfig& config, int quantiles = 5);

struct ErgodicPoint {
  double snr_db;
  std::string method;         // oracle | nn | jensen
  std::string constellation;
  double mean_mi;
};

// Ergodic MI vs SNR: per grid point, n_channels Rayleigh draws, instantaneous
// MI per method averaged over the draws. All methods see the same channels.
// The NN entry is omitted when model == nullptr.
std::vector<ErgodicPoint> ergodic_curve(const std::vector<double>& snr_grid_db,
                                        int n_channels, int n_noise_draws,
                                        const std::vector<ConstellationKind>& kinds,
                                        const NetworkParams* model, std::uint64_t seed,
                                        int threads = 0);

std::string ergodic_to_csv(const std::vector<ErgodicPoint>& points);

struct AngleSweepCell {
  double theta_h;
  double phi;
  double mi;
  double std_error;
};

// MI surface over the unit-column-norm channel family parametrized by the
// Hermitian/pseudo angle pair, at fixed gamma. All grid cells share one
// noise stream (common random numbers), so shape comparisons across the grid
// are far more precise than the absolute MC error.
std::vector<AngleSweepCell> angle_sweep(double gamma, const std::vector<double>& theta_grid,
                                        const std::vector<double>& phi_grid,
                                        const Constellation& constellation, int n_draws,
                                        std::uint64_t seed, int threads = 0);

std::string angle_sweep_to_csv(const std::vector<AngleSweepCell>& cells);

struct MethodCost {
  std::string method;
  OpCounts static_counts;
  double wall_seconds = 0.0;   // for n_evals triple evaluations
  int n_evals = 0;
};

// Static op counts plus measured wall time of n_evals triple-MI evaluations
// per method, over a shared set of random (gamma, H) draws.
std::vector<MethodCost> complexity_report(const std::vector<ConstellationKind>& kinds,
                                          FeatureOption option, int n_hidden, int n_evals,
                                          std::uint64_t seed);

struct AblationCell {
  std::string option;
  int n_hidden;
  double test_mse;
  double val_mse;
};

std::vector<AblationCell> feature_ablation(const LabeledDataset& dataset,
                                           const std::vector<FeatureOption>& options,
                                           const std::vector<int>& n_hidden_list,
                                           int restarts, std::uint64_t seed);

// Raw-H inputs for the negative-result baseline: gamma-scaled re/im channel
// entries, row-major (2 Nt Nr features).
Eigen::VectorXd raw_h_features(double gamma, const Eigen::MatrixXcd& h);

struct MultiAntennaResult {
  LabeledDataset dataset;    // header echo; rows kept on disk
  TrainResult training;
  EvalReport eval;
  int feature_length = 0;
};

// Dataset generation (or reuse), training and test evaluation for the
// Nt in {4, 8} extension: multi4 features for Nt = 4, Q-quantile features
// for Nt = 8.
MultiAntennaResult multi_antenna_experiment(int nt, int quantiles,
                                            const GenOptions& gen_options,
                                            const TrainConfig& train_config,
                                            const std::string& dataset_path);

}  // namespace smmi

#endif

#include "smmi/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smmi/jensen.hpp"
#include "smmi/mi_monte_carlo.hpp"
#include "smmi/parallel.hpp"
#include "smmi/rng.hpp"

namespace smmi {

TrainData train_data_from_dataset(const LabeledDataset& dataset, const FeatureFn& fn) {
  TrainData data;
  data.x_train = feature_matrix(dataset, Split::Train, fn);
  data.t_train = dataset.targets_of(Split::Train);
  data.x_val = feature_matrix(dataset, Split::Val, fn);
  data.t_val = dataset.targets_of(Split::Val);
  data.x_test = feature_matrix(dataset, Split::Test, fn);
  data.t_test = dataset.targets_of(Split::Test);
  return data;
}

TrainResult train_on_dataset(const LabeledDataset& dataset, FeatureOption option,
                             const TrainConfig& config, int quantiles) {
  if (feature_nt(option) != dataset.header.nt)
    throw std::invalid_argument("feature option does not match dataset Nt");
  NetworkParams::Meta meta;
  meta.feature_option = to_string(option);
  meta.constellations = dataset.header.constellations;
  meta.nt = dataset.header.nt;
  meta.quantiles = option == FeatureOption::Quant8 ? quantiles : 0;
  return train(train_data_from_dataset(dataset, feature_fn(option, quantiles)), meta,
               config);
}

std::vector<ErgodicPoint> ergodic_curve(const std::vector<double>& snr_grid_db,
                                        int n_channels, int n_noise_draws,
                                        const std::vector<ConstellationKind>& kinds,
                                        const NetworkParams* model, std::uint64_t seed,
                                        int threads) {
  if (snr_grid_db.empty()) throw std::invalid_argument("ergodic_curve: empty grid");
  std::vector<Constellation> consts;
  for (auto kind : kinds) consts.push_back(make_constellation(kind));
  const std::size_t k = kinds.size();
  const std::size_t np = snr_grid_db.size();

  // sums[point][method][constellation]
  const int n_methods = model ? 3 : 2;
  std::vector<std::vector<std::vector<double>>> sums(
      np, std::vector<std::vector<double>>(n_methods, std::vector<double>(k, 0.0)));

  const int nt = model ? model->meta.nt : 2;
  for (std::size_t p = 0; p < np; ++p) {
    const double gamma = db_to_linear(snr_grid_db[p]);
    std::vector<std::vector<std::vector<double>>> per_channel(
        n_channels,
        std::vector<std::vector<double>>(n_methods, std::vector<double>(k, 0.0)));
    parallel_for(static_cast<std::size_t>(n_channels), threads, [&](std::size_t c) {
      const std::uint64_t cell_seed = derive_seed(seed, p, c);
      const ChannelRealization ch{sample_rayleigh_h(cell_seed, nt), gamma};
      for (std::size_t j = 0; j < k; ++j) {
        per_channel[c][0][j] =
            mi_finite(ch, consts[j], n_noise_draws, derive_seed(cell_seed, j + 1)).value;
        per_channel[c][1][j] = jensen_mi(ch, consts[j]);
      }
      if (model) {
        const FeatureFn fn = feature_fn(parse_feature_option(model->meta.feature_option),
                                        model->meta.quantiles > 0 ? model->meta.quantiles : 5);
        const Eigen::VectorXd y = predict(*model, fn(gamma, ch.H)).y_clamped;
        for (std::size_t j = 0; j < k; ++j) per_channel[c][2][j] = y(j);
      }
    });
    for (int c = 0; c < n_channels; ++c)
      for (int m = 0; m < n_methods; ++m)
        for (std::size_t j = 0; j < k; ++j) sums[p][m][j] += per_channel[c][m][j];
  }

  const char* names[] = {"oracle", "jensen", "nn"};
  std::vector<ErgodicPoint> out;
  for (std::size_t p = 0; p < np; ++p)
    for (int m = 0; m < n_methods; ++m)
      for (std::size_t j = 0; j < k; ++j)
        out.push_back({snr_grid_db[p], names[m], to_string(kinds[j]),
                       sums[p][m][j] / n_channels});
  return out;
}

std::string ergodic_to_csv(const std::vector<ErgodicPoint>& points) {
  std::ostringstream out;
  out << "snr_db,method,constellation,mean_mi\n";
  for (const auto& p : points)
    out << p.snr_db << ',' << p.method << ',' << p.constellation << ',' << p.mean_mi
        << '\n';
  return out.str();
}

std::vector<AngleSweepCell> angle_sweep(double gamma, const std::vector<double>& theta_grid,
                                        const std::vector<double>& phi_grid,
                                        const Constellation& constellation, int n_draws,
                                        std::uint64_t seed, int threads) {
  if (theta_grid.empty() || phi_grid.empty())
    throw std::invalid_argument("angle_sweep: empty grid");
  std::vector<AngleSweepCell> cells(theta_grid.size() * phi_grid.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const double theta = theta_grid[i / phi_grid.size()];
    const double phi = phi_grid[i % phi_grid.size()];
    const ChannelRealization ch{angle_parametrized_channel(theta, phi), gamma};
    // shared seed across cells: common random numbers
    const MiEstimate est = mi_finite(ch, constellation, n_draws, seed);
    cells[i] = {theta, phi, est.value, est.std_error};
  });
  return cells;
}

std::string angle_sweep_to_csv(const std::vector<AngleSweepCell>& cells) {
  std::ostringstream out;
  out << "theta_h,phi,mi,std_error\n";
  for (const auto& c : cells)
    out << c.theta_h << ',' << c.phi << ',' << c.mi << ',' << c.std_error << '\n';
  return out.str();
}

std::vector<MethodCost> complexity_report(const std::vector<ConstellationKind>& kinds,
                                          FeatureOption option, int n_hidden, int n_evals,
                                          std::uint64_t seed) {
  if (n_evals < 1) throw std::invalid_argument("complexity_report: n_evals < 1");
  const int nt = feature_nt(option);
  std::vector<Constellation> consts;
  for (auto kind : kinds) consts.push_back(make_constellation(kind));

  // Shared evaluation set.
  std::vector<ChannelRealization> channels;
  channels.reserve(n_evals);
  for (int i = 0; i < n_evals; ++i)
    channels.emplace_back(sample_rayleigh_h(derive_seed(seed, i), nt),
                          db_to_linear(sample_snr_db(derive_seed(seed, i, 99), -20.0, 20.0)));

  // Placeholder network of the right shape; counts and timing do not depend
  // on the weight values.
  Rng rng(derive_seed(seed, 1234));
  const int f = feature_length(option);
  const int k = static_cast<int>(kinds.size());
  NetworkParams params;
  params.g0 = Eigen::VectorXd::Constant(f, 0.5);
  params.x0 = Eigen::VectorXd::Zero(f);
  params.w1.resize(n_hidden, f);
  for (int i = 0; i < n_hidden; ++i)
    for (int j = 0; j < f; ++j) params.w1(i, j) = rng.uniform(-1.0, 1.0);
  params.b1 = Eigen::VectorXd::Zero(n_hidden);
  params.w2.resize(k, n_hidden);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n_hidden; ++j) params.w2(i, j) = rng.uniform(-0.5, 0.5);
  params.b2 = Eigen::VectorXd::Zero(k);
  params.g3 = Eigen::VectorXd::Constant(k, 2.0 / 3.0);
  params.y0 = Eigen::VectorXd::Zero(k);
  params.meta.feature_option = to_string(option);
  params.meta.constellations = kinds;
  params.meta.nt = nt;
  const FeatureFn fn = feature_fn(option);

  volatile double sink = 0.0;  // keep the timed loops observable
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& ch : channels) {
    const Eigen::VectorXd y = forward(params, fn(ch.gamma, ch.H));
    sink = sink + y.sum();
  }
  const auto t1 = std::chrono::steady_clock::now();
  for (const auto& ch : channels) {
    const auto values = jensen_mi_all(ch, consts);
    for (double v : values) sink = sink + v;
  }
  const auto t2 = std::chrono::steady_clock::now();

  std::vector<MethodCost> out(2);
  out[0].method = "nn";
  out[0].static_counts = nn_op_counts(option, n_hidden, k, nt);
  out[0].wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  out[0].n_evals = n_evals;
  out[1].method = "jensen";
  out[1].static_counts = jensen_op_counts(kinds, nt);
  out[1].wall_seconds = std::chrono::duration<double>(t2 - t1).count();
  out[1].n_evals = n_evals;
  return out;
}

std::vector<AblationCell> feature_ablation(const LabeledDataset& dataset,
                                           const std::vector<FeatureOption>& options,
                                           const std::vector<int>& n_hidden_list,
                                           int restarts, std::uint64_t seed) {
  std::vector<AblationCell> table;
  for (auto option : options) {
    for (int n : n_hidden_list) {
      TrainConfig cfg;
      cfg.n_hidden = n;
      cfg.restarts = restarts;
      cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(option), n);
      const TrainResult result = train_on_dataset(dataset, option, cfg);
      table.push_back({to_string(option), n, result.report.test_mse,
                       result.report.best_val_mse});
    }
  }
  return table;
}

Eigen::VectorXd raw_h_features(double gamma, const Eigen::MatrixXcd& h) {
  Eigen::VectorXd x(2 * h.rows() * h.cols());
  Eigen::Index at = 0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      x(at++) = gamma * h(r, c).real();
      x(at++) = gamma * h(r, c).imag();
    }
  }
  return x;
}

MultiAntennaResult multi_antenna_experiment(int nt, int quantiles,
                                            const GenOptions& gen_options,
                                            const TrainConfig& train_config,
                                            const std::string& dataset_path) {
  if (nt != 4 && nt != 8)
    throw std::invalid_argument("multi_antenna_experiment: Nt must be 4 or 8");
  GenOptions gen = gen_options;
  gen.nt = nt;

  MultiAntennaResult result;
  result.dataset = gen_dataset(gen, dataset_path);
  const FeatureOption option = nt == 4 ? FeatureOption::Multi4 : FeatureOption::Quant8;
  result.feature_length = feature_length(option, quantiles);
  result.training = train_on_dataset(result.dataset, option, train_config, quantiles);
  result.eval =
      evaluate(nn_predictor(result.training.params), result.dataset, Split::Test);
  return result;
}

}  // namespace smmi

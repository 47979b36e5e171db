#include "smmi/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smmi/jensen.hpp"
#include "smmi/mi_monte_carlo.hpp"
#include "smmi/rng.hpp"

namespace smmi {

Predictor nn_predictor(const NetworkParams& params) {
  const FeatureOption option = parse_feature_option(params.meta.feature_option);
  const int q = params.meta.quantiles > 0 ? params.meta.quantiles : 5;
  const FeatureFn fn = feature_fn(option, q);
  return [params, fn](const DatasetRow& row) {
    const ChannelRealization ch = row.channel();
    return predict(params, fn(ch.gamma, ch.H)).y_clamped;
  };
}

Predictor jensen_predictor(const std::vector<ConstellationKind>& constellations) {
  std::vector<Constellation> consts;
  for (auto kind : constellations) consts.push_back(make_constellation(kind));
  return [consts](const DatasetRow& row) {
    const auto values = jensen_mi_all(row.channel(), consts);
    return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()).eval();
  };
}

Predictor oracle_predictor(const std::vector<ConstellationKind>& constellations,
                           int n_draws, std::uint64_t seed) {
  std::vector<Constellation> consts;
  for (auto kind : constellations) consts.push_back(make_constellation(kind));
  return [consts, n_draws, seed](const DatasetRow& row) {
    Eigen::VectorXd y(consts.size());
    for (std::size_t k = 0; k < consts.size(); ++k)
      y(static_cast<Eigen::Index>(k)) =
          mi_finite(row.channel(), consts[k], n_draws, derive_seed(seed, row.row_id, k))
              .value;
    return y;
  };
}

std::string EvalReport::to_csv() const {
  std::ostringstream out;
  out << "constellation,three_sigma,max_abs_error,mean_error\n";
  for (const auto& c : per_constellation)
    out << c.constellation << ',' << c.three_sigma << ',' << c.max_abs_error << ','
        << c.mean_error << '\n';
  out << "global_mse," << global_mse << "\nn_rows," << n_rows << "\npredictor_seconds,"
      << predictor_seconds << "\nnoise_floor_mse," << noise_floor_mse << '\n';
  return out.str();
}

EvalReport evaluate(const Predictor& predictor, const LabeledDataset& dataset,
                    Split split) {
  const auto rows = dataset.split_rows(split);
  if (rows.empty()) throw std::invalid_argument("evaluate: empty split");
  const std::size_t k = dataset.header.constellations.size();

  Eigen::MatrixXd errors(rows.size(), k);
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Eigen::VectorXd y = predictor(*rows[i]);
    if (static_cast<std::size_t>(y.size()) != k)
      throw std::invalid_argument("evaluate: predictor does not cover all constellations");
    for (std::size_t c = 0; c < k; ++c)
      errors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          y(static_cast<Eigen::Index>(c)) - rows[i]->targets[c];
  }
  const auto t1 = std::chrono::steady_clock::now();

  EvalReport report;
  report.n_rows = rows.size();
  report.predictor_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.global_mse = errors.array().square().mean();
  for (std::size_t c = 0; c < k; ++c) {
    const auto col = errors.col(static_cast<Eigen::Index>(c));
    ConstellationErrors ce;
    ce.constellation = to_string(dataset.header.constellations[c]);
    ce.mean_error = col.mean();
    const double var = (col.array() - ce.mean_error).square().sum() /
                       std::max<double>(1.0, static_cast<double>(col.size() - 1));
    ce.three_sigma = 3.0 * std::sqrt(var);
    ce.max_abs_error = col.array().abs().maxCoeff();
    report.per_constellation.push_back(ce);
  }
  return report;
}

double estimate_label_noise_floor(const LabeledDataset& dataset, Split split,
                                  std::size_t n_probe, std::uint64_t seed) {
  const auto rows = dataset.split_rows(split);
  if (rows.empty()) throw std::invalid_argument("noise floor: empty split");
  const std::size_t n = std::min(n_probe, rows.size());
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // spread probes evenly over the split
    const auto& row = *rows[i * rows.size() / n];
    for (std::size_t k = 0; k < dataset.header.constellations.size(); ++k) {
      const auto est = mi_finite(row.channel(),
                                 make_constellation(dataset.header.constellations[k]),
                                 dataset.header.n_noise_draws,
                                 derive_seed(seed, row.row_id, k));
      acc += est.std_error * est.std_error;
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

FeatureFn feature_fn(FeatureOption option, int quantiles) {
  if (option == FeatureOption::Quant8)
    return [quantiles](double gamma, const Eigen::MatrixXcd& h) {
      return extract_quantile(gamma, h, quantiles).values;
    };
  return [option](double gamma, const Eigen::MatrixXcd& h) {
    return extract(option, gamma, h).values;
  };
}

Eigen::MatrixXd feature_matrix(const LabeledDataset& dataset, Split split,
                               const FeatureFn& fn) {
  const auto rows = dataset.split_rows(split);
  if (rows.empty()) throw std::invalid_argument("feature_matrix: empty split");
  const Eigen::VectorXd first = fn(db_to_linear(rows[0]->gamma_db), rows[0]->h);
  Eigen::MatrixXd x(rows.size(), first.size());
  x.row(0) = first.transpose();
  for (std::size_t i = 1; i < rows.size(); ++i)
    x.row(static_cast<Eigen::Index>(i)) =
        fn(db_to_linear(rows[i]->gamma_db), rows[i]->h).transpose();
  return x;
}

}  // namespace smmi

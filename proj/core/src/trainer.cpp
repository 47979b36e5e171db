#include "smmi/trainer.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "smmi/errors.hpp"
#include "smmi/rng.hpp"

namespace smmi {

void TrainConfig::validate() const {
  if (n_hidden < 1 || max_epochs < 1 || patience < 1 || restarts < 1)
    throw std::invalid_argument("train config: counts must be positive");
  if (!(lambda_init > 0.0) || !(lambda_up > 1.0) || !(lambda_down > 0.0) ||
      !(lambda_down < 1.0))
    throw std::invalid_argument("train config: need lambda_up > 1 > lambda_down > 0");
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
    throw std::invalid_argument("train config: bad lambda bounds");
}

TrainConfig load_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open train config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed train config " + path + ": " + e.what());
  }
  TrainConfig c;
  c.n_hidden = j.value("n_hidden", c.n_hidden);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.lambda_init = j.value("lambda_init", c.lambda_init);
  c.lambda_up = j.value("lambda_up", c.lambda_up);
  c.lambda_down = j.value("lambda_down", c.lambda_down);
  c.patience = j.value("patience", c.patience);
  c.restarts = j.value("restarts", c.restarts);
  c.seed = j.value("seed", c.seed);
  c.validate();
  return c;
}

void TrainReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open report file: " + path);
  out << "epoch,train_mse,val_mse\n";
  for (std::size_t i = 0; i < train_mse.size(); ++i)
    out << i + 1 << ',' << train_mse[i] << ',' << val_mse[i] << '\n';
}

double mse_of(const NetworkParams& params, const Eigen::MatrixXd& x,
              const Eigen::MatrixXd& t) {
  return (forward_batch(params, x) - t).squaredNorm() /
         static_cast<double>(x.rows() * t.cols());
}

JacobianResult jacobian(const NetworkParams& params, const Eigen::MatrixXd& x,
                        const Eigen::MatrixXd& t) {
  if (x.rows() == 0) throw std::invalid_argument("jacobian: empty batch");
  const int f = params.n_inputs();
  const int n = params.n_hidden();
  const int k = params.n_outputs();
  const Eigen::Index rows = x.rows() * k;
  const int n_params = n * f + n + k * n + k;
  const int off_b1 = n * f;
  const int off_w2 = off_b1 + n;
  const int off_b2 = off_w2 + k * n;

  JacobianResult out;
  out.e.resize(rows);
  out.j = Eigen::MatrixXd::Zero(rows, n_params);

  Eigen::VectorXd a0(f), z(n), a1(n), dtanh(n), y(k);
  for (Eigen::Index s = 0; s < x.rows(); ++s) {
    a0 = (params.g0.array() * (x.row(s).transpose() - params.x0).array() - 1.0).matrix();
    z = params.w1 * a0 + params.b1;
    a1 = z.array().tanh().matrix();
    dtanh = (1.0 - a1.array().square()).matrix();
    y = ((params.w2 * a1 + params.b2).array() + 1.0).matrix().cwiseQuotient(params.g3) +
        params.y0;
    for (int ko = 0; ko < k; ++ko) {
      const Eigen::Index r = s * k + ko;
      const double inv_g3 = 1.0 / params.g3(ko);
      out.e(r) = y(ko) - t(s, ko);
      // output layer
      for (int nn = 0; nn < n; ++nn) out.j(r, off_w2 + ko * n + nn) = a1(nn) * inv_g3;
      out.j(r, off_b2 + ko) = inv_g3;
      // hidden layer through the tanh
      for (int nn = 0; nn < n; ++nn) {
        const double chain = params.w2(ko, nn) * inv_g3 * dtanh(nn);
        out.j.block(r, nn * f, 1, f) = chain * a0.transpose();
        out.j(r, off_b1 + nn) = chain;
      }
    }
  }
  return out;
}

std::optional<NetworkParams> lm_step(const NetworkParams& params,
                                     const Eigen::VectorXd& e,
                                     const Eigen::MatrixXd& j, double lambda) {
  if (!e.allFinite() || !j.allFinite())
    throw std::invalid_argument("lm_step: non-finite residuals or Jacobian");
  const int n_params = static_cast<int>(j.cols());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_params, n_params);
  a.selfadjointView<Eigen::Lower>().rankUpdate(j.transpose());
  a.diagonal().array() += lambda;
  const Eigen::VectorXd g = j.transpose() * e;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a.selfadjointView<Eigen::Lower>());
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd delta = ldlt.solve(-g);
  if (!delta.allFinite()) return std::nullopt;

  const int f = params.n_inputs();
  const int n = params.n_hidden();
  const int k = params.n_outputs();
  NetworkParams cand = params;
  int at = 0;
  for (int nn = 0; nn < n; ++nn)
    for (int ff = 0; ff < f; ++ff) cand.w1(nn, ff) += delta(at++);
  for (int nn = 0; nn < n; ++nn) cand.b1(nn) += delta(at++);
  for (int ko = 0; ko < k; ++ko)
    for (int nn = 0; nn < n; ++nn) cand.w2(ko, nn) += delta(at++);
  for (int ko = 0; ko < k; ++ko) cand.b2(ko) += delta(at++);
  return cand;
}

namespace {

// Nguyen-Widrow style init: random hidden directions scaled so the active
// regions of the N units tile the [-1, 1]^F input box; small output layer.
NetworkParams init_params(const Scalers& scalers, const NetworkParams::Meta& meta,
                          int n_hidden, std::uint64_t seed) {
  const int f = static_cast<int>(scalers.g0.size());
  const int k = static_cast<int>(scalers.g3.size());
  Rng rng(seed);
  NetworkParams p;
  p.g0 = scalers.g0;
  p.x0 = scalers.x0;
  p.g3 = scalers.g3;
  p.y0 = scalers.y0;
  p.meta = meta;
  p.w1.resize(n_hidden, f);
  p.b1.resize(n_hidden);
  const double beta = 0.7 * std::pow(static_cast<double>(n_hidden), 1.0 / f);
  for (int nn = 0; nn < n_hidden; ++nn) {
    Eigen::VectorXd dir(f);
    for (int ff = 0; ff < f; ++ff) dir(ff) = rng.uniform(-1.0, 1.0);
    const double norm = dir.norm();
    p.w1.row(nn) = (norm > 0 ? beta / norm : beta) * dir.transpose();
    const double spread = n_hidden > 1
        ? -1.0 + 2.0 * static_cast<double>(nn) / (n_hidden - 1)
        : 0.0;
    p.b1(nn) = beta * spread * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  }
  p.w2.resize(k, n_hidden);
  p.b2.resize(k);
  for (int ko = 0; ko < k; ++ko) {
    for (int nn = 0; nn < n_hidden; ++nn) p.w2(ko, nn) = rng.uniform(-0.5, 0.5);
    p.b2(ko) = rng.uniform(-0.5, 0.5);
  }
  return p;
}

struct RestartOutcome {
  NetworkParams best_params;
  double best_val = 0.0;
  int best_epoch = 0;
  std::vector<double> train_curve, val_curve;
  std::string stop_reason;
};

RestartOutcome run_restart(const TrainData& data, const Scalers& scalers,
                           const NetworkParams::Meta& meta, const TrainConfig& cfg,
                           std::uint64_t seed) {
  RestartOutcome out;
  NetworkParams params = init_params(scalers, meta, cfg.n_hidden, seed);
  double lambda = cfg.lambda_init;
  double train_mse = mse_of(params, data.x_train, data.t_train);

  out.best_params = params;
  out.best_val = mse_of(params, data.x_val, data.t_val);
  out.best_epoch = 0;
  out.stop_reason = "max_epochs";

  int val_fails = 0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const JacobianResult jr = jacobian(params, data.x_train, data.t_train);
    NetworkParams accepted = params;
    double accepted_mse = train_mse;
    bool stepped = false;
    while (lambda <= cfg.lambda_max) {
      const auto cand = lm_step(params, jr.e, jr.j, lambda);
      if (cand) {
        const double cand_mse = mse_of(*cand, data.x_train, data.t_train);
        if (cand_mse < train_mse) {
          accepted = *cand;
          accepted_mse = cand_mse;
          lambda = std::max(lambda * cfg.lambda_down, cfg.lambda_min);
          stepped = true;
          break;
        }
      }
      lambda *= cfg.lambda_up;
    }
    if (!stepped) {               // damping exhausted: converged or stuck
      out.stop_reason = "lambda_max";
      break;
    }
    assert(accepted_mse <= train_mse);
    params = accepted;
    train_mse = accepted_mse;

    const double val = mse_of(params, data.x_val, data.t_val);
    out.train_curve.push_back(train_mse);
    out.val_curve.push_back(val);
    if (val < out.best_val) {
      out.best_val = val;
      out.best_params = params;
      out.best_epoch = epoch;
      val_fails = 0;
    } else {
      ++val_fails;
      if (val_fails >= cfg.patience) {
        out.stop_reason = "patience";
        break;
      }
    }
  }
  return out;
}

}  // namespace

TrainResult train(const TrainData& data, const NetworkParams::Meta& meta,
                  const TrainConfig& config) {
  config.validate();
  if (data.x_train.rows() == 0 || data.x_val.rows() == 0)
    throw std::invalid_argument("train: empty train or validation split");

  const auto t0 = std::chrono::steady_clock::now();
  // Scaling stages frozen from training-split statistics only; a constant
  // target column (degenerate dataset) is rejected here.
  const Scalers scalers = fit_scalers(data.x_train, data.t_train);

  TrainResult result;
  bool have_best = false;
  for (int r = 0; r < config.restarts; ++r) {
    RestartOutcome outcome = run_restart(data, scalers, meta, config,
                                         derive_seed(config.seed, r));
    if (!have_best || outcome.best_val < result.report.best_val_mse) {
      have_best = true;
      result.params = outcome.best_params;
      result.report.best_val_mse = outcome.best_val;
      result.report.best_epoch = outcome.best_epoch;
      result.report.best_restart = r;
      result.report.train_mse = outcome.train_curve;
      result.report.val_mse = outcome.val_curve;
      result.report.epochs_run = static_cast<int>(outcome.train_curve.size());
      result.report.stop_reason = outcome.stop_reason;
    }
  }
  result.report.test_mse = data.x_test.rows() > 0
      ? mse_of(result.params, data.x_test, data.t_test)
      : std::numeric_limits<double>::quiet_NaN();
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace smmi

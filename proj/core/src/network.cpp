#include "smmi/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "smmi/errors.hpp"

namespace smmi {

void NetworkParams::validate() const {
  const int f = n_inputs();
  const int n = n_hidden();
  const int k = n_outputs();
  if (f < 1 || n < 1 || k < 1)
    throw std::invalid_argument("network: empty layer");
  if (x0.size() != f || w1.rows() != n || w1.cols() != f || w2.rows() != k ||
      w2.cols() != n || g3.size() != k || y0.size() != k)
    throw std::invalid_argument("network: inconsistent parameter shapes");
  const bool finite = g0.allFinite() && x0.allFinite() && w1.allFinite() &&
                      b1.allFinite() && w2.allFinite() && b2.allFinite() &&
                      g3.allFinite() && y0.allFinite();
  if (!finite) throw std::invalid_argument("network: non-finite parameter");
  if ((g0.array() <= 0.0).any() || (g3.array() <= 0.0).any())
    throw std::invalid_argument("network: scaling gains must be positive");
}

Eigen::VectorXd forward(const NetworkParams& params, const Eigen::VectorXd& x) {
  if (x.size() != params.n_inputs())
    throw std::invalid_argument("forward: feature length mismatch");
  const Eigen::VectorXd a0 =
      (params.g0.array() * (x - params.x0).array() - 1.0).matrix();
  const Eigen::VectorXd a1 = (params.w1 * a0 + params.b1).array().tanh().matrix();
  const Eigen::VectorXd a2 = params.w2 * a1 + params.b2;
  return ((a2.array() + 1.0) / params.g3.array()).matrix() + params.y0;
}

Eigen::MatrixXd forward_batch(const NetworkParams& params, const Eigen::MatrixXd& x) {
  if (x.cols() != params.n_inputs())
    throw std::invalid_argument("forward_batch: feature length mismatch");
  Eigen::MatrixXd a0 =
      ((x.rowwise() - params.x0.transpose()).array().rowwise() *
       params.g0.transpose().array() - 1.0).matrix();
  Eigen::MatrixXd a1 =
      ((a0 * params.w1.transpose()).rowwise() + params.b1.transpose())
          .array().tanh().matrix();
  Eigen::MatrixXd a2 = (a1 * params.w2.transpose()).rowwise() + params.b2.transpose();
  return ((a2.array() + 1.0).rowwise() / params.g3.transpose().array()).matrix()
             .rowwise() + params.y0.transpose();
}

Prediction predict(const NetworkParams& params, const Eigen::VectorXd& x) {
  Prediction out;
  out.y = forward(params, x);
  out.y_clamped = out.y;
  const int k = params.n_outputs();
  if (static_cast<int>(params.meta.constellations.size()) == k) {
    for (int i = 0; i < k; ++i) {
      const double max_mi =
          make_constellation(params.meta.constellations[i]).max_mi(params.meta.nt);
      out.y_clamped(i) = std::clamp(out.y(i), 0.0, max_mi);
    }
  } else {
    out.y_clamped = out.y.cwiseMax(0.0);
  }
  return out;
}

Scalers fit_scalers(const Eigen::MatrixXd& features, const Eigen::MatrixXd& targets) {
  if (features.rows() == 0 || features.rows() != targets.rows())
    throw std::invalid_argument("fit_scalers: empty or mismatched matrices");
  Scalers s;
  s.x0.resize(features.cols());
  s.g0.resize(features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const double lo = features.col(j).minCoeff();
    const double hi = features.col(j).maxCoeff();
    if (!(hi > lo))
      throw std::invalid_argument("fit_scalers: constant feature column " +
                                  std::to_string(j));
    s.x0(j) = lo;
    s.g0(j) = 2.0 / (hi - lo);
  }
  s.y0.resize(targets.cols());
  s.g3.resize(targets.cols());
  for (Eigen::Index k = 0; k < targets.cols(); ++k) {
    const double lo = targets.col(k).minCoeff();
    const double hi = targets.col(k).maxCoeff();
    if (!(hi > lo))
      throw std::invalid_argument("fit_scalers: constant target column " +
                                  std::to_string(k));
    s.y0(k) = lo;
    s.g3(k) = 2.0 / (hi - lo);
  }
  return s;
}

namespace {

constexpr int kModelVersion = 1;

nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

nlohmann::json mat_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json a = nlohmann::json::array();  // row-major flat
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
  return a;
}

Eigen::VectorXd vec_from_json(const nlohmann::json& a) {
  Eigen::VectorXd v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
  return v;
}

Eigen::MatrixXd mat_from_json(const nlohmann::json& a, int rows, int cols) {
  if (static_cast<int>(a.size()) != rows * cols)
    throw DataError("model file: weight array size mismatch");
  Eigen::MatrixXd m(rows, cols);
  std::size_t at = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = a[at++];
  return m;
}

}  // namespace

void save_model(const NetworkParams& params, const std::string& path) {
  params.validate();
  nlohmann::ordered_json j;
  j["format"] = "smmi-model";
  j["version"] = kModelVersion;
  j["n_inputs"] = params.n_inputs();
  j["n_hidden"] = params.n_hidden();
  j["n_outputs"] = params.n_outputs();
  j["feature_option"] = params.meta.feature_option;
  nlohmann::ordered_json consts = nlohmann::ordered_json::array();
  for (auto kind : params.meta.constellations) consts.push_back(to_string(kind));
  j["constellations"] = consts;
  j["nt"] = params.meta.nt;
  j["quantiles"] = params.meta.quantiles;
  j["g0"] = vec_to_json(params.g0);
  j["x0"] = vec_to_json(params.x0);
  j["w1"] = mat_to_json(params.w1);
  j["b1"] = vec_to_json(params.b1);
  j["w2"] = mat_to_json(params.w2);
  j["b2"] = vec_to_json(params.b2);
  j["g3"] = vec_to_json(params.g3);
  j["y0"] = vec_to_json(params.y0);

  std::ofstream out(path);
  if (!out) throw DataError("cannot open model file for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing model file: " + path);
}

NetworkParams load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed model file " + path + ": " + e.what());
  }
  try {
    if (j.at("format") != "smmi-model") throw DataError("not a model file: " + path);
    if (j.at("version") != kModelVersion)
      throw DataError("unsupported model version in " + path);
    const int f = j.at("n_inputs");
    const int n = j.at("n_hidden");
    const int k = j.at("n_outputs");
    NetworkParams p;
    p.g0 = vec_from_json(j.at("g0"));
    p.x0 = vec_from_json(j.at("x0"));
    p.w1 = mat_from_json(j.at("w1"), n, f);
    p.b1 = vec_from_json(j.at("b1"));
    p.w2 = mat_from_json(j.at("w2"), k, n);
    p.b2 = vec_from_json(j.at("b2"));
    p.g3 = vec_from_json(j.at("g3"));
    p.y0 = vec_from_json(j.at("y0"));
    p.meta.feature_option = j.at("feature_option");
    p.meta.nt = j.at("nt");
    p.meta.quantiles = j.at("quantiles");
    for (const auto& name : j.at("constellations"))
      p.meta.constellations.push_back(parse_constellation(name));
    if (p.n_inputs() != f || p.n_hidden() != n || p.n_outputs() != k)
      throw DataError("model file: declared shapes do not match arrays");
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("model file: ") + e.what());
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed model file " + path + ": " + e.what());
  }
}

}  // namespace smmi

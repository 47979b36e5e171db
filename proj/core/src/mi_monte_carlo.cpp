#include "smmi/mi_monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "smmi/parallel.hpp"
#include "smmi/rng.hpp"

namespace smmi {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln(2)

void check_inputs(const ChannelRealization& channel, int n_draws) {
  if (n_draws < 1) throw std::invalid_argument("n_draws must be >= 1");
  if (!channel.H.allFinite() || !std::isfinite(channel.gamma) || channel.gamma < 0.0)
    throw std::invalid_argument("non-finite channel or gamma");
}

double stderr_of_mean(const Eigen::VectorXd& per_draw) {
  const Eigen::Index n = per_draw.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mean = per_draw.mean();
  const double ss = (per_draw.array() - mean).square().sum();
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace

double MiEstimate::clamped(double max_mi) const {
  return std::clamp(value, 0.0, max_mi);
}

MiEstimate mi_finite(const ChannelRealization& channel, const Constellation& constellation,
                     int n_draws, std::uint64_t seed) {
  check_inputs(channel, n_draws);
  const int nr = channel.nr();
  const int m = constellation.size();
  const int n = channel.nt() * m;  // supersymbol count
  const double sq_gamma = std::sqrt(channel.gamma);

  // Scaled supersymbols x_j = sqrt(gamma) h_l s_k, antenna-major.
  Eigen::MatrixXcd x(nr, n);
  for (int l = 0; l < channel.nt(); ++l)
    for (int k = 0; k < m; ++k)
      x.col(l * m + k) = sq_gamma * channel.H.col(l) * constellation.symbols[k];

  // Pairwise constants A(j, j') = ||x_j - x_j'||^2. Exponent of pair (j, j')
  // under noise w: -A(j,j') - r_j + r_j' with r_j = 2 Re(x_j^H w).
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int jp = 0; jp < n; ++jp) a(j, jp) = (x.col(j) - x.col(jp)).squaredNorm();

  Rng rng(seed);
  Eigen::VectorXcd w(nr);
  Eigen::VectorXd r(n), row(n), per_draw(n_draws);
  for (int d = 0; d < n_draws; ++d) {
    for (int i = 0; i < nr; ++i) w(i) = rng.complex_normal();
    r.noalias() = 2.0 * (x.adjoint() * w).real();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      row = r - a.row(j).transpose();
      const double mx = row.maxCoeff();
      const double lse = mx + std::log((row.array() - mx).exp().sum());
      acc += lse - r(j);
    }
    per_draw(d) = acc * kInvLn2 / n;
  }

  MiEstimate est;
  est.value = std::log2(static_cast<double>(n)) - per_draw.mean();
  est.n_noise_draws = n_draws;
  est.std_error = stderr_of_mean(per_draw);
  return est;
}

MiEstimate capacity_gaussian(const ChannelRealization& channel, int n_draws,
                             std::uint64_t seed) {
  check_inputs(channel, n_draws);
  const int nr = channel.nr();
  const int nt = channel.nt();
  const double gamma = channel.gamma;

  // Phi_l = gamma h_l h_l^H + I is a rank-1 update of the identity:
  //   y^H Phi_l^-1 y = ||y||^2 - beta_l |h_l^H y|^2,  beta_l = g/(1 + g||h_l||^2)
  //   ln det Phi_l   = ln(1 + g||h_l||^2)
  Eigen::VectorXd beta(nt), logdet(nt);
  for (int l = 0; l < nt; ++l) {
    const double e = gamma * channel.H.col(l).squaredNorm();
    beta(l) = gamma / (1.0 + e);
    logdet(l) = std::log1p(e);
  }

  const double ln_pi = std::log(std::numbers::pi);
  Rng rng(seed);
  Eigen::VectorXcd y(nr);
  Eigen::VectorXd terms(nt), per_draw(n_draws);
  for (int d = 0; d < n_draws; ++d) {
    const int l = static_cast<int>(rng.index(nt));
    const std::complex<double> s = rng.complex_normal();
    for (int i = 0; i < nr; ++i) y(i) = rng.complex_normal();
    y += std::sqrt(gamma) * s * channel.H.col(l);
    const double ynorm2 = y.squaredNorm();
    for (int lp = 0; lp < nt; ++lp) {
      const double proj = std::norm(channel.H.col(lp).dot(y));
      terms(lp) = -(ynorm2 - beta(lp) * proj) - logdet(lp);
    }
    const double mx = terms.maxCoeff();
    const double ln_mix = mx + std::log((terms.array() - mx).exp().sum()) -
                          std::log(static_cast<double>(nt)) - nr * ln_pi;
    per_draw(d) = -ln_mix * kInvLn2;  // -log2 of the mixture density
  }

  const double h_w = nr * std::log2(std::numbers::pi * std::numbers::e);
  MiEstimate est;
  est.value = per_draw.mean() - h_w;
  est.n_noise_draws = n_draws;
  est.std_error = stderr_of_mean(per_draw);
  return est;
}

std::vector<std::vector<MiEstimate>> mi_finite_batch(
    const std::vector<ChannelRealization>& channels,
    const std::vector<Constellation>& constellations, int n_draws,
    std::uint64_t base_seed, int threads) {
  if (channels.empty() || constellations.empty())
    throw std::invalid_argument("mi_finite_batch: empty inputs");
  const std::size_t nc = channels.size();
  const std::size_t nk = constellations.size();
  std::vector<std::vector<MiEstimate>> out(nc, std::vector<MiEstimate>(nk));
  parallel_for(nc * nk, threads, [&](std::size_t cell) {
    const std::size_t i = cell / nk;
    const std::size_t j = cell % nk;
    out[i][j] = mi_finite(channels[i], constellations[j], n_draws,
                          derive_seed(base_seed, i, j));
  });
  return out;
}

}  // namespace smmi

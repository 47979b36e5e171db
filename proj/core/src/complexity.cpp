#include "smmi/complexity.hpp"

#include <sstream>
#include <stdexcept>

namespace smmi {

namespace {

// Preprocessing cost of the feature options, counted on the written
// formulas with Nr = Nt receive antennas:
//  - column energy gamma||h_l||^2: 2Nr products for the squared magnitudes
//    plus 1 for the gamma scale
//  - projection p = h_i^H h_j: Nr complex multiplications = 4Nr products
//  - angle pair via cos(theta) = sqrt(|p|^2/(n_i n_j)): |p|^2 (2), n_i n_j (1),
//    the ratio (1) -> 4 products on top of p, plus sqrt/acos/atan2
//  - normalized projection Re/Im{p/(|h_i||h_j|)}: |h_i||h_j| (1) and two
//    divisions on top of p, plus one sqrt
//  - QPSK cross distance gamma||h_1 - u h_2||^2: Nr complex mults for u h_2
//    (4Nr), 2Nr for the squared norm, 1 for gamma
OpCounts preprocessing(FeatureOption option, int nt, int quantiles) {
  const int nr = nt;
  const long long energy = nt * (2LL * nr + 1);
  const long long proj = 4LL * nr;
  const long long pairs = nt * (nt - 1) / 2;
  const long long distance4 = 4LL * (4LL * nr + 2LL * nr + 1);

  OpCounts c;
  switch (option) {
    case FeatureOption::I:
      c.real_products = energy + proj + 1 + 2;
      c.other_nonlinear = 1;  // sqrt
      break;
    case FeatureOption::II:
      c.real_products = energy + proj + 4;
      c.other_nonlinear = 3;  // sqrt, acos, atan2
      break;
    case FeatureOption::III:
      c.real_products = energy + proj + distance4;
      break;
    case FeatureOption::IV:
      c.real_products = energy + proj + distance4 + 1 + 2;
      c.other_nonlinear = 1;
      break;
    case FeatureOption::V:
      c.real_products = energy + proj + distance4 + 4;
      c.other_nonlinear = 3;
      break;
    case FeatureOption::Multi4:
    case FeatureOption::Quant8:
      c.real_products = energy + pairs * (proj + 4);
      c.other_nonlinear = 3 * pairs;
      if (option == FeatureOption::Quant8)
        c.real_products += 4LL * quantiles;  // linear interpolation of 2Q quantiles
      break;
  }
  return c;
}

}  // namespace

OpCounts nn_op_counts(FeatureOption option, int n_hidden, int n_outputs, int nt,
                      int quantiles) {
  if (feature_nt(option) != nt)
    throw std::invalid_argument("nn_op_counts: option does not match Nt");
  const long long f = feature_length(option, quantiles);
  const long long n = n_hidden;
  const long long k = n_outputs;

  OpCounts c = preprocessing(option, nt, quantiles);
  c.real_products += f;              // input scaling g0 o (x - x0)
  c.real_products += n * (f + 1);    // hidden affine stage, one MAC per parameter
  c.real_products += 2 * n;          // tanh internals: 2x and the division
  c.real_products += k * (n + 1);    // output affine stage
  c.real_products += k;              // output scaling (a2 + 1) / g3
  c.exp_class += n;                  // one exp per tanh
  return c;
}

OpCounts jensen_op_counts(const std::vector<ConstellationKind>& constellations, int nt) {
  const int nr = nt;
  OpCounts c;
  c.other_nonlinear = 1;  // sqrt(gamma)
  // H^H H, Hermitian: upper triangle plus diagonal, Nr complex mults per entry.
  c.real_products += static_cast<long long>(nt) * (nt + 1) / 2 * 4 * nr;
  for (auto kind : constellations) {
    const long long m = make_constellation(kind).size();
    const long long n = nt * m;       // supersymbols
    const long long pairs = n * n;
    // supersymbols sqrt(g) h_l s_k: Nr complex mults + Nr real-complex scales
    c.real_products += n * (4LL * nr + 2LL * nr);
    // per pair: (H^H H) dx (Nt^2 complex mults), dx^H (...) (Nt complex mults),
    // and the -1/2 scale
    c.real_products += pairs * (4LL * nt * nt + 4LL * nt + 1);
    c.exp_class += pairs;
    c.real_products += 1;             // division by (Nt M)^2
    c.log2_class += 1;
  }
  return c;
}

std::string to_string(const OpCounts& counts) {
  std::ostringstream out;
  out << "products=" << counts.real_products << " exp=" << counts.exp_class
      << " log2=" << counts.log2_class << " other=" << counts.other_nonlinear;
  return out.str();
}

}  // namespace smmi

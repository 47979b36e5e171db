#ifndef SMMI_COMPLEXITY_HPP
#define SMMI_COMPLEXITY_HPP

#include <string>
#include <vector>

#include "smmi/constellation.hpp"
#include "smmi/features.hpp"

namespace smmi {

// Static operation counts for one triple-MI evaluation (all constellations at
// once), itemized per the written form of each method.
//
// Counting convention:
//  - real_products: real multiplications and divisions. Affine network
//    stages are counted as one multiply-accumulate per parameter, biases
//    included: N(F+1) for the hidden layer, K(N+1) for the output layer.
//    tanh contributes 2 product-class ops per unit from its
//    2/(1 + e^{-2x}) - 1 form. Plain additions, subtractions and sorting are
//    not counted.
//  - exp_class: exp evaluations; one tanh counts as one.
//  - log2_class: log2 evaluations.
//  - other_nonlinear: sqrt / acos / atan2 evaluations.
struct OpCounts {
  long long real_products = 0;
  long long exp_class = 0;
  long long log2_class = 0;
  long long other_nonlinear = 0;
};

// Network evaluation cost including the feature preprocessing of the option.
OpCounts nn_op_counts(FeatureOption option, int n_hidden, int n_outputs,
                      int nt = 2, int quantiles = 5);

// Jensen approximation cost, one (Nt M)^2 difference sweep per constellation
// with the quadratic form evaluated as written.
OpCounts jensen_op_counts(const std::vector<ConstellationKind>& constellations, int nt = 2);

std::string to_string(const OpCounts& counts);

}  // namespace smmi

#endif

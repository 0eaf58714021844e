#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "linkgen/net.hpp"

namespace linkgen {

// Bias-corrected Adam. Moments mirror the parameter shapes.
struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::int64_t step = 0;
  std::vector<Eigen::MatrixXd> m_weights, v_weights;
  std::vector<Eigen::VectorXd> m_biases, v_biases;

  static AdamState zeros_like(const DenseNet& net);
};

// One Adam update in place. Refuses (throws NumericError, state untouched)
// when any gradient entry is non-finite. Throws std::domain_error on shape
// mismatch.
void adam_step(AdamState& state, DenseNet& net, const Gradients& grads);

}  // namespace linkgen

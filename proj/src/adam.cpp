#include "linkgen/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "linkgen/errors.hpp"

namespace linkgen {

AdamState AdamState::zeros_like(const DenseNet& net) {
  AdamState s;
  for (const auto& w : net.weights) {
    s.m_weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    s.v_weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  }
  for (const auto& b : net.biases) {
    s.m_biases.push_back(Eigen::VectorXd::Zero(b.size()));
    s.v_biases.push_back(Eigen::VectorXd::Zero(b.size()));
  }
  return s;
}

void adam_step(AdamState& state, DenseNet& net, const Gradients& grads) {
  const std::size_t layers = net.weights.size();
  if (grads.weights.size() != layers || grads.biases.size() != layers ||
      state.m_weights.size() != layers || state.m_biases.size() != layers)
    throw std::domain_error("adam_step: layer count mismatch");
  for (std::size_t l = 0; l < layers; ++l) {
    if (grads.weights[l].rows() != net.weights[l].rows() ||
        grads.weights[l].cols() != net.weights[l].cols() ||
        grads.biases[l].size() != net.biases[l].size())
      throw std::domain_error("adam_step: gradient shape mismatch");
  }
  if (!grads.all_finite())
    throw NumericError("adam_step: non-finite gradient, update refused");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v + (1.0 - state.beta2) * g.array().square().matrix();
    param.array() -= state.learning_rate * (m.array() / bc1) /
                     ((v.array() / bc2).sqrt() + state.epsilon);
  };
  for (std::size_t l = 0; l < layers; ++l) {
    update(net.weights[l], state.m_weights[l], state.v_weights[l],
           grads.weights[l]);
    update(net.biases[l], state.m_biases[l], state.v_biases[l],
           grads.biases[l]);
  }
}

}  // namespace linkgen

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "linkgen/rng.hpp"

namespace linkgen {

// x * sigmoid(x), elementwise, as an Eigen expression.
template <typename Derived>
auto silu(const Eigen::ArrayBase<Derived>& x) {
  return x / (1.0 + (-x).exp());
}

// d/dx silu(x) = sigmoid(x) * (1 + x * (1 - sigmoid(x))).
template <typename Derived>
auto silu_grad(const Eigen::ArrayBase<Derived>& x) {
  auto sig = 1.0 / (1.0 + (-x).exp());
  return sig * (1.0 + x * (1.0 - sig));
}

enum class Activation { kSiLU };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

// Dense-stack shape: input -> hidden... -> output logits.
struct Architecture {
  int input_dim = 0;
  std::vector<int> hidden_dims;
  int output_dim = 0;
  Activation activation = Activation::kSiLU;

  // Layer widths including input and output, e.g. [75, 128, 128, 72].
  std::vector<int> layer_dims() const;
  int num_layers() const { return static_cast<int>(hidden_dims.size()) + 1; }
  bool operator==(const Architecture&) const = default;
};

// Parameters of the dense stack. weights[l] is (dims[l+1] x dims[l]).
struct DenseNet {
  Architecture arch;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  std::size_t parameter_count() const;
  bool all_finite() const;
};

// Intermediate values of one forward pass, sufficient for an exact backward.
struct ForwardCache {
  Eigen::VectorXd input;
  std::vector<Eigen::VectorXd> pre_activations;   // z_l for hidden layers
  std::vector<Eigen::VectorXd> activations;       // a_l = act(z_l)
};

// Parameter gradients, same shapes as DenseNet.
struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  static Gradients zeros_like(const DenseNet& net);
  void add_scaled(const Gradients& other, double scale);
  void scale(double factor);
  double norm() const;
  bool all_finite() const;
};

// Glorot-uniform weights (zero-mean uniform, scale sqrt(6/(fan_in+fan_out))),
// zero biases. Deterministic per seed.
DenseNet init_params(const Architecture& arch, Rng& rng);

// Logits of the dense stack. When cache is non-null it is filled for
// backward(). Throws NumericError on non-finite input.
Eigen::VectorXd forward(const DenseNet& net, const Eigen::VectorXd& input,
                        ForwardCache* cache = nullptr);

// Accumulates (+=) into grads the exact reverse-mode gradient of
// dot(logits, upstream) with respect to every parameter. Throws on shape
// mismatch.
void backward(const DenseNet& net, const ForwardCache& cache,
              const Eigen::VectorXd& upstream, Gradients& grads);

// Scalar loss over logits, with its analytic gradient. The numeric side of
// grad_check only ever calls value().
struct LossFn {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

// Worst relative error |g_analytic - g_numeric| / max(|g_a|, |g_n|, 1e-12)
// between backward() and central finite differences, over every parameter.
double grad_check(const DenseNet& net, const Eigen::VectorXd& input,
                  const LossFn& loss, double step = 1e-5);

}  // namespace linkgen

#include "linkgen/net.hpp"

#include <cmath>
#include <stdexcept>

#include "linkgen/errors.hpp"

namespace linkgen {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kSiLU:
      return "silu";
  }
  throw std::domain_error("unknown activation");
}

Activation activation_from_string(const std::string& name) {
  if (name == "silu") return Activation::kSiLU;
  throw std::domain_error("unknown activation '" + name + "'");
}

std::vector<int> Architecture::layer_dims() const {
  std::vector<int> dims;
  dims.reserve(hidden_dims.size() + 2);
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(output_dim);
  return dims;
}

std::size_t DenseNet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& w : weights) n += static_cast<std::size_t>(w.size());
  for (const auto& b : biases) n += static_cast<std::size_t>(b.size());
  return n;
}

bool DenseNet::all_finite() const {
  for (const auto& w : weights)
    if (!w.allFinite()) return false;
  for (const auto& b : biases)
    if (!b.allFinite()) return false;
  return true;
}

Gradients Gradients::zeros_like(const DenseNet& net) {
  Gradients g;
  g.weights.reserve(net.weights.size());
  g.biases.reserve(net.biases.size());
  for (const auto& w : net.weights)
    g.weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : net.biases)
    g.biases.push_back(Eigen::VectorXd::Zero(b.size()));
  return g;
}

void Gradients::add_scaled(const Gradients& other, double factor) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] += factor * other.weights[l];
    biases[l] += factor * other.biases[l];
  }
}

void Gradients::scale(double factor) {
  for (auto& w : weights) w *= factor;
  for (auto& b : biases) b *= factor;
}

double Gradients::norm() const {
  double sq = 0.0;
  for (const auto& w : weights) sq += w.squaredNorm();
  for (const auto& b : biases) sq += b.squaredNorm();
  return std::sqrt(sq);
}

bool Gradients::all_finite() const {
  for (const auto& w : weights)
    if (!w.allFinite()) return false;
  for (const auto& b : biases)
    if (!b.allFinite()) return false;
  return true;
}

DenseNet init_params(const Architecture& arch, Rng& rng) {
  if (arch.input_dim < 1 || arch.output_dim < 1)
    throw std::domain_error("init_params: dims must be >= 1");
  for (int h : arch.hidden_dims)
    if (h < 1) throw std::domain_error("init_params: dims must be >= 1");
  DenseNet net;
  net.arch = arch;
  const auto dims = arch.layer_dims();
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int fan_in = dims[l];
    const int fan_out = dims[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-limit, limit);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

Eigen::VectorXd forward(const DenseNet& net, const Eigen::VectorXd& input,
                        ForwardCache* cache) {
  if (input.size() != net.arch.input_dim)
    throw std::domain_error("forward: input length mismatch");
  if (!input.allFinite()) throw NumericError("forward: non-finite input");
  if (cache) {
    cache->input = input;
    cache->pre_activations.clear();
    cache->activations.clear();
  }
  Eigen::VectorXd h = input;
  const std::size_t layers = net.weights.size();
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    Eigen::VectorXd z = net.weights[l] * h + net.biases[l];
    h = silu(z.array()).matrix();
    if (cache) {
      cache->pre_activations.push_back(std::move(z));
      cache->activations.push_back(h);
    }
  }
  return net.weights[layers - 1] * h + net.biases[layers - 1];
}

void backward(const DenseNet& net, const ForwardCache& cache,
              const Eigen::VectorXd& upstream, Gradients& grads) {
  const std::size_t layers = net.weights.size();
  if (upstream.size() != net.arch.output_dim)
    throw std::domain_error("backward: upstream length mismatch");
  if (grads.weights.size() != layers || grads.biases.size() != layers)
    throw std::domain_error("backward: gradient shape mismatch");
  if (cache.activations.size() + 1 != layers)
    throw std::domain_error("backward: cache does not match architecture");

  // delta = d(dot(logits, upstream)) / d(z_l), walked from the output down.
  Eigen::VectorXd delta = upstream;
  for (std::size_t l = layers; l-- > 0;) {
    const Eigen::VectorXd& layer_in =
        (l == 0) ? cache.input : cache.activations[l - 1];
    grads.weights[l] += delta * layer_in.transpose();
    grads.biases[l] += delta;
    if (l == 0) break;
    delta = (net.weights[l].transpose() * delta).eval();
    delta.array() *= silu_grad(cache.pre_activations[l - 1].array());
  }
}

double grad_check(const DenseNet& net, const Eigen::VectorXd& input,
                  const LossFn& loss, double step) {
  ForwardCache cache;
  const Eigen::VectorXd logits = forward(net, input, &cache);
  Gradients analytic = Gradients::zeros_like(net);
  backward(net, cache, loss.grad(logits), analytic);

  DenseNet probe = net;
  double worst = 0.0;
  auto check_one = [&](double& param, double analytic_grad) {
    const double saved = param;
    param = saved + step;
    const double up = loss.value(forward(probe, input));
    param = saved - step;
    const double down = loss.value(forward(probe, input));
    param = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double denom =
        std::max({std::abs(analytic_grad), std::abs(numeric), 1e-12});
    worst = std::max(worst, std::abs(analytic_grad - numeric) / denom);
  };
  for (std::size_t l = 0; l < probe.weights.size(); ++l) {
    for (int r = 0; r < probe.weights[l].rows(); ++r)
      for (int c = 0; c < probe.weights[l].cols(); ++c)
        check_one(probe.weights[l](r, c), analytic.weights[l](r, c));
    for (int r = 0; r < probe.biases[l].size(); ++r)
      check_one(probe.biases[l](r), analytic.biases[l](r));
  }
  return worst;
}

}  // namespace linkgen

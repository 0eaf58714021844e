#include "linkgen/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "linkgen/errors.hpp"

namespace linkgen {
namespace {

// f(u) = cos^2(((u/T + s)/(1 + s)) * pi/2) with offset s = 0.008.
double cosine_decay(double u, double steps) {
  constexpr double offset = 0.008;
  const double angle =
      (u / steps + offset) / (1.0 + offset) * std::numbers::pi / 2.0;
  const double c = std::cos(angle);
  return c * c;
}

}  // namespace

std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::kCosine:
      return "cosine";
  }
  throw std::domain_error("unknown schedule kind");
}

ScheduleKind schedule_from_string(const std::string& name) {
  if (name == "cosine") return ScheduleKind::kCosine;
  throw std::domain_error("unknown schedule '" + name + "'");
}

NoiseSchedule make_schedule(int steps, ScheduleKind kind) {
  if (steps < 1) throw std::domain_error("make_schedule: need T >= 1");
  if (kind != ScheduleKind::kCosine)
    throw std::domain_error("make_schedule: unknown schedule kind");
  NoiseSchedule sched;
  sched.steps = steps;
  sched.beta.resize(steps);
  sched.alpha_bar.resize(steps);
  double cumulative = 1.0;
  for (int t = 1; t <= steps; ++t) {
    const double ratio = cosine_decay(t, steps) / cosine_decay(t - 1, steps);
    const double beta = std::clamp(1.0 - ratio, 1e-12, 0.999);
    sched.beta[t - 1] = beta;
    cumulative *= 1.0 - beta;
    sched.alpha_bar[t - 1] = cumulative;
  }
  return sched;
}

EdgeGraph forward_noising(const EdgeGraph& x0, int t,
                          const NoiseSchedule& sched, Rng& rng) {
  if (t < 1 || t > sched.steps)
    throw std::domain_error("forward_noising: step out of range");
  const double keep = 0.5 + 0.5 * sched.alpha_bar[t - 1];
  EdgeGraph xt{Eigen::VectorXi(x0.num_edges())};
  for (int e = 0; e < x0.num_edges(); ++e) {
    const bool keep_value = rng.bernoulli(keep);
    xt.states[e] = keep_value ? x0.states[e] : 1 - x0.states[e];
  }
  return xt;
}

int feature_dim(const Scenario& scenario) {
  return scenario.num_edges() * kEdgeCategories + 3;
}

Eigen::VectorXd build_features(const EdgeGraph& xt, int t, int total_steps,
                               const Condition& cond,
                               const Scenario& scenario) {
  const int m = xt.num_edges();
  Eigen::VectorXd features = Eigen::VectorXd::Zero(m * kEdgeCategories + 3);
  for (int e = 0; e < m; ++e)
    features[e * kEdgeCategories + xt.states[e]] = 1.0;
  features[m * kEdgeCategories] = double(t) / double(total_steps);
  const Rect& area = scenario.area;
  features[m * kEdgeCategories + 1] =
      (cond.target_position.x() - area.xmin) / area.width();
  features[m * kEdgeCategories + 2] =
      (cond.target_position.y() - area.ymin) / area.height();
  return features;
}

Eigen::MatrixXd edge_categorical_probs(const Eigen::VectorXd& logits) {
  const int m = static_cast<int>(logits.size()) / kEdgeCategories;
  Eigen::MatrixXd probs(m, kEdgeCategories);
  for (int e = 0; e < m; ++e) {
    const auto block = logits.segment(e * kEdgeCategories, kEdgeCategories);
    const double peak = block.maxCoeff();
    Eigen::ArrayXd shifted = (block.array() - peak).exp();
    probs.row(e) = (shifted / shifted.sum()).transpose();
  }
  return probs;
}

double graph_log_prob(const Eigen::MatrixXd& probs, const EdgeGraph& g) {
  double sum = 0.0;
  for (int e = 0; e < g.num_edges(); ++e)
    sum += std::log(probs(e, g.states[e]));
  return sum;
}

Eigen::VectorXd graph_log_prob_grad_logits(const Eigen::MatrixXd& probs,
                                           const EdgeGraph& g) {
  Eigen::VectorXd grad(probs.rows() * kEdgeCategories);
  for (int e = 0; e < g.num_edges(); ++e)
    for (int k = 0; k < kEdgeCategories; ++k)
      grad[e * kEdgeCategories + k] =
          (k == g.states[e] ? 1.0 : 0.0) - probs(e, k);
  return grad;
}

ReverseStepResult reverse_step(const DenseNet& net, const EdgeGraph& xt, int t,
                               const Condition& cond, const Scenario& scenario,
                               const NoiseSchedule& sched, Rng& rng) {
  if (t < 1 || t > sched.steps)
    throw std::domain_error("reverse_step: step out of range");
  const Eigen::VectorXd logits =
      forward(net, build_features(xt, t, sched.steps, cond, scenario));
  if (!logits.allFinite())
    throw NumericError("reverse_step: non-finite logits at step " +
                       std::to_string(t));
  const Eigen::MatrixXd probs = edge_categorical_probs(logits);

  ReverseStepResult result;
  result.x_prev.states.resize(xt.num_edges());
  for (int e = 0; e < xt.num_edges(); ++e) {
    const double u = rng.uniform01();
    double mass = 0.0;
    int chosen = kEdgeCategories - 1;
    for (int k = 0; k < kEdgeCategories; ++k) {
      mass += probs(e, k);
      if (u < mass) {
        chosen = k;
        break;
      }
    }
    result.x_prev.states[e] = chosen;
  }
  result.log_prob = graph_log_prob(probs, result.x_prev);
  return result;
}

Trajectory sample_trajectory(const DenseNet& net, const Condition& cond,
                             const Scenario& scenario,
                             const NoiseSchedule& sched, Rng& rng) {
  const int steps = sched.steps;
  Trajectory traj;
  traj.condition = cond;
  traj.states.resize(steps + 1);
  traj.log_probs.resize(steps);
  traj.step_seeds.resize(steps);

  traj.noise_seed = rng.next_u64();
  Rng noise_rng(traj.noise_seed);
  traj.states[steps] = sample_uniform_graph(noise_rng, scenario.num_edges());

  for (int t = steps; t >= 1; --t) {
    traj.step_seeds[t - 1] = rng.next_u64();
    Rng step_rng(traj.step_seeds[t - 1]);
    ReverseStepResult step =
        reverse_step(net, traj.states[t], t, cond, scenario, sched, step_rng);
    traj.states[t - 1] = std::move(step.x_prev);
    traj.log_probs[t - 1] = step.log_prob;
  }
  return traj;
}

}  // namespace linkgen

#include "linkgen/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "linkgen/errors.hpp"

namespace linkgen {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string to_csv_row(const EpochMetrics& m) {
  std::string row = std::to_string(m.epoch);
  for (double v : {m.train_mean, m.train_min, m.train_max, m.val_mean,
                   m.greedy_mean, m.random_mean, m.mean_active_links,
                   m.mean_ineffective_links, m.grad_norm}) {
    row += ',';
    row += format_double(v);
  }
  return row;
}

std::vector<EpochMetrics> read_metrics_csv(
    const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw FormatError("metrics: cannot open " + path.string());
  std::string line;
  if (!std::getline(file, line) || line != kMetricsCsvHeader)
    throw FormatError("metrics: bad header in " + path.string());
  std::vector<EpochMetrics> rows;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<double> vals;
    while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
    if (vals.size() != 10)
      throw FormatError("metrics: bad row '" + line + "'");
    EpochMetrics m;
    m.epoch = static_cast<int>(vals[0]);
    m.train_mean = vals[1];
    m.train_min = vals[2];
    m.train_max = vals[3];
    m.val_mean = vals[4];
    m.greedy_mean = vals[5];
    m.random_mean = vals[6];
    m.mean_active_links = vals[7];
    m.mean_ineffective_links = vals[8];
    m.grad_norm = vals[9];
    rows.push_back(m);
  }
  return rows;
}

Eigen::VectorXd score_batch(std::vector<Trajectory>& trajectories,
                            const Scenario& scenario) {
  Eigen::VectorXd rewards(trajectories.size());
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    trajectories[i].reward =
        reward(trajectories[i].final_graph(), scenario,
               trajectories[i].condition);
    rewards[i] = trajectories[i].reward->total;
  }
  return rewards;
}

Eigen::VectorXd compute_advantages(const Eigen::VectorXd& rewards,
                                   EmaBaseline& baseline) {
  if (rewards.size() == 0)
    throw std::domain_error("compute_advantages: empty batch");
  const double before = baseline.consume(rewards.mean());
  return rewards.array() - before;
}

Gradients policy_gradient(const std::vector<Trajectory>& trajectories,
                          const Eigen::VectorXd& advantages,
                          const DenseNet& net, const Scenario& scenario,
                          const NoiseSchedule& sched, double entropy_coef) {
  if (advantages.size() != Eigen::Index(trajectories.size()))
    throw std::domain_error("policy_gradient: advantage count mismatch");
  const double batch = double(trajectories.size());
  Gradients grads = Gradients::zeros_like(net);
  ForwardCache cache;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const Trajectory& traj = trajectories[i];
    const double weight = -advantages[i] / batch;
    if (weight == 0.0 && entropy_coef == 0.0) continue;
    for (int t = sched.steps; t >= 1; --t) {
      const Eigen::VectorXd logits = forward(
          net,
          build_features(traj.states[t], t, sched.steps, traj.condition,
                         scenario),
          &cache);
      const Eigen::MatrixXd probs = edge_categorical_probs(logits);
      Eigen::VectorXd upstream =
          weight * graph_log_prob_grad_logits(probs, traj.states[t - 1]);
      if (entropy_coef != 0.0) {
        // d(-coef/B * H)/dz: per block, (coef/B) * p_k (ln p_k + H_block).
        for (Eigen::Index e = 0; e < probs.rows(); ++e) {
          double block_entropy = 0.0;
          for (int k = 0; k < kEdgeCategories; ++k)
            block_entropy -= probs(e, k) * std::log(probs(e, k));
          for (int k = 0; k < kEdgeCategories; ++k)
            upstream[e * kEdgeCategories + k] +=
                entropy_coef / batch * probs(e, k) *
                (std::log(probs(e, k)) + block_entropy);
        }
      }
      backward(net, cache, upstream, grads);
    }
    if (!grads.all_finite())
      throw NumericError("policy_gradient: non-finite gradient after "
                         "trajectory " +
                         std::to_string(i));
  }
  return grads;
}

EvalReport evaluate(const DenseNet& net, const std::vector<Condition>& targets,
                    const Scenario& scenario, const NoiseSchedule& sched,
                    std::uint64_t seed) {
  EvalReport report;
  report.num_targets = static_cast<int>(targets.size());
  if (targets.empty()) return report;
  Rng rng(seed);
  for (const Condition& cond : targets) {
    Rng traj_rng(rng.next_u64());
    Rng random_rng(rng.next_u64());
    Trajectory traj =
        sample_trajectory(net, cond, scenario, sched, traj_rng);
    const EdgeGraph& final_graph = traj.final_graph();
    report.trained_mean += reward(final_graph, scenario, cond).total;
    report.greedy_mean +=
        reward(greedy_baseline(scenario, cond), scenario, cond).total;
    report.random_mean +=
        reward(random_baseline(random_rng, scenario.num_edges()), scenario,
               cond)
            .total;
    report.mean_active_links += final_graph.active_count();
    report.mean_ineffective_links +=
        ineffective_link_count(final_graph, scenario, cond);
  }
  const double n = double(targets.size());
  report.trained_mean /= n;
  report.greedy_mean /= n;
  report.random_mean /= n;
  report.mean_active_links /= n;
  report.mean_ineffective_links /= n;
  return report;
}

std::vector<Condition> sample_conditions(const Scenario& scenario, int count,
                                         std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Condition> conditions(count);
  for (Condition& c : conditions) {
    const double x = rng.uniform(scenario.area.xmin, scenario.area.xmax);
    const double y = rng.uniform(scenario.area.ymin, scenario.area.ymax);
    c.target_position = Vec2(x, y);
  }
  return conditions;
}

Trainer::Trainer(Scenario scenario, NoiseSchedule sched, Architecture arch,
                 TrainConfig config)
    : scenario_(std::move(scenario)),
      sched_(std::move(sched)),
      config_(config),
      net_([&] {
        Rng init_rng(mix_seed(config.master_seed, kStreamInit));
        return init_params(arch, init_rng);
      }()),
      adam_(AdamState::zeros_like(net_)),
      baseline_(config.baseline_decay),
      val_targets_(sample_conditions(
          scenario_, config.validation_targets,
          mix_seed(config.master_seed, kStreamValTargets))),
      train_rng_(mix_seed(config.master_seed, kStreamTrain)),
      eval_seed_(mix_seed(config.master_seed, kStreamEval)) {
  if (arch.output_dim != scenario_.num_edges() * kEdgeCategories)
    throw std::domain_error("Trainer: output_dim must equal M*K");
  if (arch.input_dim != feature_dim(scenario_))
    throw std::domain_error("Trainer: input_dim must match feature_dim");
}

EpochMetrics Trainer::run_epoch() {
  std::vector<Trajectory> batch;
  batch.reserve(config_.batch_size);
  for (int b = 0; b < config_.batch_size; ++b) {
    const double x = train_rng_.uniform(scenario_.area.xmin,
                                        scenario_.area.xmax);
    const double y = train_rng_.uniform(scenario_.area.ymin,
                                        scenario_.area.ymax);
    batch.push_back(sample_trajectory(
        net_, Condition{Vec2(x, y)}, scenario_, sched_, train_rng_));
  }
  const Eigen::VectorXd rewards = score_batch(batch, scenario_);
  const Eigen::VectorXd advantages = compute_advantages(rewards, baseline_);
  Gradients grads = policy_gradient(batch, advantages, net_, scenario_,
                                    sched_, config_.entropy_coef);
  double norm = grads.norm();
  if (norm > config_.grad_clip_norm) {
    grads.scale(config_.grad_clip_norm / norm);
    norm = config_.grad_clip_norm;
  }
  adam_step(adam_, net_, grads);
  ++train_step_;

  const EvalReport val =
      evaluate(net_, val_targets_, scenario_, sched_, eval_seed_);
  EpochMetrics metrics;
  metrics.epoch = epoch_++;
  metrics.train_mean = rewards.mean();
  metrics.train_min = rewards.minCoeff();
  metrics.train_max = rewards.maxCoeff();
  metrics.val_mean = val.trained_mean;
  metrics.greedy_mean = val.greedy_mean;
  metrics.random_mean = val.random_mean;
  metrics.mean_active_links = val.mean_active_links;
  metrics.mean_ineffective_links = val.mean_ineffective_links;
  metrics.grad_norm = norm;
  return metrics;
}

DenoiserCheckpoint Trainer::checkpoint() const {
  return DenoiserCheckpoint{net_, adam_, train_step_, config_.master_seed};
}

void Trainer::restore(const DenoiserCheckpoint& ckpt) {
  if (!(ckpt.net.arch == net_.arch))
    throw std::domain_error("Trainer::restore: architecture mismatch");
  net_ = ckpt.net;
  adam_ = ckpt.opt;
  train_step_ = ckpt.train_step;
}

}  // namespace linkgen

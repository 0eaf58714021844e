#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "linkgen/adam.hpp"
#include "linkgen/checkpoint.hpp"
#include "linkgen/diffusion.hpp"

namespace linkgen {

// Seed-stream ids hung off the master seed. Everything downstream of one
// master seed is reproducible bit for bit.
inline constexpr std::uint64_t kStreamInit = 0;
inline constexpr std::uint64_t kStreamTrain = 1;
inline constexpr std::uint64_t kStreamValTargets = 2;
inline constexpr std::uint64_t kStreamEval = 3;

struct TrainConfig {
  int epochs = 300;
  int batch_size = 64;
  double baseline_decay = 0.9;
  double entropy_coef = 0.0;
  double grad_clip_norm = 5.0;
  int validation_targets = 32;
  std::uint64_t master_seed = 1;
};

struct EpochMetrics {
  int epoch = 0;
  double train_mean = 0.0;
  double train_min = 0.0;
  double train_max = 0.0;
  double val_mean = 0.0;
  double greedy_mean = 0.0;
  double random_mean = 0.0;
  double mean_active_links = 0.0;
  double mean_ineffective_links = 0.0;
  double grad_norm = 0.0;
};

inline constexpr const char* kMetricsCsvHeader =
    "epoch,train_mean,train_min,train_max,val_mean,greedy_mean,random_mean,"
    "mean_active_links,mean_ineffective_links,grad_norm";

std::string to_csv_row(const EpochMetrics& m);
std::vector<EpochMetrics> read_metrics_csv(const std::filesystem::path& path);

// Exponential-moving-average reward baseline. Warm-starts at the first
// batch's mean, so first-batch advantages sum to zero.
class EmaBaseline {
 public:
  explicit EmaBaseline(double decay) : decay_(decay) {}
  bool initialized() const { return value_.has_value(); }
  double value() const { return value_.value(); }

  // Returns the baseline value in effect before absorbing batch_mean.
  double consume(double batch_mean) {
    if (!value_) value_ = batch_mean;
    const double before = *value_;
    value_ = decay_ * *value_ + (1.0 - decay_) * batch_mean;
    return before;
  }

 private:
  double decay_;
  std::optional<double> value_;
};

// Scores each trajectory's emitted graph, attaches the breakdown, and
// returns the totals.
Eigen::VectorXd score_batch(std::vector<Trajectory>& trajectories,
                            const Scenario& scenario);

// advantages[i] = rewards[i] - baseline-before-update.
Eigen::VectorXd compute_advantages(const Eigen::VectorXd& rewards,
                                   EmaBaseline& baseline);

// Gradient of L = -(1/B) sum_i adv_i sum_t log p(x_{t-1} | x_t, t, cond)
// minus an optional entropy bonus, by replaying every step's forward pass.
// Accumulation order is fixed: trajectory index, then step descending.
// Throws NumericError naming the offending trajectory on non-finite sums.
Gradients policy_gradient(const std::vector<Trajectory>& trajectories,
                          const Eigen::VectorXd& advantages,
                          const DenseNet& net, const Scenario& scenario,
                          const NoiseSchedule& sched,
                          double entropy_coef = 0.0);

// Mean results over one sampled trajectory per target under a fixed seed,
// with greedy/random rewards on the identical targets.
struct EvalReport {
  double trained_mean = 0.0;
  double greedy_mean = 0.0;
  double random_mean = 0.0;
  double mean_active_links = 0.0;
  double mean_ineffective_links = 0.0;
  int num_targets = 0;
};

EvalReport evaluate(const DenseNet& net,
                    const std::vector<Condition>& targets,
                    const Scenario& scenario, const NoiseSchedule& sched,
                    std::uint64_t seed);

// count conditions drawn uniformly over the scenario area.
std::vector<Condition> sample_conditions(const Scenario& scenario, int count,
                                         std::uint64_t seed);

// Policy-gradient training loop bound to one scenario and schedule. Owns
// the denoiser, optimizer, reward baseline, and the frozen validation set.
class Trainer {
 public:
  Trainer(Scenario scenario, NoiseSchedule sched, Architecture arch,
          TrainConfig config);

  // Samples one batch of trajectories on uniformly drawn conditions, scores
  // them, applies one clipped Adam step, and evaluates on the frozen
  // validation set.
  EpochMetrics run_epoch();

  const DenseNet& net() const { return net_; }
  const std::vector<Condition>& validation_targets() const {
    return val_targets_;
  }
  const TrainConfig& config() const { return config_; }
  int epochs_run() const { return epoch_; }

  DenoiserCheckpoint checkpoint() const;
  void restore(const DenoiserCheckpoint& ckpt);

 private:
  Scenario scenario_;
  NoiseSchedule sched_;
  TrainConfig config_;
  DenseNet net_;
  AdamState adam_;
  EmaBaseline baseline_;
  std::vector<Condition> val_targets_;
  Rng train_rng_;
  std::uint64_t eval_seed_;
  int epoch_ = 0;
  std::int64_t train_step_ = 0;
};

}  // namespace linkgen

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linkgen/fresnel.hpp"
#include "linkgen/graph.hpp"
#include "linkgen/net.hpp"
#include "linkgen/rng.hpp"
#include "linkgen/scenario.hpp"

namespace linkgen {

enum class ScheduleKind { kCosine };

std::string to_string(ScheduleKind k);
ScheduleKind schedule_from_string(const std::string& name);

// Per-step categorical corruption rates beta[t-1] for steps t = 1..T and
// their cumulative products alpha_bar = cumprod(1 - beta). alpha_bar is
// strictly decreasing with alpha_bar[T-1] below 0.01 so the terminal state
// is statistically indistinguishable from uniform.
struct NoiseSchedule {
  int steps = 0;  // T
  Eigen::VectorXd beta;
  Eigen::VectorXd alpha_bar;
};

// Cosine family with offset 0.008: beta_t = 1 - f(t)/f(t-1) clamped to
// (0, 0.999], f(u) = cos^2(((u/T + s)/(1 + s)) * pi/2). Throws for T < 1.
NoiseSchedule make_schedule(int steps, ScheduleKind kind);

// Applies the uniform categorical kernel marginalized to step t: each edge
// keeps its x0 value with probability 1/2 + alpha_bar[t-1]/2, else flips.
// Steps are 1-based; throws std::domain_error for t outside [1, T].
EdgeGraph forward_noising(const EdgeGraph& x0, int t,
                          const NoiseSchedule& sched, Rng& rng);

// Denoiser input, in fixed order: flattened one-hot edge states (M*K, edge
// major), normalized time t/T, target position normalized to [0,1]^2 by the
// area bounds. Length M*K + 3.
Eigen::VectorXd build_features(const EdgeGraph& xt, int t, int total_steps,
                               const Condition& cond, const Scenario& scenario);

int feature_dim(const Scenario& scenario);

// Per-edge categorical distributions from raw logits (length M*K, edge
// major): row e of the result is softmax(logits[e*K .. e*K+K)).
Eigen::MatrixXd edge_categorical_probs(const Eigen::VectorXd& logits);

// Sum over edges of log prob[e][states[e]].
double graph_log_prob(const Eigen::MatrixXd& probs, const EdgeGraph& g);

// d(graph_log_prob)/d(logits): per edge block, onehot(chosen) - probs.
Eigen::VectorXd graph_log_prob_grad_logits(const Eigen::MatrixXd& probs,
                                           const EdgeGraph& g);

struct ReverseStepResult {
  EdgeGraph x_prev;
  double log_prob = 0.0;
};

// One reverse transition x_t -> x_{t-1}: the denoiser maps build_features to
// M*K logits; each edge samples its previous state from the softmax
// categorical; log_prob sums the chosen categories' log masses. Reads only
// (x_t, t, cond) — the chain is Markov by interface shape. Throws
// NumericError (with the offending step) on non-finite logits.
ReverseStepResult reverse_step(const DenseNet& net, const EdgeGraph& xt, int t,
                               const Condition& cond, const Scenario& scenario,
                               const NoiseSchedule& sched, Rng& rng);

// Full generation record. states[k] is the graph at diffusion time k, from
// pure noise at index T down to the emitted graph at index 0. log_probs[k]
// is the summed action log-probability of the transition from states[k+1]
// to states[k]. step_seeds[k] seeds that transition's random draws and
// noise_seed seeds states[T], so any step can be replayed in isolation.
struct Trajectory {
  std::vector<EdgeGraph> states;
  Eigen::VectorXd log_probs;
  Condition condition;
  std::optional<RewardBreakdown> reward;
  std::uint64_t noise_seed = 0;
  std::vector<std::uint64_t> step_seeds;

  const EdgeGraph& final_graph() const { return states.front(); }
  // Graph after d denoising steps, d in [0, T]; d = 0 is the initial noise.
  const EdgeGraph& snapshot(int denoising_step) const {
    return states.at(states.size() - 1 - denoising_step);
  }
};

// Draws states[T] uniformly, then iterates reverse_step for t = T..1.
// Reward is left unscored.
Trajectory sample_trajectory(const DenseNet& net, const Condition& cond,
                             const Scenario& scenario,
                             const NoiseSchedule& sched, Rng& rng);

}  // namespace linkgen

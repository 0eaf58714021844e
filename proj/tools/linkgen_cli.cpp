// Command-line harness: train, sample, eval, baselines, validate-config.
// Exit codes: 0 ok, 2 config/usage, 3 numeric, 4 I/O, 5 checkpoint version.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkgen/checkpoint.hpp"
#include "linkgen/config.hpp"
#include "linkgen/errors.hpp"
#include "linkgen/io.hpp"
#include "linkgen/log.hpp"
#include "linkgen/svg.hpp"
#include "linkgen/trainer.hpp"

namespace fs = std::filesystem;
using namespace linkgen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;
constexpr int kExitVersion = 5;

constexpr std::uint64_t kStreamSample = 4;
constexpr std::uint64_t kStreamBaselineGraphs = 5;

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_epochs = false) {
  cmd->add_option("--config", opts.config_path, "Run configuration file");
  cmd->add_option("--seed", opts.seed, "Master seed override");
  cmd->add_option("--out", opts.out, "Output directory override");
  if (with_epochs)
    cmd->add_option("--epochs", opts.epochs, "Epoch count override");
}

// Config file first, command-line wins. Every applied override is logged.
RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig config = opts.config_path.empty()
                         ? default_run_config()
                         : load_run_config(opts.config_path);
  if (opts.seed) {
    log_info("override: seed = " + std::to_string(*opts.seed));
    config.training.master_seed = *opts.seed;
  }
  if (opts.epochs) {
    log_info("override: epochs = " + std::to_string(*opts.epochs));
    config.training.epochs = *opts.epochs;
  }
  if (!opts.out.empty()) {
    log_info("override: output_dir = " + opts.out);
    config.output_dir = opts.out;
  }
  return config;
}

int report_violations(const std::vector<Violation>& violations) {
  for (const Violation& v : violations)
    std::fprintf(stderr, "violation %s: %s\n", v.code.c_str(),
                 v.detail.c_str());
  return kExitConfig;
}

void write_resolved_config(const RunConfig& config, const fs::path& dir) {
  write_json_file(dir / "resolved_config.json", run_config_to_json(config));
}

int cmd_train(const CommonOpts& opts) {
  const RunConfig config = resolve_config(opts);
  const auto violations = validate_run_config(config);
  if (!violations.empty()) return report_violations(violations);

  const fs::path out_dir(config.output_dir);
  fs::create_directories(out_dir);
  write_resolved_config(config, out_dir);

  Trainer trainer(config.scenario, config.make_noise_schedule(),
                  config.architecture(), config.training);
  std::ofstream metrics_file(out_dir / "metrics.csv",
                             std::ios::binary | std::ios::trunc);
  if (!metrics_file)
    throw FormatError("cannot open metrics file in " + out_dir.string());
  metrics_file << kMetricsCsvHeader << "\n";
  metrics_file.flush();

  std::vector<EpochMetrics> rows;
  rows.reserve(config.training.epochs);
  for (int epoch = 0; epoch < config.training.epochs; ++epoch) {
    rows.push_back(trainer.run_epoch());
    metrics_file << to_csv_row(rows.back()) << "\n";
    metrics_file.flush();
    const EpochMetrics& m = rows.back();
    char line[160];
    std::snprintf(line, sizeof(line),
                  "epoch %d train %.2f val %.2f greedy %.2f random %.2f",
                  m.epoch, m.train_mean, m.val_mean, m.greedy_mean,
                  m.random_mean);
    log_message(epoch % 10 == 0 ? LogLevel::kInfo : LogLevel::kDebug, line);
  }

  save_checkpoint(trainer.checkpoint(), out_dir / "checkpoint.bin");
  write_text_file(out_dir / "training_curve.svg",
                  render_training_curves_svg(rows));
  log_info("wrote " + (out_dir / "metrics.csv").string() + ", checkpoint, "
           "training_curve.svg");
  return kExitOk;
}

int cmd_sample(const CommonOpts& opts, const std::string& checkpoint_path,
               std::vector<double> target, std::vector<int> steps) {
  const DenoiserCheckpoint ckpt = load_checkpoint(checkpoint_path);
  const RunConfig config = resolve_config(opts);
  const auto violations = validate_run_config(config);
  if (!violations.empty()) return report_violations(violations);
  if (ckpt.net.arch.output_dim !=
      config.scenario.num_edges() * kEdgeCategories)
    throw ConfigError("checkpoint architecture does not match the scenario");

  const Condition cond{Vec2(target.at(0), target.at(1))};
  if (!config.scenario.area.contains(cond.target_position))
    throw std::domain_error("target lies outside the scenario area");
  const NoiseSchedule sched = config.make_noise_schedule();
  for (int d : steps)
    if (d < 0 || d > sched.steps)
      throw std::domain_error("snapshot step " + std::to_string(d) +
                              " outside [0, " + std::to_string(sched.steps) +
                              "]");

  const std::uint64_t seed =
      opts.seed ? *opts.seed : config.training.master_seed;
  Rng rng(mix_seed(seed, kStreamSample));
  const Trajectory traj =
      sample_trajectory(ckpt.net, cond, config.scenario, sched, rng);

  const fs::path out_dir(opts.out.empty() ? "runs/sample" : opts.out);
  fs::create_directories(out_dir);
  write_resolved_config(config, out_dir);
  for (int d : steps) {
    char name[48];
    std::snprintf(name, sizeof(name), "snapshot_step_%02d", d);
    const EdgeGraph& snap = traj.snapshot(d);
    write_text_file(out_dir / (std::string(name) + ".svg"),
                    render_scene_svg(snap, config.scenario, cond));
    write_json_file(out_dir / (std::string(name) + ".json"),
                    snapshot_to_json(snap, d));
  }
  write_json_file(out_dir / "final_graph.json",
                  edge_graph_to_json(traj.final_graph()));
  const RewardBreakdown score = reward(traj.final_graph(), config.scenario,
                                       cond);
  std::printf("target (%g, %g): %d active links, reward %.3f, "
              "%d ineffective\n",
              cond.target_position.x(), cond.target_position.y(),
              traj.final_graph().active_count(), score.total,
              ineffective_link_count(traj.final_graph(), config.scenario,
                                     cond));
  log_info("wrote " + std::to_string(steps.size()) + " snapshots to " +
           out_dir.string());
  return kExitOk;
}

int cmd_eval(const CommonOpts& opts, const std::string& checkpoint_path) {
  const DenoiserCheckpoint ckpt = load_checkpoint(checkpoint_path);
  const RunConfig config = resolve_config(opts);
  const auto violations = validate_run_config(config);
  if (!violations.empty()) return report_violations(violations);
  if (ckpt.net.arch.output_dim !=
      config.scenario.num_edges() * kEdgeCategories)
    throw ConfigError("checkpoint architecture does not match the scenario");

  const std::uint64_t master = config.training.master_seed;
  const std::vector<Condition> targets =
      sample_conditions(config.scenario, config.training.validation_targets,
                        mix_seed(master, kStreamValTargets));
  const EvalReport report =
      evaluate(ckpt.net, targets, config.scenario,
               config.make_noise_schedule(), mix_seed(master, kStreamEval));

  std::printf("validation targets: %d\n", report.num_targets);
  std::printf("trained mean reward: %.4f\n", report.trained_mean);
  std::printf("greedy mean reward:  %.4f\n", report.greedy_mean);
  std::printf("random mean reward:  %.4f\n", report.random_mean);
  std::printf("mean active links:       %.4f\n", report.mean_active_links);
  std::printf("mean ineffective links:  %.4f\n",
              report.mean_ineffective_links);
  if (!opts.out.empty()) {
    const fs::path out_dir(opts.out);
    fs::create_directories(out_dir);
    write_resolved_config(config, out_dir);
    write_json_file(out_dir / "eval_report.json",
                    {{"num_targets", report.num_targets},
                     {"trained_mean", report.trained_mean},
                     {"greedy_mean", report.greedy_mean},
                     {"random_mean", report.random_mean},
                     {"mean_active_links", report.mean_active_links},
                     {"mean_ineffective_links",
                      report.mean_ineffective_links}});
  }
  return kExitOk;
}

int cmd_baselines(const CommonOpts& opts, int num_targets) {
  const RunConfig config = resolve_config(opts);
  const auto violations = validate_run_config(config);
  if (!violations.empty()) return report_violations(violations);
  if (num_targets < 1) throw ConfigError("--num-targets must be >= 1");

  const std::uint64_t master = config.training.master_seed;
  const std::vector<Condition> targets = sample_conditions(
      config.scenario, num_targets, mix_seed(master, kStreamEval));
  Rng random_rng(mix_seed(master, kStreamBaselineGraphs));

  Eigen::VectorXd greedy_rewards(num_targets), random_rewards(num_targets);
  for (int i = 0; i < num_targets; ++i) {
    greedy_rewards[i] =
        reward(greedy_baseline(config.scenario, targets[i]), config.scenario,
               targets[i])
            .total;
    random_rewards[i] =
        reward(random_baseline(random_rng, config.scenario.num_edges()),
               config.scenario, targets[i])
            .total;
  }
  auto stddev = [](const Eigen::VectorXd& v) {
    return std::sqrt((v.array() - v.mean()).square().mean());
  };
  std::printf("targets: %d\n", num_targets);
  std::printf("greedy reward: %.4f +- %.4f\n", greedy_rewards.mean(),
              stddev(greedy_rewards));
  std::printf("random reward: %.4f +- %.4f\n", random_rewards.mean(),
              stddev(random_rewards));
  if (!opts.out.empty()) {
    const fs::path out_dir(opts.out);
    fs::create_directories(out_dir);
    write_resolved_config(config, out_dir);
    write_json_file(out_dir / "baselines.json",
                    {{"num_targets", num_targets},
                     {"greedy_mean", greedy_rewards.mean()},
                     {"greedy_stddev", stddev(greedy_rewards)},
                     {"random_mean", random_rewards.mean()},
                     {"random_stddev", stddev(random_rewards)}});
  }
  return kExitOk;
}

int cmd_validate_config(const std::string& config_path) {
  const RunConfig config = config_path.empty() ? default_run_config()
                                               : load_run_config(config_path);
  const auto violations = validate_run_config(config);
  if (!violations.empty()) return report_violations(violations);
  std::printf("ok\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional graph-diffusion planner for ISAC link selection"};
  app.require_subcommand(1);

  CommonOpts train_opts;
  CLI::App* train = app.add_subcommand("train", "Train the denoiser");
  add_common(train, train_opts, /*with_epochs=*/true);

  CommonOpts sample_opts;
  std::string sample_checkpoint;
  std::vector<double> sample_target;
  std::vector<int> sample_steps{0, 10, 20, 30, 40, 50};
  CLI::App* sample =
      app.add_subcommand("sample", "Generate a graph and render snapshots");
  add_common(sample, sample_opts);
  sample->add_option("--checkpoint", sample_checkpoint, "Checkpoint file")
      ->required();
  sample->add_option("--target", sample_target, "Target location x y")
      ->expected(2)
      ->required();
  sample->add_option("--steps", sample_steps,
                     "Denoising snapshot steps (comma separated)")
      ->delimiter(',');

  CommonOpts eval_opts;
  std::string eval_checkpoint;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate on the frozen validation targets");
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("--checkpoint", eval_checkpoint, "Checkpoint file")
      ->required();

  CommonOpts baseline_opts;
  int num_targets = 100;
  CLI::App* baselines =
      app.add_subcommand("baselines", "Score greedy and random baselines");
  add_common(baselines, baseline_opts);
  baselines->add_option("--num-targets", num_targets, "Targets to sample");

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate-config", "Check a configuration file");
  validate->add_option("--config", validate_path, "Run configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (train->parsed()) return cmd_train(train_opts);
    if (sample->parsed())
      return cmd_sample(sample_opts, sample_checkpoint, sample_target,
                        sample_steps);
    if (eval_cmd->parsed()) return cmd_eval(eval_opts, eval_checkpoint);
    if (baselines->parsed()) return cmd_baselines(baseline_opts, num_targets);
    if (validate->parsed()) return cmd_validate_config(validate_path);
  } catch (const ConfigError& e) {
    log_error(e.what());
    return kExitConfig;
  } catch (const std::domain_error& e) {
    log_error(e.what());
    return kExitConfig;
  } catch (const NumericError& e) {
    log_error(e.what());
    return kExitNumeric;
  } catch (const VersionError& e) {
    log_error(e.what());
    return kExitVersion;
  } catch (const FormatError& e) {
    log_error(e.what());
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    log_error(e.what());
    return kExitIo;
  }
  return kExitConfig;
}

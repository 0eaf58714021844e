#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkgen/diffusion.hpp"
#include "linkgen/net.hpp"
#include "linkgen/scenario.hpp"
#include "linkgen/trainer.hpp"

namespace linkgen {

// Fully resolved run description. The model architecture's input/output
// widths are always derived from the scenario (feature_dim and M*K); only
// hidden widths and the activation are configurable.
struct RunConfig {
  Scenario scenario;
  std::vector<int> hidden_dims{128, 128};
  Activation activation = Activation::kSiLU;
  int diffusion_steps = 50;
  ScheduleKind schedule = ScheduleKind::kCosine;
  TrainConfig training;
  std::string output_dir = "runs/reference";

  Architecture architecture() const;
  NoiseSchedule make_noise_schedule() const {
    return make_schedule(diffusion_steps, schedule);
  }
};

// The reference nine-device run: 3x3 grid, 2.4 GHz, T = 50 cosine steps,
// hidden [128,128], 300 epochs of batch-64 training.
RunConfig default_run_config();

// Overlays a JSON config file onto the defaults. Unknown blocks or fields
// raise ConfigError so typos cannot silently fall back to defaults.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(const nlohmann::json& j);

nlohmann::json run_config_to_json(const RunConfig& config);

// Every violated invariant across all blocks; empty means runnable.
std::vector<Violation> validate_run_config(const RunConfig& config);

}  // namespace linkgen

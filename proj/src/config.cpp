#include "linkgen/config.hpp"

#include <set>

#include "linkgen/errors.hpp"
#include "linkgen/io.hpp"

namespace linkgen {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::string& where,
                         const std::set<std::string>& known) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key))
      throw ConfigError("config: unknown key '" + key + "' in " + where);
  }
}

}  // namespace

Architecture RunConfig::architecture() const {
  Architecture arch;
  arch.input_dim = feature_dim(scenario);
  arch.hidden_dims = hidden_dims;
  arch.output_dim = scenario.num_edges() * kEdgeCategories;
  arch.activation = activation;
  return arch;
}

RunConfig default_run_config() {
  RunConfig config;
  config.scenario = reference_scenario();
  return config;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig config = default_run_config();
  try {
    reject_unknown_keys(j, "top level",
                        {"scenario", "reward", "model", "diffusion",
                         "training", "output_dir", "seed"});
    if (j.contains("scenario")) {
      json merged = scenario_to_json(config.scenario);
      // The scenario block carries geometry only; reward is its own block.
      reject_unknown_keys(j["scenario"], "scenario",
                          {"nodes", "frequency_hz", "area"});
      merged.update(j["scenario"]);
      if (j.contains("reward")) merged["reward"].update(j["reward"]);
      config.scenario = scenario_from_json(merged);
    } else if (j.contains("reward")) {
      json merged = scenario_to_json(config.scenario);
      merged["reward"].update(j["reward"]);
      config.scenario = scenario_from_json(merged);
    }
    if (j.contains("reward"))
      reject_unknown_keys(j["reward"], "reward",
                          {"gain_scale", "link_cost", "decay_length_m",
                           "ineffective_threshold_m"});
    if (j.contains("model")) {
      const json& m = j["model"];
      reject_unknown_keys(m, "model", {"hidden_dims", "activation"});
      if (m.contains("hidden_dims"))
        config.hidden_dims = m["hidden_dims"].get<std::vector<int>>();
      if (m.contains("activation"))
        config.activation =
            activation_from_string(m["activation"].get<std::string>());
    }
    if (j.contains("diffusion")) {
      const json& d = j["diffusion"];
      reject_unknown_keys(d, "diffusion", {"steps", "schedule"});
      if (d.contains("steps")) config.diffusion_steps = d["steps"].get<int>();
      if (d.contains("schedule"))
        config.schedule =
            schedule_from_string(d["schedule"].get<std::string>());
    }
    if (j.contains("training")) {
      const json& t = j["training"];
      reject_unknown_keys(t, "training",
                          {"epochs", "batch_size", "baseline_decay",
                           "entropy_coef", "grad_clip_norm",
                           "validation_targets"});
      TrainConfig& tc = config.training;
      if (t.contains("epochs")) tc.epochs = t["epochs"].get<int>();
      if (t.contains("batch_size")) tc.batch_size = t["batch_size"].get<int>();
      if (t.contains("baseline_decay"))
        tc.baseline_decay = t["baseline_decay"].get<double>();
      if (t.contains("entropy_coef"))
        tc.entropy_coef = t["entropy_coef"].get<double>();
      if (t.contains("grad_clip_norm"))
        tc.grad_clip_norm = t["grad_clip_norm"].get<double>();
      if (t.contains("validation_targets"))
        tc.validation_targets = t["validation_targets"].get<int>();
    }
    if (j.contains("output_dir"))
      config.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("seed"))
      config.training.master_seed = j["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(read_json_file(path));
}

json run_config_to_json(const RunConfig& config) {
  json scenario = scenario_to_json(config.scenario);
  json reward = scenario["reward"];
  scenario.erase("reward");
  return json{
      {"scenario", scenario},
      {"reward", reward},
      {"model",
       {{"hidden_dims", config.hidden_dims},
        {"activation", to_string(config.activation)}}},
      {"diffusion",
       {{"steps", config.diffusion_steps},
        {"schedule", to_string(config.schedule)}}},
      {"training",
       {{"epochs", config.training.epochs},
        {"batch_size", config.training.batch_size},
        {"baseline_decay", config.training.baseline_decay},
        {"entropy_coef", config.training.entropy_coef},
        {"grad_clip_norm", config.training.grad_clip_norm},
        {"validation_targets", config.training.validation_targets}}},
      {"output_dir", config.output_dir},
      {"seed", config.training.master_seed}};
}

std::vector<Violation> validate_run_config(const RunConfig& config) {
  std::vector<Violation> out = validate_scenario(config.scenario);
  if (config.diffusion_steps < 1)
    out.push_back({"nonpositive_steps", "diffusion steps must be >= 1"});
  for (int h : config.hidden_dims)
    if (h < 1) out.push_back({"nonpositive_hidden_dim",
                              "hidden dims must be >= 1"});
  const TrainConfig& t = config.training;
  if (t.epochs < 1) out.push_back({"nonpositive_epochs", "epochs must be >= 1"});
  if (t.batch_size < 1)
    out.push_back({"nonpositive_batch_size", "batch_size must be >= 1"});
  if (t.baseline_decay < 0.0 || t.baseline_decay >= 1.0)
    out.push_back({"baseline_decay_out_of_range",
                   "baseline_decay must lie in [0,1)"});
  if (t.grad_clip_norm <= 0.0)
    out.push_back({"nonpositive_grad_clip", "grad_clip_norm must be > 0"});
  if (t.validation_targets < 1)
    out.push_back({"nonpositive_validation_targets",
                   "validation_targets must be >= 1"});
  return out;
}

}  // namespace linkgen

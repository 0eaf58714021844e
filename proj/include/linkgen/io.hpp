#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "linkgen/graph.hpp"
#include "linkgen/scenario.hpp"

namespace linkgen {

// Scenario wire format. Field names are fixed: nodes (array of [x,y]),
// frequency_hz, area ([xmin,ymin,xmax,ymax]); the reward block carries
// gain_scale, link_cost, decay_length_m, ineffective_threshold_m.
nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

// EdgeGraph wire format: edges (array of 0/1 in canonical index order).
nlohmann::json edge_graph_to_json(const EdgeGraph& g);
EdgeGraph edge_graph_from_json(const nlohmann::json& j);

// Trajectory snapshot: an edge graph plus its denoising step index.
nlohmann::json snapshot_to_json(const EdgeGraph& g, int denoising_step);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j);

}  // namespace linkgen

#include "linkgen/io.hpp"

#include <fstream>

#include "linkgen/errors.hpp"

namespace linkgen {

using nlohmann::json;

json scenario_to_json(const Scenario& s) {
  json nodes = json::array();
  for (int i = 0; i < s.num_nodes(); ++i)
    nodes.push_back({s.node(i).x(), s.node(i).y()});
  return json{
      {"nodes", nodes},
      {"frequency_hz", s.frequency_hz},
      {"area", {s.area.xmin, s.area.ymin, s.area.xmax, s.area.ymax}},
      {"reward",
       {{"gain_scale", s.reward.gain_scale},
        {"link_cost", s.reward.link_cost},
        {"decay_length_m", s.reward.decay_length_m},
        {"ineffective_threshold_m", s.reward.ineffective_threshold_m}}}};
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    const json& nodes = j.at("nodes");
    s.node_positions.resize(nodes.size(), 2);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].is_array() || nodes[i].size() != 2)
        throw FormatError("scenario: node " + std::to_string(i) +
                          " is not an [x,y] pair");
      s.node_positions(Eigen::Index(i), 0) = nodes[i][0].get<double>();
      s.node_positions(Eigen::Index(i), 1) = nodes[i][1].get<double>();
    }
    s.frequency_hz = j.at("frequency_hz").get<double>();
    const json& area = j.at("area");
    if (!area.is_array() || area.size() != 4)
      throw FormatError("scenario: area must be [xmin,ymin,xmax,ymax]");
    s.area = Rect{area[0].get<double>(), area[1].get<double>(),
                  area[2].get<double>(), area[3].get<double>()};
    if (j.contains("reward")) {
      const json& r = j.at("reward");
      s.reward.gain_scale = r.at("gain_scale").get<double>();
      s.reward.link_cost = r.at("link_cost").get<double>();
      s.reward.decay_length_m = r.at("decay_length_m").get<double>();
      s.reward.ineffective_threshold_m =
          r.at("ineffective_threshold_m").get<double>();
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
  return s;
}

json edge_graph_to_json(const EdgeGraph& g) {
  json edges = json::array();
  for (int e = 0; e < g.num_edges(); ++e) edges.push_back(g.states[e]);
  return json{{"edges", edges}};
}

EdgeGraph edge_graph_from_json(const json& j) {
  try {
    const json& edges = j.at("edges");
    EdgeGraph g{Eigen::VectorXi(edges.size())};
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const int v = edges[e].get<int>();
      if (v != 0 && v != 1)
        throw FormatError("edge graph: state outside {0,1} at index " +
                          std::to_string(e));
      g.states[Eigen::Index(e)] = v;
    }
    return g;
  } catch (const json::exception& e) {
    throw FormatError(std::string("edge graph: ") + e.what());
  }
}

json snapshot_to_json(const EdgeGraph& g, int denoising_step) {
  json j = edge_graph_to_json(g);
  j["step"] = denoising_step;
  return j;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FormatError("cannot open for writing: " + path.string());
  file.write(content.data(), std::streamsize(content.size()));
  if (!file) throw FormatError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot open: " + path.string());
  return std::string((std::istreambuf_iterator<char>(file)),
                     std::istreambuf_iterator<char>());
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace linkgen

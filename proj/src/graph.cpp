#include "linkgen/graph.hpp"

#include <cmath>
#include <stdexcept>

#include "linkgen/errors.hpp"

namespace linkgen {

Scenario reference_scenario() {
  Scenario s;
  s.node_positions.resize(9, 2);
  int row = 0;
  for (double x : {0.0, 5.0, 10.0}) {
    for (double y : {0.0, 5.0, 10.0}) {
      s.node_positions.row(row++) << x, y;
    }
  }
  s.frequency_hz = 2.4e9;
  s.area = Rect{0.0, 0.0, 10.0, 10.0};
  s.reward = RewardParams{};
  return s;
}

int edge_index(int i, int j, int num_nodes) {
  if (i < 0 || j < 0 || i >= num_nodes || j >= num_nodes)
    throw std::domain_error("edge_index: node id out of range");
  if (i == j) throw std::domain_error("edge_index: self loop has no edge");
  if (i > j) std::swap(i, j);
  return i * num_nodes - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> edge_endpoints(int index, int num_nodes) {
  const int m = num_nodes * (num_nodes - 1) / 2;
  if (index < 0 || index >= m)
    throw std::domain_error("edge_endpoints: index out of range");
  int i = 0;
  int row_len = num_nodes - 1;  // edges with first endpoint i
  while (index >= row_len) {
    index -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + index};
}

OneHotGraph encode_one_hot(const EdgeGraph& g) {
  const int m = g.num_edges();
  OneHotGraph x = OneHotGraph::Zero(m, kEdgeCategories);
  for (int e = 0; e < m; ++e) x(e, g.states[e]) = 1.0;
  return x;
}

EdgeGraph decode_one_hot(const OneHotGraph& x) {
  if (x.cols() != kEdgeCategories)
    throw FormatError("decode_one_hot: expected " +
                      std::to_string(kEdgeCategories) + " categories, got " +
                      std::to_string(x.cols()));
  EdgeGraph g{Eigen::VectorXi::Zero(x.rows())};
  for (Eigen::Index e = 0; e < x.rows(); ++e) {
    int hot = -1;
    for (int k = 0; k < kEdgeCategories; ++k) {
      const double v = x(e, k);
      if (v == 1.0) {
        if (hot >= 0)
          throw FormatError("decode_one_hot: row " + std::to_string(e) +
                            " has multiple ones");
        hot = k;
      } else if (v != 0.0) {
        throw FormatError("decode_one_hot: row " + std::to_string(e) +
                          " has entry outside {0,1}");
      }
    }
    if (hot < 0)
      throw FormatError("decode_one_hot: row " + std::to_string(e) +
                        " has no one");
    g.states[e] = hot;
  }
  return g;
}

std::set<int> active_nodes(const EdgeGraph& g, int num_nodes) {
  std::set<int> nodes;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.states[e] == kActive) {
      const auto [i, j] = edge_endpoints(e, num_nodes);
      nodes.insert(i);
      nodes.insert(j);
    }
  }
  return nodes;
}

EdgeGraph sample_uniform_graph(Rng& rng, int num_edges) {
  EdgeGraph g{Eigen::VectorXi(num_edges)};
  for (int e = 0; e < num_edges; ++e)
    g.states[e] = static_cast<int>(rng.bounded(kEdgeCategories));
  return g;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  const int n = s.num_nodes();
  if (n < 2) out.push_back({"too_few_nodes", "need at least 2 nodes, got " +
                                                 std::to_string(n)});
  if (!(s.frequency_hz > 0.0))
    out.push_back({"nonpositive_frequency",
                   "carrier frequency must be > 0 Hz"});
  if (!s.area.valid())
    out.push_back({"invalid_area", "area must satisfy xmax>xmin, ymax>ymin"});
  for (int i = 0; i < n; ++i) {
    if (s.area.valid() && !s.area.contains(s.node(i)))
      out.push_back({"node_outside_area", "node " + std::to_string(i)});
    for (int j = i + 1; j < n; ++j) {
      if ((s.node(i) - s.node(j)).norm() <= 1e-9)
        out.push_back({"duplicate_node", "nodes " + std::to_string(i) +
                                             " and " + std::to_string(j)});
    }
  }
  const RewardParams& r = s.reward;
  if (!(r.gain_scale > 0.0))
    out.push_back({"nonpositive_gain_scale", "gain_scale must be > 0"});
  if (!(r.link_cost > 0.0))
    out.push_back({"nonpositive_link_cost", "link_cost must be > 0"});
  if (!(r.decay_length_m > 0.0))
    out.push_back({"nonpositive_decay_length", "decay_length_m must be > 0"});
  if (!(r.ineffective_threshold_m > 0.0))
    out.push_back({"nonpositive_ineffective_threshold",
                   "ineffective_threshold_m must be > 0"});
  if (r.gain_scale > 0.0 && r.link_cost > 0.0 && !(r.gain_scale > r.link_cost))
    out.push_back({"gain_not_above_cost",
                   "gain_scale must exceed link_cost or no link is ever "
                   "profitable"});
  return out;
}

}  // namespace linkgen

#pragma once

#include <Eigen/Dense>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "linkgen/rng.hpp"
#include "linkgen/scenario.hpp"

namespace linkgen {

// Number of edge categories. The case study only toggles links, but the
// categorical machinery below is written against this constant so richer
// edge labels stay possible.
inline constexpr int kEdgeCategories = 2;

enum EdgeState : int { kInactive = 0, kActive = 1 };

// Categorical activation state of all M = N(N-1)/2 candidate links, in
// canonical unordered-pair order. Node activation is derived, never stored:
// a node is active iff it is an endpoint of at least one active edge.
struct EdgeGraph {
  Eigen::VectorXi states;

  int num_edges() const { return static_cast<int>(states.size()); }
  int active_count() const { return static_cast<int>(states.count()); }

  static EdgeGraph all_inactive(int m) {
    return EdgeGraph{Eigen::VectorXi::Zero(m)};
  }

  friend bool operator==(const EdgeGraph& a, const EdgeGraph& b) {
    return a.states.size() == b.states.size() && a.states == b.states;
  }
};

// M x K one-hot encoding of an EdgeGraph; every row sums to exactly 1.
using OneHotGraph = Eigen::MatrixXd;

// Canonical index of the unordered pair {i, j} among N nodes:
// index = i*N - i*(i+1)/2 + (j - i - 1) for i < j. Symmetric in (i, j),
// bijective onto [0, N(N-1)/2). Throws std::domain_error on bad ids.
int edge_index(int i, int j, int num_nodes);

// Inverse of edge_index: the unordered pair (i, j), i < j, at a canonical
// index. Throws std::domain_error when the index is out of range.
std::pair<int, int> edge_endpoints(int index, int num_nodes);

OneHotGraph encode_one_hot(const EdgeGraph& g);

// Inverse of encode_one_hot. Throws FormatError on any non-one-hot row.
EdgeGraph decode_one_hot(const OneHotGraph& x);

// Ids of nodes incident to at least one active edge.
std::set<int> active_nodes(const EdgeGraph& g, int num_nodes);

// Each edge independently uniform over {Inactive, Active}.
EdgeGraph sample_uniform_graph(Rng& rng, int num_edges);

// One scenario-invariant violation, with a machine-readable code.
struct Violation {
  std::string code;
  std::string detail;
};

// Returns every violated Scenario invariant; empty means the scenario is ok.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace linkgen

#include "linkgen/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace linkgen {

double wavelength(double frequency_hz) {
  if (!(frequency_hz > 0.0))
    throw std::domain_error("wavelength: frequency must be > 0 Hz");
  return kSpeedOfLight / frequency_hz;
}

double fresnel_semi_minor(double length, double lambda) {
  if (!(length > 0.0))
    throw std::domain_error("fresnel_semi_minor: link length must be > 0");
  if (lambda < 0.0)
    throw std::domain_error("fresnel_semi_minor: wavelength must be >= 0");
  return 0.5 * std::sqrt(lambda * length + lambda * lambda / 4.0);
}

LinkGeometry link_geometry(const Scenario& s, int i, int j) {
  LinkGeometry link;
  link.tx = s.node(i);
  link.rx = s.node(j);
  link.length = (link.tx - link.rx).norm();
  link.wavelength = wavelength(s.frequency_hz);
  if (!(link.length > 0.0))
    throw std::domain_error("link_geometry: coincident endpoints");
  return link;
}

double excess_path(const Vec2& p, const LinkGeometry& link) {
  return (p - link.tx).norm() + (p - link.rx).norm() -
         (link.length + link.wavelength / 2.0);
}

double link_quality(double excess, double decay_length) {
  if (!(decay_length > 0.0))
    throw std::domain_error("link_quality: decay length must be > 0");
  return std::exp(-std::max(0.0, excess) / decay_length);
}

RewardBreakdown reward(const EdgeGraph& g, const Scenario& s,
                       const Condition& cond) {
  const RewardParams& rp = s.reward;
  RewardBreakdown out;
  out.active_link_count = g.active_count();
  out.per_link_quality.resize(out.active_link_count);
  double quality_sum = 0.0;
  int slot = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.states[e] != kActive) continue;
    const auto [i, j] = edge_endpoints(e, s.num_nodes());
    const double q =
        link_quality(excess_path(cond.target_position, link_geometry(s, i, j)),
                     rp.decay_length_m);
    out.per_link_quality[slot++] = q;
    quality_sum += q;
  }
  out.gain_term = rp.gain_scale * (1.0 - std::exp(-quality_sum));
  out.cost_term = rp.link_cost * out.active_link_count;
  out.total = out.gain_term - out.cost_term;
  return out;
}

EdgeGraph greedy_baseline(const Scenario& s, const Condition& cond) {
  const int n = s.num_nodes();
  if (n < 4)
    throw std::domain_error("greedy_baseline: needs at least 4 nodes");
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    const double da = (s.node(a) - cond.target_position).norm();
    const double db = (s.node(b) - cond.target_position).norm();
    if (da != db) return da < db;
    return a < b;  // ties broken by lower node id
  });
  EdgeGraph g = EdgeGraph::all_inactive(s.num_edges());
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      g.states[edge_index(ids[a], ids[b], n)] = kActive;
  return g;
}

EdgeGraph random_baseline(Rng& rng, int num_edges) {
  return sample_uniform_graph(rng, num_edges);
}

int ineffective_link_count(const EdgeGraph& g, const Scenario& s,
                           const Condition& cond) {
  int count = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.states[e] != kActive) continue;
    const auto [i, j] = edge_endpoints(e, s.num_nodes());
    if (excess_path(cond.target_position, link_geometry(s, i, j)) >
        s.reward.ineffective_threshold_m)
      ++count;
  }
  return count;
}

}  // namespace linkgen

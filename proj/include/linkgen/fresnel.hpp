#pragma once

#include <Eigen/Dense>

#include "linkgen/graph.hpp"
#include "linkgen/scenario.hpp"

namespace linkgen {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

// Transmitter/receiver pair with precomputed length and carrier wavelength.
// The first Fresnel zone of the pair is the ellipse with foci tx, rx whose
// points P satisfy |TP| + |PR| = D + lambda/2.
struct LinkGeometry {
  Vec2 tx{0.0, 0.0};
  Vec2 rx{0.0, 0.0};
  double length = 0.0;      // D, meters
  double wavelength = 0.0;  // lambda, meters
};

// lambda = c / f. Throws std::domain_error for f <= 0.
double wavelength(double frequency_hz);

// Semi-minor axis b = 0.5 * sqrt(lambda*D + lambda^2/4) of the first Fresnel
// ellipse; the semi-major axis is (D + lambda/2) / 2. Throws for D <= 0.
double fresnel_semi_minor(double length, double lambda);

// Builds the geometry of the link between scenario nodes i and j.
LinkGeometry link_geometry(const Scenario& s, int i, int j);

// Path-length excess s = |p-tx| + |p-rx| - (D + lambda/2). s <= 0 iff p lies
// inside or on the first Fresnel ellipse.
double excess_path(const Vec2& p, const LinkGeometry& link);

// Per-link sensing quality q = exp(-max(0, s) / sigma), in (0, 1]; exactly 1
// whenever the target is inside the zone. Throws for sigma <= 0.
double link_quality(double excess, double decay_length);

// Reward decomposition: total = gain - cost with saturating gain
// G0 * (1 - exp(-sum q)) and cost c * (active link count).
struct RewardBreakdown {
  double total = 0.0;
  double gain_term = 0.0;
  double cost_term = 0.0;
  Eigen::VectorXd per_link_quality;  // q of each active link, canonical order
  int active_link_count = 0;
};

RewardBreakdown reward(const EdgeGraph& g, const Scenario& s,
                       const Condition& cond);

// Activates all pairwise links among the 4 nodes nearest the target, ties
// broken by lower node id. Throws std::domain_error when N < 4.
EdgeGraph greedy_baseline(const Scenario& s, const Condition& cond);

// Each edge active independently with probability 1/2.
EdgeGraph random_baseline(Rng& rng, int num_edges);

// Number of active links whose excess path exceeds the ineffective threshold.
int ineffective_link_count(const EdgeGraph& g, const Scenario& s,
                           const Condition& cond);

}  // namespace linkgen

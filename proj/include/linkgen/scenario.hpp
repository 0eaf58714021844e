#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace linkgen {

using Vec2 = Eigen::Vector2d;

// Axis-aligned bounding rectangle in meters.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool valid() const { return xmax > xmin && ymax > ymin; }
  bool contains(const Vec2& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

// Constants of the sensing reward. gain_scale is the saturating-gain ceiling,
// link_cost the flat price per active link, decay_length_m the e-folding of
// link quality outside the first Fresnel zone, ineffective_threshold_m the
// excess-path cutoff beyond which an active link counts as ineffective.
struct RewardParams {
  double gain_scale = 400.0;
  double link_cost = 25.0;
  double decay_length_m = 0.5;
  double ineffective_threshold_m = 1.0;
};

// Immutable world description: device layout, carrier, bounds, reward constants.
struct Scenario {
  Eigen::Matrix<double, Eigen::Dynamic, 2> node_positions;  // N x 2, meters
  double frequency_hz = 0.0;
  Rect area;
  RewardParams reward;

  int num_nodes() const { return static_cast<int>(node_positions.rows()); }
  int num_edges() const {
    const int n = num_nodes();
    return n * (n - 1) / 2;
  }
  Vec2 node(int i) const { return node_positions.row(i).transpose(); }
};

// Generation condition: the sensing target's location.
struct Condition {
  Vec2 target_position{0.0, 0.0};
};

// Nine devices on a 3x3 grid spanning a 10 m square, 2.4 GHz carrier.
Scenario reference_scenario();

}  // namespace linkgen

#pragma once

#include <string>
#include <vector>

#include "linkgen/fresnel.hpp"
#include "linkgen/graph.hpp"
#include "linkgen/scenario.hpp"
#include "linkgen/trainer.hpp"

namespace linkgen {

// Scene rendering of one activation graph: nodes as green dots, active links
// as black segments, their first Fresnel zones as shaded ellipses, the
// target as a purple cross, and ineffective links (excess path above the
// scenario threshold) dashed red. Output is a deterministic function of
// (graph, scenario, condition).
std::string render_scene_svg(const EdgeGraph& g, const Scenario& s,
                             const Condition& cond);

// Reward-versus-epoch curves: trained validation mean against the greedy and
// random baselines, plus the raw training mean.
std::string render_training_curves_svg(const std::vector<EpochMetrics>& rows);

}  // namespace linkgen

#pragma once

#include <span>
#include <vector>

#include "weylscatter/config.hpp"

namespace weylscatter {

struct GridPoint {
    double lambda = 0.0;     // the point actually evaluated
    double requested = 0.0;  // before nudging
    bool nudged = false;
};

/// Linear or log spaced points; any point within spec.nudge of an entry of
/// `avoid` is moved spec.nudge away from it, in the direction it already lay.
std::vector<GridPoint> make_grid(const GridSpec& spec, std::span<const double> avoid = {});

/// Declared singular points of the model plus the known thresholds of the pair
/// (model, Θ): −θ² for the free model, ϑ₁, ϑ₂ for Dirac with diagonal Θ, and
/// the free thresholds of Θ − I for a point interaction over the free model.
std::vector<double> threshold_points(const WeylFunction& model, const BoundaryParameter& theta);

}  // namespace weylscatter

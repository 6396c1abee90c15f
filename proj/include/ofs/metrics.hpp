#pragma once

#include <vector>

#include "ofs/core.hpp"

namespace ofs {

// Mean Euclidean distance from each front point to its nearest reference
// point. Zero when every point lies on the reference front; throws when
// either set is empty or dimensions disagree.
double generational_distance(const std::vector<Objectives>& front,
                             const std::vector<Objectives>& reference);

// Exact dominated hypervolume for two-objective minimization, measured
// against `reference`. Points that do not strictly dominate the reference
// contribute nothing; dominated points are ignored by construction.
double hypervolume_2d(const std::vector<Objectives>& points, const Objectives& reference);

} // namespace ofs

#pragma once

#include "symgrowth/map_zoo.hpp"

#include <functional>
#include <vector>

namespace symgrowth {

/// Sample grid of a model domain with its covering radius: every domain point
/// lies within `covering_radius` of some grid point. Doubling the resolution
/// gives a superset of points.
struct Grid {
  int resolution = 0;
  std::vector<Vec> points;
  double covering_radius = 0.0;
};

/// Periodic axes get i/R (i < R), bounded axes lo + (hi - lo) i/R (i <= R).
/// Axes in `collapsed` are pinned at lo; they contribute nothing to the
/// covering radius, which is only valid when the sampled quantity is invariant
/// along them. Points outside the momentum ball are projected onto it.
Grid make_grid(const Domain& domain, int resolution, const std::vector<int>& collapsed = {});

/// Split [0, count) into `jobs` contiguous chunks and run body(begin, end) on each.
void parallel_chunks(std::size_t count, int jobs, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace symgrowth

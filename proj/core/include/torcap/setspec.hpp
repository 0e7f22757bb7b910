#pragma once

#include "torcap/grid.hpp"

#include <string>

namespace torcap {

// Builds a GridSet from the JSON set-specification language:
//   {"type":"full"}
//   {"type":"arc","dim":j,"start":a,"end":b}          angles in radians,
//       half-open [a,b), snapped outward (floor/ceil) onto the grid
//   {"type":"product","factors":[spec,...]}           one 1-D spec per axis
//   {"type":"union","parts":[spec,...]}
//   {"type":"cantor","dim":j,"levels":L,"ratios":[r_1..r_L]}
//       level i replaces each interval by two end pieces of r_i times its
//       length, starting from the full circle cut at 0
// Product specs keep their per-axis factor masks, which routes them through
// the tensor equilibrium fast path.
GridSet parse_set_spec(const TorusGrid& grid, const std::string& json_text);

// sup-metric (Chebyshev) dilation by an integer cell radius, with wraparound
GridSet dilate(const GridSet& set, std::size_t radius_cells);

// 1-D outer-cover arc [start, end) in radians on an m-point axis
std::vector<bool> arc_mask_1d(std::size_t m, double start, double end);

} // namespace torcap

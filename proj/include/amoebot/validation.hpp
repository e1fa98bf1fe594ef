#pragma once

// Executable safety invariants and goal-shape definitions,
// plus the closed-form work lower bounds for the line configuration.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "amoebot/core.hpp"
#include "amoebot/scheduler.hpp"

namespace amoebot {

struct ShapeReport {
  bool valid = false;
  std::int64_t radius_or_side = 0;  // r for a hexagon, s (complete rows) for a triangle
  std::int64_t complete_layers = 0;
  std::int64_t partial_layer_size = 0;
  std::string failure_reason;
};

class NotTerminated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A(c) has no cycle (each node has at most one outgoing edge: tail->head or
/// head->parent), and every component of inactive particles touches a
/// non-inactive particle.
bool forest_check(const Configuration& cfg);

/// Every follower's parent flag points at a node occupied by a follower or root.
bool follower_parent_check(const Configuration& cfg);

/// Disk of radius r around the seed plus one contiguous arc of ring r+1.
/// Throws NotTerminated unless every particle is retired and contracted.
ShapeReport validate_hexagon(const Configuration& cfg);

/// Rows 1..s of the triangle spanned at the seed by its two border directions,
/// plus a partial row s+1 that is contiguous and touches one border.
/// Throws NotTerminated unless every particle is retired and contracted.
ShapeReport validate_triangle(const Configuration& cfg);

/// 2 * sum_{i=2}^{n-1} (i-1 - ceil((i-1)/6)).
std::uint64_t hex_lower_bound(std::uint64_t n);

/// 2 * sum_{i=1}^{n-1} (i-1 - ceil((i-1)/2)).
std::uint64_t tri_lower_bound(std::uint64_t n);

/// connectivity, occupancy, forest, follower-parent.
std::vector<Checker> default_checkers();

}  // namespace amoebot

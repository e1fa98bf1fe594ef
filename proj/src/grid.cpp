#include "amoebot/grid.hpp"

#include <cstdlib>
#include <stdexcept>

namespace amoebot {

std::int64_t distance(Node a, Node b) {
  const auto dq = a.q - b.q;
  const auto dr = a.r - b.r;
  return (std::llabs(dq) + std::llabs(dr) + std::llabs(dq + dr)) / 2;
}

std::optional<Direction> direction_between(Node from, Node to) {
  const Node delta = to - from;
  for (int d = 0; d < 6; ++d) {
    if (kDirectionBasis[static_cast<std::size_t>(d)] == delta) return Direction(d);
  }
  return std::nullopt;
}

std::vector<Node> ring_nodes(Node center, int k) {
  if (k < 1) throw std::invalid_argument("ring_nodes: k must be >= 1");
  std::vector<Node> out;
  out.reserve(static_cast<std::size_t>(6 * k));
  // Start at the corner in direction 4 and walk sides 0..5; corners then
  // advance 4 -> 5 -> 0 -> ... which is the clockwise order.
  Node cur{center.q + k * basis(Direction(4)).q, center.r + k * basis(Direction(4)).r};
  for (int side = 0; side < 6; ++side) {
    for (int step = 0; step < k; ++step) {
      out.push_back(cur);
      cur = neighbor(cur, Direction(side));
    }
  }
  return out;
}

}  // namespace amoebot

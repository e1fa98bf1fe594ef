#include "amoebot/validation.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "amoebot/grid.hpp"

namespace amoebot {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

void require_terminated(const Configuration& cfg) {
  for (const auto& p : cfg.particles()) {
    if (p.state != ParticleState::Retired || p.expanded()) {
      throw NotTerminated("shape validation needs every particle retired and contracted");
    }
  }
}

ShapeReport fail(std::string why) {
  ShapeReport r;
  r.failure_reason = std::move(why);
  return r;
}

}  // namespace

bool forest_check(const Configuration& cfg) {
  std::unordered_map<Node, Node, NodeHash> out;
  for (const auto& p : cfg.particles()) {
    if (p.expanded() && !out.emplace(p.tail, p.head).second) return false;
    if (p.state == ParticleState::Follower) {
      const auto target = parent_node(p);
      if (!target || !cfg.occupied(*target)) return false;
      if (!out.emplace(p.head, *target).second) return false;
    }
  }

  // Out-degree <= 1 everywhere, so a cycle exists iff some walk revisits a node.
  std::unordered_map<Node, int, NodeHash> color;  // 1 = on current walk, 2 = done
  for (const auto& [start, _] : out) {
    if (color[start] == 2) continue;
    std::vector<Node> walk;
    Node v = start;
    for (;;) {
      auto& c = color[v];
      if (c == 1) return false;
      if (c == 2) break;
      c = 1;
      walk.push_back(v);
      const auto next = out.find(v);
      if (next == out.end()) break;
      v = next->second;
    }
    for (const auto& w : walk) color[w] = 2;
  }

  bool any_active = false;
  for (const auto& p : cfg.particles()) {
    if (p.state == ParticleState::Follower || p.state == ParticleState::Root) any_active = true;
  }
  if (!any_active) return true;

  const auto state_at = [&](Node v) -> std::optional<ParticleState> {
    const auto id = cfg.occupant(v);
    if (!id) return std::nullopt;
    return cfg.particle(*id).state;
  };
  std::unordered_set<Node, NodeHash> seen;
  for (const auto& p : cfg.particles()) {
    if (p.state != ParticleState::Inactive || seen.contains(p.head)) continue;
    bool touches = false;
    std::deque<Node> frontier{p.head};
    seen.insert(p.head);
    while (!frontier.empty()) {
      const Node v = frontier.front();
      frontier.pop_front();
      for (int d = 0; d < 6; ++d) {
        const Node w = neighbor(v, Direction(d));
        const auto s = state_at(w);
        if (!s) continue;
        if (*s != ParticleState::Inactive) {
          touches = true;
        } else if (seen.insert(w).second) {
          frontier.push_back(w);
        }
      }
    }
    if (!touches) return false;
  }
  return true;
}

bool follower_parent_check(const Configuration& cfg) {
  for (const auto& p : cfg.particles()) {
    if (p.state != ParticleState::Follower) continue;
    const auto target = parent_node(p);
    if (!target) return false;
    const auto id = cfg.occupant(*target);
    if (!id) return false;
    const auto s = cfg.particle(*id).state;
    if (s != ParticleState::Follower && s != ParticleState::Root) return false;
  }
  return true;
}

ShapeReport validate_hexagon(const Configuration& cfg) {
  require_terminated(cfg);
  const auto seed = cfg.seed();
  if (!seed) return fail("no seed");
  const Node center = cfg.particle(*seed).head;
  const auto n = static_cast<std::int64_t>(cfg.occupied_count());

  // Largest r whose full disk (1 + 3r(r+1) nodes) fits in n.
  std::int64_t r = 0;
  while (1 + 3 * (r + 1) * (r + 2) <= n) ++r;
  for (std::int64_t k = 1; k <= r; ++k) {
    for (const auto& v : ring_nodes(center, static_cast<int>(k))) {
      if (!cfg.occupied(v)) return fail("hole at distance " + std::to_string(k) + " from the seed");
    }
  }
  const std::int64_t partial = n - (1 + 3 * r * (r + 1));
  ShapeReport rep;
  rep.radius_or_side = r;
  rep.complete_layers = r;
  rep.partial_layer_size = partial;
  if (partial > 0) {
    const auto ring = ring_nodes(center, static_cast<int>(r + 1));
    std::int64_t on_ring = 0;
    std::int64_t runs = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const bool here = cfg.occupied(ring[i]);
      const bool prev = cfg.occupied(ring[(i + ring.size() - 1) % ring.size()]);
      on_ring += here ? 1 : 0;
      if (here && !prev) ++runs;
    }
    if (on_ring != partial) return fail("particles outside the disk and its next ring");
    if (runs != 1) return fail("outer ring is not one contiguous arc");
  }
  rep.valid = true;
  return rep;
}

ShapeReport validate_triangle(const Configuration& cfg) {
  require_terminated(cfg);
  const auto seed = cfg.seed();
  if (!seed) return fail("no seed");
  const auto& sp = cfg.particle(*seed);
  std::optional<Direction> left;
  std::optional<Direction> right;
  for (int l = 0; l < 6; ++l) {
    const auto& f = sp.flags[static_cast<std::size_t>(l)];
    if (f.border_left && !left) left = local_to_global(sp.offset, Label(l));
    if (f.border_right && !right) right = local_to_global(sp.offset, Label(l));
  }
  if (!left || !right) return fail("seed carries no border flags");
  if (*right != *left + 1 && *right != *left - 1) return fail("seed border directions are not 60 degrees apart");

  const Node corner = sp.head;
  const Node bl = basis(*left);
  const Node br = basis(*right);
  const auto row_node = [&](std::int64_t x, std::int64_t y) {
    return Node{corner.q + x * bl.q + y * br.q, corner.r + x * bl.r + y * br.r};
  };

  const auto n = static_cast<std::int64_t>(cfg.occupied_count());
  std::int64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  for (std::int64_t row = 0; row < s; ++row) {
    for (std::int64_t x = 0; x <= row; ++x) {
      if (!cfg.occupied(row_node(x, row - x))) return fail("row " + std::to_string(row + 1) + " incomplete");
    }
  }
  const std::int64_t partial = n - s * (s + 1) / 2;
  ShapeReport rep;
  rep.radius_or_side = s;
  rep.complete_layers = s;
  rep.partial_layer_size = partial;
  if (partial > 0) {
    // Row s+1 holds s+1 nodes; x = s is on the left border, x = 0 on the right.
    std::vector<bool> occ(static_cast<std::size_t>(s + 1));
    std::int64_t count = 0;
    for (std::int64_t x = 0; x <= s; ++x) {
      occ[static_cast<std::size_t>(x)] = cfg.occupied(row_node(x, s - x));
      count += occ[static_cast<std::size_t>(x)] ? 1 : 0;
    }
    if (count != partial) return fail("particles outside the triangle and its next row");
    bool from_right = true;
    bool from_left = true;
    for (std::int64_t k = 0; k < partial; ++k) {
      from_right = from_right && occ[static_cast<std::size_t>(k)];
      from_left = from_left && occ[static_cast<std::size_t>(s - k)];
    }
    if (!from_left && !from_right) return fail("partial row is not anchored at a border");
  }
  rep.valid = true;
  return rep;
}

std::uint64_t hex_lower_bound(std::uint64_t n) {
  std::uint64_t sum = 0;
  for (std::uint64_t i = 2; i + 1 <= n; ++i) sum += (i - 1) - ceil_div(i - 1, 6);
  return 2 * sum;
}

std::uint64_t tri_lower_bound(std::uint64_t n) {
  std::uint64_t sum = 0;
  for (std::uint64_t i = 1; i + 1 <= n; ++i) sum += (i - 1) - ceil_div(i - 1, 2);
  return 2 * sum;
}

std::vector<Checker> default_checkers() {
  return {
      {"connectivity", [](const Configuration& c) { return is_connected(c); }},
      {"occupancy", [](const Configuration& c) { return c.occupancy_consistent(); }},
      {"forest", [](const Configuration& c) { return forest_check(c); }},
      {"follower-parent", [](const Configuration& c) { return follower_parent_check(c); }},
  };
}

}  // namespace amoebot

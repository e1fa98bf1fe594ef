#include "amoebot/generators.hpp"

#include <stdexcept>
#include <unordered_set>

#include "amoebot/random.hpp"

namespace amoebot {

InitialConfig gen_line(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gen_line: n must be >= 1");
  InitialConfig init;
  init.generator = "line";
  init.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) init.nodes.push_back({static_cast<std::int64_t>(i), 0});
  return init;
}

InitialConfig gen_random_connected(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_random_connected: n must be >= 1");
  InitialConfig init;
  init.generator = "random";
  init.generator_seed = seed;
  init.nodes.reserve(n);

  Rng rng(seed);
  std::unordered_set<Node, NodeHash> taken;
  std::unordered_set<Node, NodeHash> in_frontier;
  std::vector<Node> frontier;

  const auto add = [&](Node v) {
    init.nodes.push_back(v);
    taken.insert(v);
    for (int d = 0; d < 6; ++d) {
      const Node w = neighbor(v, Direction(d));
      if (!taken.contains(w) && in_frontier.insert(w).second) frontier.push_back(w);
    }
  };

  add({0, 0});
  while (init.nodes.size() < n) {
    const auto k = static_cast<std::size_t>(rng.below(frontier.size()));
    const Node v = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    in_frontier.erase(v);
    add(v);
  }
  return init;
}

Configuration build_configuration(const InitialConfig& init, const SnakeRule& rule, std::uint64_t offset_seed,
                                  int seed_offset) {
  if (init.nodes.empty()) throw std::invalid_argument("build_configuration: empty node set");
  Configuration cfg;
  Rng rng(offset_seed);
  const auto seed = cfg.add_particle(init.nodes.front(), seed_offset, ParticleState::Retired, true);
  cfg.set_flags(seed, rule.seed_init());
  for (std::size_t i = 1; i < init.nodes.size(); ++i) {
    cfg.add_particle(init.nodes[i], static_cast<int>(rng.below(6)), ParticleState::Inactive);
  }
  return cfg;
}

}  // namespace amoebot

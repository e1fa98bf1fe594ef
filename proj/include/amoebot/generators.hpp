#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amoebot/algorithms.hpp"
#include "amoebot/core.hpp"

namespace amoebot {

/// Initial node set; nodes[0] is the seed.
struct InitialConfig {
  std::vector<Node> nodes;
  std::string generator;
  std::uint64_t generator_seed = 0;

  Node seed() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
};

/// n nodes along direction 0 starting at the origin; the seed is at the origin end.
InitialConfig gen_line(std::size_t n);

/// Random growth from the origin: n-1 times add a uniformly chosen empty node
/// adjacent to the current set.
InitialConfig gen_random_connected(std::size_t n, std::uint64_t seed);

/// Builds the starting configuration: all particles contracted and inactive
/// except the retired seed, which carries the rule's preset flags.
/// Non-seed offsets are drawn from `offset_seed`; the seed's offset is `seed_offset`.
Configuration build_configuration(const InitialConfig& init, const SnakeRule& rule, std::uint64_t offset_seed,
                                  int seed_offset = 0);

}  // namespace amoebot

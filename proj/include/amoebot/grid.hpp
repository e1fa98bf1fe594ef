#pragma once

// Geometry of the infinite triangular lattice in axial coordinates.
//
// Directions are indexed 0..5 in clockwise order. Every particle shares this
// chirality; only the offset of its local port labels differs.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace amoebot {

struct Node {
  std::int64_t q = 0;
  std::int64_t r = 0;

  friend constexpr auto operator<=>(const Node&, const Node&) = default;
  friend constexpr Node operator+(Node a, Node b) { return {a.q + b.q, a.r + b.r}; }
  friend constexpr Node operator-(Node a, Node b) { return {a.q - b.q, a.r - b.r}; }
};

struct NodeHash {
  std::size_t operator()(const Node& n) const noexcept {
    auto h = static_cast<std::uint64_t>(n.q) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(n.r) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

namespace detail {
constexpr int mod6(int v) { return ((v % 6) + 6) % 6; }
}  // namespace detail

/// A global lattice direction. Arithmetic wraps modulo 6; +1 is one clockwise step.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr explicit Direction(int index) : index_(detail::mod6(index)) {}

  constexpr int index() const { return index_; }

  friend constexpr Direction operator+(Direction d, int steps) { return Direction(d.index_ + steps); }
  friend constexpr Direction operator-(Direction d, int steps) { return Direction(d.index_ - steps); }
  friend constexpr bool operator==(Direction, Direction) = default;

 private:
  int index_ = 0;
};

/// A particle-local port label. Same arithmetic as Direction, different frame.
class Label {
 public:
  constexpr Label() = default;
  constexpr explicit Label(int value) : value_(detail::mod6(value)) {}

  constexpr int value() const { return value_; }

  friend constexpr Label operator+(Label l, int steps) { return Label(l.value_ + steps); }
  friend constexpr Label operator-(Label l, int steps) { return Label(l.value_ - steps); }
  friend constexpr bool operator==(Label, Label) = default;

 private:
  int value_ = 0;
};

inline constexpr std::array<Node, 6> kDirectionBasis = {{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1},
}};

constexpr Node basis(Direction d) { return kDirectionBasis[static_cast<std::size_t>(d.index())]; }

constexpr Node neighbor(Node v, Direction d) { return v + basis(d); }

constexpr Direction opposite(Direction d) { return d + 3; }

constexpr Direction next_clockwise(Direction d) { return d + 1; }

/// Lattice graph distance.
std::int64_t distance(Node a, Node b);

/// Direction from `from` to an adjacent node `to`, or nullopt if they are not adjacent.
std::optional<Direction> direction_between(Node from, Node to);

inline bool adjacent(Node a, Node b) { return direction_between(a, b).has_value(); }

constexpr Direction local_to_global(int offset, Label l) { return Direction(offset + l.value()); }

constexpr Label global_to_local(int offset, Direction d) { return Label(d.index() - offset); }

/// The 6k nodes at distance exactly k >= 1 from center, in one clockwise walk.
/// Consecutive entries are adjacent, and so are the last and the first.
std::vector<Node> ring_nodes(Node center, int k);

}  // namespace amoebot

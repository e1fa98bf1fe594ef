#pragma once

// Particle and configuration state, and the atomic actions that mutate it.
//
// This is the only layer that sees global coordinates and particle ids. The
// algorithms layer receives a NeighborView and nothing else.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amoebot/grid.hpp"

namespace amoebot {

enum class ParticleState : std::uint8_t { Inactive, Follower, Root, Retired };

std::string_view to_string(ParticleState s);

/// Flags a particle stores in the shared memory of one of its edges.
struct EdgeFlags {
  bool parent = false;
  bool snakedir = false;
  bool border_left = false;
  bool border_right = false;

  bool any() const { return parent || snakedir || border_left || border_right; }
  friend bool operator==(const EdgeFlags&, const EdgeFlags&) = default;
};

/// Per-port flags of a particle, indexed by local label of its head node.
using FlagSet = std::array<EdgeFlags, 6>;

using ParticleId = std::uint32_t;

struct Particle {
  ParticleState state = ParticleState::Inactive;
  int offset = 0;
  Node head;
  Node tail;  // == head iff contracted
  bool is_seed = false;
  FlagSet flags{};
  std::uint64_t movements = 0;

  bool expanded() const { return head != tail; }
  std::optional<Label> parent_port() const;
};

enum class MoveStatus : std::uint8_t {
  Ok,
  TargetOccupied,
  AlreadyExpanded,
  NotExpanded,
  NotAdjacentToTail,
  WrongShapes,
  ParticleRetired,
};

std::string_view to_string(MoveStatus s);

class Configuration {
 public:
  /// Places a contracted particle. Throws std::invalid_argument if `at` is occupied.
  ParticleId add_particle(Node at, int offset, ParticleState state, bool is_seed = false);

  std::size_t size() const { return particles_.size(); }
  const Particle& particle(ParticleId id) const { return particles_.at(id); }
  std::span<const Particle> particles() const { return particles_; }

  std::optional<ParticleId> occupant(Node v) const;
  bool occupied(Node v) const { return occupancy_.contains(v); }
  std::size_t occupied_count() const { return occupancy_.size(); }
  const std::unordered_map<Node, ParticleId, NodeHash>& occupancy() const { return occupancy_; }

  std::optional<ParticleId> seed() const { return seed_; }

  std::uint64_t movements() const { return expansions_ + contractions_; }
  std::uint64_t expansions() const { return expansions_; }
  std::uint64_t contractions() const { return contractions_; }

  /// Every particle's nodes match the occupancy map and vice versa.
  bool occupancy_consistent() const;

  /// Moves a particle to a contracted position without any model checks or
  /// work accounting. Fault injection only.
  void relocate(ParticleId id, Node to);

  /// Overwrites a particle's flags without model checks. Used to preset the
  /// seed and to build hand-made test geometries.
  void set_flags(ParticleId id, const FlagSet& flags) { particles_.at(id).flags = flags; }

  /// Overwrites state without transition checks. Test fixtures only.
  void force_state(ParticleId id, ParticleState s) { particles_.at(id).state = s; }

 private:
  friend MoveStatus expand(Configuration&, ParticleId, Label);
  friend MoveStatus contract(Configuration&, ParticleId);
  friend MoveStatus handover_push(Configuration&, ParticleId, ParticleId);
  friend MoveStatus handover_pull(Configuration&, ParticleId, ParticleId);
  friend void become_follower(Configuration&, ParticleId, Label);
  friend void become_root(Configuration&, ParticleId);
  friend void retire(Configuration&, ParticleId, const FlagSet&);

  void do_expand(ParticleId id, Node target);
  void do_contract(ParticleId id);
  void refresh_parent_port(ParticleId id, std::optional<ParticleId> parent);

  std::vector<Particle> particles_;
  std::unordered_map<Node, ParticleId, NodeHash> occupancy_;
  std::optional<ParticleId> seed_;
  std::uint64_t expansions_ = 0;
  std::uint64_t contractions_ = 0;
};

// Movement actions. Each returns Ok and mutates, or returns an error status
// and leaves the configuration untouched.

/// Expands a contracted particle along its local port `l` of the head.
[[nodiscard]] MoveStatus expand(Configuration& cfg, ParticleId p, Label l);

/// Contracts out of the tail; the head is kept.
[[nodiscard]] MoveStatus contract(Configuration& cfg, ParticleId p);

/// Contracted p pushes expanded q: q contracts to its head and p expands into q's old tail.
[[nodiscard]] MoveStatus handover_push(Configuration& cfg, ParticleId p, ParticleId q);

/// Expanded p pulls contracted q into its tail and contracts to its head.
[[nodiscard]] MoveStatus handover_pull(Configuration& cfg, ParticleId p, ParticleId q);

// State transitions. Illegal transitions throw std::logic_error.

void become_follower(Configuration& cfg, ParticleId p, Label parent_port);
void become_root(Configuration& cfg, ParticleId p);

/// Retires a contracted root, ORs `flags` into its own, and promotes every
/// follower whose parent flag points at it to root, as one atomic action.
void retire(Configuration& cfg, ParticleId p, const FlagSet& flags);

bool valid_transition(ParticleState from, ParticleState to);

// ---- local observation ----------------------------------------------------

enum class Side : std::uint8_t { Head, Tail };

/// What a particle sees across one of its ports.
struct PortView {
  enum class Kind : std::uint8_t { Empty, Self, Neighbor };

  Kind kind = Kind::Empty;
  ParticleState state = ParticleState::Inactive;
  bool expanded = false;
  Side side = Side::Head;  // which of the neighbor's nodes lies on this edge
  EdgeFlags shared{};      // flags the neighbor keeps on this edge

  bool occupied() const { return kind == Kind::Neighbor; }
  bool retired() const { return occupied() && state == ParticleState::Retired; }
  bool active() const {
    return occupied() && (state == ParticleState::Follower || state == ParticleState::Root);
  }
};

/// The complete local observation of one particle: own state, own flags and
/// one PortView per port, indexed by local label. No coordinates, ids or n.
struct NeighborView {
  ParticleState state = ParticleState::Inactive;
  bool expanded = false;
  FlagSet own_flags{};
  std::array<PortView, 6> head{};
  std::array<PortView, 6> tail{};  // all Empty when contracted
  std::optional<Label> tail_port;  // head label facing the tail, when expanded

  std::optional<Label> parent_port() const;
  std::size_t port_count() const { return expanded ? 10 : 6; }
};

NeighborView observe(const Configuration& cfg, ParticleId p);

struct Port {
  Side side = Side::Head;
  Label label;
  friend bool operator==(const Port&, const Port&) = default;
};

/// Ports of p across which a follower's parent flag points at p.
std::vector<Port> children_of(const Configuration& cfg, ParticleId p);

/// Occupied nodes induce a connected subgraph (the empty set counts as connected).
bool is_connected(const Configuration& cfg);

/// Node that a follower's parent flag points at.
std::optional<Node> parent_node(const Particle& p);

}  // namespace amoebot

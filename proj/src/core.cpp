#include "amoebot/core.hpp"

#include <deque>
#include <unordered_set>

namespace amoebot {

std::string_view to_string(ParticleState s) {
  switch (s) {
    case ParticleState::Inactive: return "inactive";
    case ParticleState::Follower: return "follower";
    case ParticleState::Root: return "root";
    case ParticleState::Retired: return "retired";
  }
  return "?";
}

std::string_view to_string(MoveStatus s) {
  switch (s) {
    case MoveStatus::Ok: return "ok";
    case MoveStatus::TargetOccupied: return "target-occupied";
    case MoveStatus::AlreadyExpanded: return "already-expanded";
    case MoveStatus::NotExpanded: return "not-expanded";
    case MoveStatus::NotAdjacentToTail: return "not-adjacent-to-tail";
    case MoveStatus::WrongShapes: return "wrong-shapes";
    case MoveStatus::ParticleRetired: return "particle-retired";
  }
  return "?";
}

std::optional<Label> Particle::parent_port() const {
  for (int l = 0; l < 6; ++l) {
    if (flags[static_cast<std::size_t>(l)].parent) return Label(l);
  }
  return std::nullopt;
}

std::optional<Node> parent_node(const Particle& p) {
  const auto port = p.parent_port();
  if (!port) return std::nullopt;
  return neighbor(p.head, local_to_global(p.offset, *port));
}

bool valid_transition(ParticleState from, ParticleState to) {
  using S = ParticleState;
  return (from == S::Inactive && (to == S::Follower || to == S::Root)) ||
         (from == S::Follower && to == S::Root) || (from == S::Root && to == S::Retired);
}

// ---- Configuration ----------------------------------------------------------

ParticleId Configuration::add_particle(Node at, int offset, ParticleState state, bool is_seed) {
  if (occupancy_.contains(at)) throw std::invalid_argument("add_particle: node already occupied");
  if (is_seed && seed_) throw std::invalid_argument("add_particle: seed already present");
  const auto id = static_cast<ParticleId>(particles_.size());
  Particle p;
  p.state = is_seed ? ParticleState::Retired : state;
  p.offset = detail::mod6(offset);
  p.head = p.tail = at;
  p.is_seed = is_seed;
  particles_.push_back(p);
  occupancy_.emplace(at, id);
  if (is_seed) seed_ = id;
  return id;
}

std::optional<ParticleId> Configuration::occupant(Node v) const {
  const auto it = occupancy_.find(v);
  if (it == occupancy_.end()) return std::nullopt;
  return it->second;
}

bool Configuration::occupancy_consistent() const {
  std::size_t expected = 0;
  for (ParticleId id = 0; id < particles_.size(); ++id) {
    const auto& p = particles_[id];
    if (p.expanded() && !adjacent(p.head, p.tail)) return false;
    const auto h = occupancy_.find(p.head);
    if (h == occupancy_.end() || h->second != id) return false;
    ++expected;
    if (p.expanded()) {
      const auto t = occupancy_.find(p.tail);
      if (t == occupancy_.end() || t->second != id) return false;
      ++expected;
    }
  }
  return expected == occupancy_.size();
}

void Configuration::relocate(ParticleId id, Node to) {
  auto& p = particles_.at(id);
  occupancy_.erase(p.head);
  occupancy_.erase(p.tail);
  p.head = p.tail = to;
  occupancy_[to] = id;
}

void Configuration::do_expand(ParticleId id, Node target) {
  auto& p = particles_[id];
  p.tail = p.head;
  p.head = target;
  occupancy_[target] = id;
  ++p.movements;
  ++expansions_;
}

void Configuration::do_contract(ParticleId id) {
  auto& p = particles_[id];
  occupancy_.erase(p.tail);
  p.tail = p.head;
  ++p.movements;
  ++contractions_;
}

void Configuration::refresh_parent_port(ParticleId id, std::optional<ParticleId> parent) {
  auto& p = particles_[id];
  if (p.state != ParticleState::Follower || !parent) return;
  for (int l = 0; l < 6; ++l) {
    const Node v = neighbor(p.head, local_to_global(p.offset, Label(l)));
    const auto occ = occupant(v);
    if (occ && *occ == *parent) {
      for (auto& f : p.flags) f.parent = false;
      p.flags[static_cast<std::size_t>(l)].parent = true;
      return;
    }
  }
}

// ---- movements ----------------------------------------------------------------

namespace {

std::optional<ParticleId> parent_of(const Configuration& cfg, ParticleId id) {
  const auto& p = cfg.particle(id);
  if (p.state != ParticleState::Follower) return std::nullopt;
  const auto node = parent_node(p);
  if (!node) return std::nullopt;
  return cfg.occupant(*node);
}

}  // namespace

MoveStatus expand(Configuration& cfg, ParticleId id, Label l) {
  const auto& p = cfg.particles_.at(id);
  if (p.state == ParticleState::Retired) return MoveStatus::ParticleRetired;
  if (p.expanded()) return MoveStatus::AlreadyExpanded;
  const Node target = neighbor(p.head, local_to_global(p.offset, l));
  if (cfg.occupied(target)) return MoveStatus::TargetOccupied;
  cfg.do_expand(id, target);
  return MoveStatus::Ok;
}

MoveStatus contract(Configuration& cfg, ParticleId id) {
  const auto& p = cfg.particles_.at(id);
  if (p.state == ParticleState::Retired) return MoveStatus::ParticleRetired;
  if (!p.expanded()) return MoveStatus::NotExpanded;
  cfg.do_contract(id);
  return MoveStatus::Ok;
}

MoveStatus handover_push(Configuration& cfg, ParticleId pid, ParticleId qid) {
  const auto& p = cfg.particles_.at(pid);
  const auto& q = cfg.particles_.at(qid);
  if (pid == qid) return MoveStatus::WrongShapes;
  if (p.state == ParticleState::Retired || q.state == ParticleState::Retired) {
    return MoveStatus::ParticleRetired;
  }
  if (p.expanded() || !q.expanded()) return MoveStatus::WrongShapes;
  if (!adjacent(p.head, q.tail)) return MoveStatus::NotAdjacentToTail;

  const auto p_parent = parent_of(cfg, pid);
  const auto q_parent = parent_of(cfg, qid);
  const Node freed = q.tail;
  cfg.do_contract(qid);
  cfg.do_expand(pid, freed);
  cfg.refresh_parent_port(pid, p_parent);
  cfg.refresh_parent_port(qid, q_parent);
  return MoveStatus::Ok;
}

MoveStatus handover_pull(Configuration& cfg, ParticleId pid, ParticleId qid) {
  const auto& p = cfg.particles_.at(pid);
  const auto& q = cfg.particles_.at(qid);
  if (pid == qid) return MoveStatus::WrongShapes;
  if (p.state == ParticleState::Retired || q.state == ParticleState::Retired) {
    return MoveStatus::ParticleRetired;
  }
  if (!p.expanded() || q.expanded()) return MoveStatus::WrongShapes;
  if (!adjacent(q.head, p.tail)) return MoveStatus::NotAdjacentToTail;

  const auto p_parent = parent_of(cfg, pid);
  const auto q_parent = parent_of(cfg, qid);
  const Node freed = p.tail;
  cfg.do_contract(pid);
  cfg.do_expand(qid, freed);
  cfg.refresh_parent_port(pid, p_parent);
  cfg.refresh_parent_port(qid, q_parent);
  return MoveStatus::Ok;
}

// ---- state transitions --------------------------------------------------------

void become_follower(Configuration& cfg, ParticleId id, Label parent_port) {
  auto& p = cfg.particles_.at(id);
  if (!valid_transition(p.state, ParticleState::Follower)) {
    throw std::logic_error("become_follower: illegal transition");
  }
  for (auto& f : p.flags) f.parent = false;
  p.flags[static_cast<std::size_t>(parent_port.value())].parent = true;
  p.state = ParticleState::Follower;
}

void become_root(Configuration& cfg, ParticleId id) {
  auto& p = cfg.particles_.at(id);
  if (!valid_transition(p.state, ParticleState::Root)) {
    throw std::logic_error("become_root: illegal transition");
  }
  for (auto& f : p.flags) f.parent = false;
  p.state = ParticleState::Root;
}

void retire(Configuration& cfg, ParticleId id, const FlagSet& flags) {
  auto& p = cfg.particles_.at(id);
  if (!valid_transition(p.state, ParticleState::Retired)) {
    throw std::logic_error("retire: illegal transition");
  }
  if (p.expanded()) throw std::logic_error("retire: particle is expanded");
  for (std::size_t l = 0; l < 6; ++l) {
    p.flags[l].snakedir = p.flags[l].snakedir || flags[l].snakedir;
    p.flags[l].border_left = p.flags[l].border_left || flags[l].border_left;
    p.flags[l].border_right = p.flags[l].border_right || flags[l].border_right;
  }
  p.state = ParticleState::Retired;

  const Node here = p.head;
  for (int d = 0; d < 6; ++d) {
    const auto occ = cfg.occupant(neighbor(here, Direction(d)));
    if (!occ) continue;
    auto& c = cfg.particles_[*occ];
    if (c.state != ParticleState::Follower) continue;
    const auto target = parent_node(c);
    if (target && *target == here) {
      for (auto& f : c.flags) f.parent = false;
      c.state = ParticleState::Root;
    }
  }
}

// ---- observation ----------------------------------------------------------------

namespace {

PortView view_across(const Configuration& cfg, ParticleId self, Node from, Node to) {
  PortView v;
  const auto occ = cfg.occupant(to);
  if (!occ) return v;
  if (*occ == self) {
    v.kind = PortView::Kind::Self;
    return v;
  }
  const auto& n = cfg.particle(*occ);
  v.kind = PortView::Kind::Neighbor;
  v.state = n.state;
  v.expanded = n.expanded();
  v.side = (to == n.head) ? Side::Head : Side::Tail;
  if (v.side == Side::Head) {
    const auto back = direction_between(to, from);
    v.shared = n.flags[static_cast<std::size_t>(global_to_local(n.offset, *back).value())];
  }
  return v;
}

}  // namespace

std::optional<Label> NeighborView::parent_port() const {
  for (int l = 0; l < 6; ++l) {
    if (own_flags[static_cast<std::size_t>(l)].parent) return Label(l);
  }
  return std::nullopt;
}

NeighborView observe(const Configuration& cfg, ParticleId id) {
  const auto& p = cfg.particle(id);
  NeighborView view;
  view.state = p.state;
  view.expanded = p.expanded();
  view.own_flags = p.flags;
  for (int l = 0; l < 6; ++l) {
    const Direction d = local_to_global(p.offset, Label(l));
    view.head[static_cast<std::size_t>(l)] = view_across(cfg, id, p.head, neighbor(p.head, d));
    if (p.expanded()) {
      view.tail[static_cast<std::size_t>(l)] = view_across(cfg, id, p.tail, neighbor(p.tail, d));
    }
  }
  if (p.expanded()) view.tail_port = global_to_local(p.offset, *direction_between(p.head, p.tail));
  return view;
}

std::vector<Port> children_of(const Configuration& cfg, ParticleId id) {
  std::vector<Port> out;
  const auto& p = cfg.particle(id);
  const auto scan = [&](Node node, Side side) {
    for (int l = 0; l < 6; ++l) {
      const Node v = neighbor(node, local_to_global(p.offset, Label(l)));
      const auto occ = cfg.occupant(v);
      if (!occ || *occ == id) continue;
      const auto& c = cfg.particle(*occ);
      if (c.state != ParticleState::Follower || c.head != v) continue;
      const auto target = parent_node(c);
      if (target && *target == node) out.push_back({side, Label(l)});
    }
  };
  scan(p.head, Side::Head);
  if (p.expanded()) scan(p.tail, Side::Tail);
  return out;
}

bool is_connected(const Configuration& cfg) {
  const auto& occ = cfg.occupancy();
  if (occ.empty()) return true;
  std::unordered_set<Node, NodeHash> seen;
  std::deque<Node> frontier;
  frontier.push_back(occ.begin()->first);
  seen.insert(occ.begin()->first);
  while (!frontier.empty()) {
    const Node v = frontier.front();
    frontier.pop_front();
    for (int d = 0; d < 6; ++d) {
      const Node w = neighbor(v, Direction(d));
      if (occ.contains(w) && seen.insert(w).second) frontier.push_back(w);
    }
  }
  return seen.size() == occ.size();
}

}  // namespace amoebot

#include "amoebot/algorithms.hpp"

#include <array>

namespace amoebot {

namespace {

constexpr std::array<std::string_view, 8> kActionNames = {
    "noop", "become_follower", "become_root", "expand", "contract", "handover_push", "handover_pull", "retire",
};

const PortView& at(const std::array<PortView, 6>& ports, Label l) {
  return ports[static_cast<std::size_t>(l.value())];
}

EdgeFlags& at(FlagSet& flags, Label l) { return flags[static_cast<std::size_t>(l.value())]; }

bool any_retired(const std::array<PortView, 6>& ports) {
  for (const auto& p : ports) {
    if (p.retired()) return true;
  }
  return false;
}

bool any_inactive(const NeighborView& v) {
  for (std::size_t l = 0; l < 6; ++l) {
    if (v.head[l].occupied() && v.head[l].state == ParticleState::Inactive) return true;
    if (v.tail[l].occupied() && v.tail[l].state == ParticleState::Inactive) return true;
  }
  return false;
}

// A child hangs on a node of ours when its head sits across the edge and its
// parent flag is on that edge.
bool is_child(const PortView& p) {
  return p.occupied() && p.state == ParticleState::Follower && p.side == Side::Head && p.shared.parent;
}

// An expanded follower or root: pull a contracted tail-child, or contract once nothing holds it back.
Action expanded_behaviour(const NeighborView& view) {
  bool tail_children = false;
  for (int l = 0; l < 6; ++l) {
    const auto& p = at(view.tail, Label(l));
    if (!is_child(p)) continue;
    tail_children = true;
    if (!p.expanded) return Action::with_port(ActionKind::HandoverPull, Label(l));
  }
  if (!tail_children && !any_inactive(view)) return {ActionKind::Contract, {}, {}};
  return Action::noop();
}

}  // namespace

std::string_view to_string(ActionKind k) { return kActionNames[static_cast<std::size_t>(k)]; }

std::optional<ActionKind> action_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kActionNames.size(); ++i) {
    if (kActionNames[i] == s) return static_cast<ActionKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Algorithm a) { return a == Algorithm::Hex ? "hex" : "tri"; }

std::optional<Algorithm> algorithm_from_string(std::string_view s) {
  if (s == "hex") return Algorithm::Hex;
  if (s == "tri") return Algorithm::Tri;
  return std::nullopt;
}

const SnakeRule& rule_for(Algorithm a) {
  static const HexRule hex;
  static const TriRule tri;
  if (a == Algorithm::Hex) return hex;
  return tri;
}

Label root_direction(const NeighborView& view) {
  int retired = 0;
  int arcs = 0;
  std::optional<Label> start;
  for (int l = 0; l < 6; ++l) {
    if (!at(view.head, Label(l)).retired()) continue;
    ++retired;
    if (!start) start = Label(l);
    if (!at(view.head, Label(l - 1)).retired()) ++arcs;
  }
  if (retired == 0) throw AlgorithmError("root_direction: no retired neighbour");
  if (retired == 6) throw AlgorithmError("root_direction: surrounded by retired particles");
  if (arcs > 1) throw AlgorithmError("root_direction: retired neighbours are not contiguous");
  Label i = *start;
  while (at(view.head, i).retired()) i = i + 1;
  return i;
}

std::optional<Label> snake_provider(const NeighborView& view) {
  for (int l = 0; l < 6; ++l) {
    const auto& p = at(view.head, Label(l));
    if (p.retired() && p.shared.snakedir) return Label(l);
  }
  return std::nullopt;
}

std::optional<BorderHit> border(const NeighborView& view, std::optional<Label> prefer) {
  const auto hit = [&](Label l) -> std::optional<BorderHit> {
    const auto& p = at(view.head, l);
    if (!p.occupied()) return std::nullopt;
    if (p.shared.border_left) return BorderHit{BorderType::Left, l};
    if (p.shared.border_right) return BorderHit{BorderType::Right, l};
    return std::nullopt;
  };
  if (prefer) {
    if (auto h = hit(*prefer)) return h;
  }
  for (int l = 0; l < 6; ++l) {
    if (auto h = hit(Label(l))) return h;
  }
  return std::nullopt;
}

// ---- HEX --------------------------------------------------------------------

FlagSet HexRule::seed_init() const {
  FlagSet f{};
  f[0].snakedir = true;
  return f;
}

std::optional<FlagSet> HexRule::retire_check(const NeighborView& view) const {
  if (view.state != ParticleState::Root || view.expanded) return std::nullopt;
  const auto provider = snake_provider(view);
  if (!provider) return std::nullopt;
  Label i = *provider;
  for (int guard = 0; at(view.head, i).retired(); ++guard) {
    if (guard == 6) throw AlgorithmError("hex: snake position enclosed by retired particles");
    i = i + 1;
  }
  FlagSet f{};
  at(f, i).snakedir = true;
  return f;
}

// ---- TRI --------------------------------------------------------------------

FlagSet TriRule::seed_init() const {
  FlagSet f{};
  f[0].border_left = true;
  f[1].border_right = true;
  f[0].snakedir = true;
  return f;
}

std::optional<FlagSet> TriRule::retire_check(const NeighborView& view) const {
  if (view.state != ParticleState::Root || view.expanded) return std::nullopt;
  const auto provider = snake_provider(view);
  if (!provider) return std::nullopt;
  const Label i = *provider;

  FlagSet f{};
  const auto b = border(view, i);
  if (!b) {
    // same layer: straight on
    at(f, i + 3).snakedir = true;
    return f;
  }
  const Label j = b->port + 3;
  if (b->type == BorderType::Left) {
    at(f, j).border_left = true;
  } else {
    at(f, j).border_right = true;
  }
  if (b->port != i) {
    // reached the border: the next layer starts across from it
    at(f, j).snakedir = true;
  } else if (b->type == BorderType::Left) {
    at(f, i + 5).snakedir = true;
  } else {
    at(f, i + 1).snakedir = true;
  }
  return f;
}

// ---- spanning forest ------------------------------------------------------------

Action activate(const NeighborView& view, const SnakeRule& rule) {
  switch (view.state) {
    case ParticleState::Retired:
      return Action::noop();

    case ParticleState::Inactive: {
      if (any_retired(view.head)) return {ActionKind::BecomeRoot, {}, {}};
      for (int l = 0; l < 6; ++l) {
        if (at(view.head, Label(l)).active()) return Action::with_port(ActionKind::BecomeFollower, Label(l));
      }
      return Action::noop();
    }

    case ParticleState::Follower: {
      if (view.expanded) return expanded_behaviour(view);
      if (any_retired(view.head)) return {ActionKind::BecomeRoot, {}, {}};
      const auto pp = view.parent_port();
      if (!pp) return Action::noop();
      const auto& parent = at(view.head, *pp);
      if (parent.active() && parent.expanded && parent.side == Side::Tail) {
        return Action::with_port(ActionKind::HandoverPush, *pp);
      }
      return Action::noop();
    }

    case ParticleState::Root: {
      if (view.expanded) return expanded_behaviour(view);
      if (auto flags = rule.retire_check(view)) return {ActionKind::Retire, {}, *flags};
      const Label d = root_direction(view);
      // Occupied target: another particle got there first; retry later.
      if (at(view.head, d).kind != PortView::Kind::Empty) return Action::noop();
      return Action::with_port(ActionKind::Expand, d);
    }
  }
  return Action::noop();
}

}  // namespace amoebot

#pragma once

// Particle-local decision logic: the spanning-forest behaviour shared by every
// shape, parameterised by a snake rule that decides where the shape grows.
//
// Everything here is a pure function of a NeighborView. Labels are local, so
// the same code runs unchanged under any particle offset.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amoebot/core.hpp"

namespace amoebot {

enum class ActionKind : std::uint8_t {
  NoOp,
  BecomeFollower,
  BecomeRoot,
  Expand,
  Contract,
  HandoverPush,
  HandoverPull,
  Retire,
};

std::string_view to_string(ActionKind k);
std::optional<ActionKind> action_kind_from_string(std::string_view s);

/// One decision per activation.
///
/// `port` meaning by kind: BecomeFollower, the parent port; Expand, the head
/// port to expand along; HandoverPush, the head port facing the partner's
/// tail; HandoverPull, the tail port facing the contracted child. `flags` is
/// only used by Retire.
struct Action {
  ActionKind kind = ActionKind::NoOp;
  Label port;
  FlagSet flags{};

  static Action noop() { return {}; }
  static Action with_port(ActionKind k, Label l) { return {k, l, {}}; }
};

enum class BorderType : std::uint8_t { Left, Right };

struct BorderHit {
  BorderType type;
  Label port;  // port facing the border particle
};

/// Extension point for a target shape: which flags the seed presets, and when
/// a contracted root may retire (and with which flags).
class SnakeRule {
 public:
  virtual ~SnakeRule() = default;
  virtual std::string_view name() const = 0;
  virtual FlagSet seed_init() const = 0;
  virtual std::optional<FlagSet> retire_check(const NeighborView& view) const = 0;
};

class HexRule final : public SnakeRule {
 public:
  std::string_view name() const override { return "hex"; }
  FlagSet seed_init() const override;
  std::optional<FlagSet> retire_check(const NeighborView& view) const override;
};

class TriRule final : public SnakeRule {
 public:
  std::string_view name() const override { return "tri"; }
  FlagSet seed_init() const override;
  std::optional<FlagSet> retire_check(const NeighborView& view) const override;
};

enum class Algorithm : std::uint8_t { Hex, Tri };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view s);
const SnakeRule& rule_for(Algorithm a);

/// A local situation that cannot occur in a legal run.
class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Port the contracted root should expand along: start at the smallest label
/// with a retired neighbour and step clockwise past retired neighbours.
/// Throws AlgorithmError if there is no retired neighbour, if all six are
/// retired, or if the retired neighbours do not form one contiguous arc.
Label root_direction(const NeighborView& view);

/// Port i across which a retired neighbour keeps a snakedir flag.
std::optional<Label> snake_provider(const NeighborView& view);

/// Border flag visible on a shared edge. If several are visible, the one on
/// `prefer` wins, else the smallest label.
std::optional<BorderHit> border(const NeighborView& view, std::optional<Label> prefer = std::nullopt);

Action activate(const NeighborView& view, const SnakeRule& rule);

}  // namespace amoebot

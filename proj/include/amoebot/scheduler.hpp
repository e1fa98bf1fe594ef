#pragma once

// Fair asynchronous execution of one particle system: pick a live particle,
// let it decide on its local view, apply the action atomically.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amoebot/algorithms.hpp"
#include "amoebot/core.hpp"
#include "amoebot/random.hpp"

namespace amoebot {

enum class Policy : std::uint8_t {
  UniformRandom,  // uniform over live particles
  RoundRobin,     // ascending particle index, skipping retired ones
  Adversarial,    // a fresh random permutation of the live particles every round
};

std::string_view to_string(Policy p);
std::optional<Policy> policy_from_string(std::string_view s);

struct Schedule {
  std::uint64_t seed = 0;
  Policy policy = Policy::UniformRandom;
};

struct Event {
  std::uint64_t step = 0;   // 1-based activation index
  std::uint64_t round = 0;  // completed rounds before this activation
  bool terminated = false;
  ParticleId particle = 0;
  ActionKind action = ActionKind::NoOp;  // what actually happened (conflicts become NoOp)
  std::optional<Label> port;
  std::optional<ParticleId> partner;  // handovers
  std::vector<Node> nodes;            // actor's nodes after the action, then the partner's
  std::uint64_t work = 0;             // cumulative movements
};

enum class Outcome : std::uint8_t { Running, Terminated, BudgetExhausted, InvariantViolation };

std::string_view to_string(Outcome o);

struct Violation {
  std::string checker;
  std::uint64_t step = 0;
  std::string detail;
};

struct RunStats {
  std::uint64_t movements = 0;
  std::uint64_t expansions = 0;
  std::uint64_t contractions = 0;
  std::uint64_t rounds = 0;
  std::uint64_t activations = 0;
  bool terminated = false;
  Outcome outcome = Outcome::Running;
  std::optional<Violation> violation;
  std::uint64_t max_particle_movements = 0;
  std::uint64_t max_idle_rounds = 0;  // longest streak of rounds with no movement or state change
};

struct Checker {
  std::string name;
  std::function<bool(const Configuration&)> check;
};

struct AppliedAction {
  ActionKind kind = ActionKind::NoOp;
  std::optional<ParticleId> partner;
};

/// Applies a decided action to the configuration. Movement conflicts turn into NoOp.
AppliedAction apply_action(Configuration& cfg, ParticleId p, const Action& action);

class Simulation {
 public:
  Simulation(Configuration cfg, const SnakeRule& rule, Schedule schedule = {});

  /// One atomic activation. Throws AlgorithmError if the activated particle
  /// hits a situation the algorithm does not allow.
  Event step();

  bool terminated() const { return live_.empty(); }
  const Configuration& configuration() const { return cfg_; }
  const SnakeRule& rule() const { return rule_; }
  const RunStats& stats() const { return stats_; }

  /// Called after every event, including the final Terminated one.
  void set_observer(std::function<void(const Event&, const Configuration&)> fn) { observer_ = std::move(fn); }

  /// Direct access for fault-injection tests.
  Configuration& mutable_configuration() { return cfg_; }

 private:
  ParticleId pick();
  void remove_live(ParticleId id);
  void start_round();
  void finish(Event& e);

  Configuration cfg_;
  const SnakeRule& rule_;
  Schedule schedule_;
  Rng rng_;
  RunStats stats_;

  std::vector<ParticleId> live_;
  std::vector<std::size_t> live_pos_;
  std::vector<bool> activated_this_round_;
  std::size_t pending_ = 0;
  bool progress_this_round_ = false;
  std::uint64_t idle_streak_ = 0;

  std::size_t rr_cursor_ = 0;
  std::vector<ParticleId> permutation_;
  std::size_t perm_cursor_ = 0;

  std::function<void(const Event&, const Configuration&)> observer_;
};

/// Default round budget: 50 n^2.
std::uint64_t default_max_rounds(std::size_t n);

/// Steps until every particle is retired or `max_rounds` rounds have passed.
/// Throws std::invalid_argument if max_rounds == 0.
RunStats run(Simulation& sim, std::uint64_t max_rounds);

/// As run(), evaluating every checker after every event. The first failing
/// checker stops the run with Outcome::InvariantViolation.
RunStats run_with_checks(Simulation& sim, std::uint64_t max_rounds, std::span<const Checker> checkers);

}  // namespace amoebot

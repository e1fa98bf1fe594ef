#include "amoebot/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace amoebot {

namespace {
constexpr std::size_t kNotLive = std::numeric_limits<std::size_t>::max();
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::UniformRandom: return "uniform";
    case Policy::RoundRobin: return "round-robin";
    case Policy::Adversarial: return "adversarial";
  }
  return "?";
}

std::optional<Policy> policy_from_string(std::string_view s) {
  if (s == "uniform") return Policy::UniformRandom;
  if (s == "round-robin") return Policy::RoundRobin;
  if (s == "adversarial") return Policy::Adversarial;
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Running: return "running";
    case Outcome::Terminated: return "terminated";
    case Outcome::BudgetExhausted: return "budget-exhausted";
    case Outcome::InvariantViolation: return "invariant-violation";
  }
  return "?";
}

AppliedAction apply_action(Configuration& cfg, ParticleId id, const Action& action) {
  const auto& p = cfg.particle(id);
  switch (action.kind) {
    case ActionKind::NoOp:
      return {};
    case ActionKind::BecomeFollower:
      become_follower(cfg, id, action.port);
      return {ActionKind::BecomeFollower, std::nullopt};
    case ActionKind::BecomeRoot:
      become_root(cfg, id);
      return {ActionKind::BecomeRoot, std::nullopt};
    case ActionKind::Expand:
      if (expand(cfg, id, action.port) != MoveStatus::Ok) return {};
      return {ActionKind::Expand, std::nullopt};
    case ActionKind::Contract:
      if (contract(cfg, id) != MoveStatus::Ok) return {};
      return {ActionKind::Contract, std::nullopt};
    case ActionKind::HandoverPush: {
      const auto partner = cfg.occupant(neighbor(p.head, local_to_global(p.offset, action.port)));
      if (!partner || handover_push(cfg, id, *partner) != MoveStatus::Ok) return {};
      return {ActionKind::HandoverPush, partner};
    }
    case ActionKind::HandoverPull: {
      const auto partner = cfg.occupant(neighbor(p.tail, local_to_global(p.offset, action.port)));
      if (!partner || handover_pull(cfg, id, *partner) != MoveStatus::Ok) return {};
      return {ActionKind::HandoverPull, partner};
    }
    case ActionKind::Retire:
      retire(cfg, id, action.flags);
      return {ActionKind::Retire, std::nullopt};
  }
  return {};
}

Simulation::Simulation(Configuration cfg, const SnakeRule& rule, Schedule schedule)
    : cfg_(std::move(cfg)), rule_(rule), schedule_(schedule), rng_(schedule.seed) {
  live_pos_.assign(cfg_.size(), kNotLive);
  activated_this_round_.assign(cfg_.size(), false);
  for (ParticleId id = 0; id < cfg_.size(); ++id) {
    if (cfg_.particle(id).state == ParticleState::Retired) continue;
    live_pos_[id] = live_.size();
    live_.push_back(id);
  }
  stats_.terminated = live_.empty();
  stats_.outcome = stats_.terminated ? Outcome::Terminated : Outcome::Running;
  start_round();
}

void Simulation::start_round() {
  for (const auto id : live_) activated_this_round_[id] = false;
  pending_ = live_.size();
  progress_this_round_ = false;
  if (schedule_.policy == Policy::Adversarial) {
    permutation_ = live_;
    std::sort(permutation_.begin(), permutation_.end());
    for (std::size_t i = permutation_.size(); i > 1; --i) {
      std::swap(permutation_[i - 1], permutation_[rng_.below(i)]);
    }
    perm_cursor_ = 0;
  }
}

void Simulation::remove_live(ParticleId id) {
  const auto pos = live_pos_[id];
  if (pos == kNotLive) return;
  const auto last = live_.back();
  live_[pos] = last;
  live_pos_[last] = pos;
  live_.pop_back();
  live_pos_[id] = kNotLive;
}

ParticleId Simulation::pick() {
  switch (schedule_.policy) {
    case Policy::UniformRandom:
      return live_[rng_.below(live_.size())];
    case Policy::RoundRobin:
      for (;;) {
        const auto id = static_cast<ParticleId>(rr_cursor_);
        rr_cursor_ = (rr_cursor_ + 1) % cfg_.size();
        if (live_pos_[id] != kNotLive) return id;
      }
    case Policy::Adversarial:
      while (live_pos_[permutation_[perm_cursor_]] == kNotLive) ++perm_cursor_;
      return permutation_[perm_cursor_++];
  }
  return live_.front();
}

Event Simulation::step() {
  Event e;
  e.step = stats_.activations + 1;
  e.round = stats_.rounds;
  if (terminated()) {
    e.terminated = true;
    e.work = cfg_.movements();
    if (observer_) observer_(e, cfg_);
    return e;
  }

  const ParticleId id = pick();
  const Action action = activate(observe(cfg_, id), rule_);
  const AppliedAction applied = apply_action(cfg_, id, action);

  e.particle = id;
  e.action = applied.kind;
  if (applied.kind == ActionKind::BecomeFollower || applied.kind == ActionKind::Expand ||
      applied.kind == ActionKind::HandoverPush || applied.kind == ActionKind::HandoverPull) {
    e.port = action.port;
  }
  e.partner = applied.partner;
  const auto push_nodes = [&e, this](ParticleId pid) {
    const auto& p = cfg_.particle(pid);
    e.nodes.push_back(p.head);
    if (p.expanded()) e.nodes.push_back(p.tail);
  };
  push_nodes(id);
  if (applied.partner) push_nodes(*applied.partner);
  e.work = cfg_.movements();

  ++stats_.activations;
  if (applied.kind != ActionKind::NoOp) progress_this_round_ = true;
  for (const auto pid : {std::optional<ParticleId>(id), applied.partner}) {
    if (pid) stats_.max_particle_movements = std::max(stats_.max_particle_movements, cfg_.particle(*pid).movements);
  }
  if (!activated_this_round_[id]) {
    activated_this_round_[id] = true;
    --pending_;
  }
  if (cfg_.particle(id).state == ParticleState::Retired) remove_live(id);

  if (pending_ == 0) {
    ++stats_.rounds;
    idle_streak_ = progress_this_round_ ? 0 : idle_streak_ + 1;
    stats_.max_idle_rounds = std::max(stats_.max_idle_rounds, idle_streak_);
    start_round();
  }

  stats_.movements = cfg_.movements();
  stats_.expansions = cfg_.expansions();
  stats_.contractions = cfg_.contractions();
  if (live_.empty()) {
    stats_.terminated = true;
    stats_.outcome = Outcome::Terminated;
  }
  if (observer_) observer_(e, cfg_);
  return e;
}

std::uint64_t default_max_rounds(std::size_t n) {
  const auto nn = static_cast<std::uint64_t>(std::max<std::size_t>(n, 1));
  return 50 * nn * nn;
}

RunStats run(Simulation& sim, std::uint64_t max_rounds) { return run_with_checks(sim, max_rounds, {}); }

RunStats run_with_checks(Simulation& sim, std::uint64_t max_rounds, std::span<const Checker> checkers) {
  if (max_rounds == 0) throw std::invalid_argument("run: max_rounds must be positive");
  for (const auto& c : checkers) {
    if (!c.check(sim.configuration())) {
      RunStats s = sim.stats();
      s.outcome = Outcome::InvariantViolation;
      s.violation = Violation{c.name, s.activations, "violated before the run started"};
      return s;
    }
  }
  while (!sim.terminated()) {
    if (sim.stats().rounds >= max_rounds) {
      RunStats s = sim.stats();
      s.outcome = Outcome::BudgetExhausted;
      return s;
    }
    Event e;
    try {
      e = sim.step();
    } catch (const AlgorithmError& err) {
      RunStats s = sim.stats();
      s.outcome = Outcome::InvariantViolation;
      s.violation = Violation{"algorithm", sim.stats().activations + 1, err.what()};
      return s;
    }
    for (const auto& c : checkers) {
      if (!c.check(sim.configuration())) {
        RunStats s = sim.stats();
        s.outcome = Outcome::InvariantViolation;
        s.violation = Violation{c.name, e.step, "checker failed after this step"};
        return s;
      }
    }
  }
  return sim.stats();
}

}  // namespace amoebot

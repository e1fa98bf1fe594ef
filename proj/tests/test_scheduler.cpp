#include <doctest.h>

#include <set>
#include <sstream>

#include "amoebot/experiment.hpp"
#include "amoebot/generators.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/trace.hpp"
#include "amoebot/validation.hpp"

using namespace amoebot;

namespace {

Simulation make_sim(Algorithm a, const InitialConfig& init, Schedule s = {}, std::uint64_t offset_seed = 0) {
  const auto& rule = rule_for(a);
  return Simulation(build_configuration(init, rule, offset_seed), rule, s);
}

std::set<Node> final_nodes(const Configuration& cfg) {
  std::set<Node> out;
  for (const auto& p : cfg.particles()) out.insert(p.head);
  return out;
}

// Every connected node set of size 3 containing the origin, origin first.
std::vector<InitialConfig> connected_triples() {
  std::set<std::set<Node>> seen;
  std::vector<InitialConfig> out;
  const Node o{0, 0};
  for (int a = 0; a < 6; ++a) {
    const Node na = neighbor(o, Direction(a));
    for (const Node base : {o, na}) {
      for (int b = 0; b < 6; ++b) {
        const Node nb = neighbor(base, Direction(b));
        if (nb == o || nb == na) continue;
        std::set<Node> s{o, na, nb};
        if (!seen.insert(s).second) continue;
        out.push_back({{o, na, nb}, "triple", 0});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("policy names round-trip") {
  for (const auto p : {Policy::UniformRandom, Policy::RoundRobin, Policy::Adversarial}) {
    CHECK(policy_from_string(to_string(p)) == p);
  }
  CHECK_FALSE(policy_from_string("greedy"));
}

TEST_CASE("a lone seed is terminated before the first step") {
  auto sim = make_sim(Algorithm::Hex, gen_line(1));
  CHECK(sim.terminated());
  const auto e = sim.step();
  CHECK(e.terminated);
  CHECK(e.work == 0);
  const auto stats = run(sim, 10);
  CHECK(stats.outcome == Outcome::Terminated);
  CHECK(stats.movements == 0);
  CHECK(validate_hexagon(sim.configuration()).valid);
}

TEST_CASE("stepping after termination reports a Terminated event") {
  auto sim = make_sim(Algorithm::Tri, gen_line(5));
  const auto stats = run(sim, default_max_rounds(5));
  REQUIRE(stats.outcome == Outcome::Terminated);
  const auto e = sim.step();
  CHECK(e.terminated);
  CHECK(e.work == stats.movements);
  CHECK(sim.stats().activations == stats.activations);
}

TEST_CASE("zero round budget is rejected") {
  auto sim = make_sim(Algorithm::Hex, gen_line(3));
  CHECK_THROWS_AS(run(sim, 0), std::invalid_argument);
}

TEST_CASE("a tiny budget ends in BudgetExhausted") {
  auto sim = make_sim(Algorithm::Hex, gen_line(30));
  const auto stats = run(sim, 1);
  CHECK(stats.outcome == Outcome::BudgetExhausted);
  CHECK(stats.rounds == 1);
}

TEST_CASE("same seed, same trace") {
  for (const auto policy : {Policy::UniformRandom, Policy::RoundRobin, Policy::Adversarial}) {
    std::string traces[2];
    for (auto& t : traces) {
      std::ostringstream out;
      auto sim = make_sim(Algorithm::Hex, gen_random_connected(18, 4), {77, policy}, 5);
      TraceWriter w(out, sim.configuration(), Algorithm::Hex);
      w.attach(sim);
      w.write_end(run(sim, default_max_rounds(18)));
      t = out.str();
    }
    CHECK(traces[0] == traces[1]);
    CHECK(traces[0].size() > 100);
  }
}

TEST_CASE("hex on a line of four") {
  auto sim = make_sim(Algorithm::Hex, gen_line(4));
  const auto stats = run(sim, default_max_rounds(4));
  REQUIRE(stats.outcome == Outcome::Terminated);
  const auto rep = validate_hexagon(sim.configuration());
  CHECK(rep.valid);
  CHECK(rep.radius_or_side == 0);
  CHECK(rep.partial_layer_size == 3);
  CHECK(stats.movements >= hex_lower_bound(4));
  CHECK(stats.movements == stats.expansions + stats.contractions);
}

TEST_CASE("tri from every connected start of three particles") {
  const auto starts = connected_triples();
  CHECK(starts.size() == 33);  // 11 placements of the three tromino shapes, times 3 choices of seed cell
  for (const auto& init : starts) {
    for (std::uint64_t s = 0; s < 4; ++s) {
      auto sim = make_sim(Algorithm::Tri, init, {s}, s);
      const auto stats = run_with_checks(sim, default_max_rounds(3), default_checkers());
      REQUIRE(stats.outcome == Outcome::Terminated);
      const auto rep = validate_triangle(sim.configuration());
      CHECK(rep.valid);
      CHECK(rep.radius_or_side == 2);
    }
  }
}

TEST_CASE("hex n=7 from random starts is the unit disk") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto sim = make_sim(Algorithm::Hex, gen_random_connected(7, s), {s});
    REQUIRE(run(sim, default_max_rounds(7)).outcome == Outcome::Terminated);
    const auto rep = validate_hexagon(sim.configuration());
    CHECK(rep.valid);
    CHECK(rep.radius_or_side == 1);
    CHECK(rep.partial_layer_size == 0);
  }
}

TEST_CASE("a teleported particle trips the connectivity checker") {
  auto sim = make_sim(Algorithm::Hex, gen_line(8), {3});
  for (int i = 0; i < 5; ++i) sim.step();
  auto& cfg = sim.mutable_configuration();
  ParticleId victim = 0;
  for (ParticleId id = 1; id < cfg.size(); ++id) {
    if (!cfg.particle(id).expanded()) victim = id;
  }
  REQUIRE(victim != 0);
  cfg.relocate(victim, {100, 100});
  const auto stats = run_with_checks(sim, 100, default_checkers());
  CHECK(stats.outcome == Outcome::InvariantViolation);
  REQUIRE(stats.violation);
  CHECK(stats.violation->checker == "connectivity");
  CHECK(stats.violation->step == 5);
}

TEST_CASE("every live particle is activated once per round") {
  for (const auto policy : {Policy::UniformRandom, Policy::RoundRobin, Policy::Adversarial}) {
    auto sim = make_sim(Algorithm::Tri, gen_random_connected(25, 9), {11, policy});
    std::set<ParticleId> seen;
    std::uint64_t round = 0;
    bool fair = true;
    sim.set_observer([&](const Event& e, const Configuration& cfg) {
      if (e.terminated) return;
      seen.insert(e.particle);
      if (sim.stats().rounds != round) {
        // a round just closed: every particle that was live at its start was seen
        for (ParticleId id = 0; id < cfg.size(); ++id) {
          if (cfg.particle(id).state != ParticleState::Retired && !seen.contains(id)) fair = false;
        }
        round = sim.stats().rounds;
        seen.clear();
      }
    });
    const auto stats = run(sim, default_max_rounds(25));
    CHECK(stats.outcome == Outcome::Terminated);
    CHECK(fair);
  }
}

TEST_CASE("the final node set does not depend on the schedule") {
  for (const auto algo : {Algorithm::Hex, Algorithm::Tri}) {
    for (const std::size_t n : {5u, 12u, 25u}) {
      std::optional<std::set<Node>> reference;
      for (const auto policy : {Policy::UniformRandom, Policy::RoundRobin, Policy::Adversarial}) {
        for (std::uint64_t s = 0; s < 3; ++s) {
          auto sim = make_sim(algo, gen_random_connected(n, n), {s, policy}, s + 1);
          REQUIRE(run(sim, default_max_rounds(n)).outcome == Outcome::Terminated);
          const auto nodes = final_nodes(sim.configuration());
          if (!reference) reference = nodes;
          CHECK(nodes == *reference);
        }
      }
    }
  }
}

TEST_CASE("every round makes progress") {
  for (const auto algo : {Algorithm::Hex, Algorithm::Tri}) {
    for (const auto policy : {Policy::UniformRandom, Policy::RoundRobin, Policy::Adversarial}) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        auto sim = make_sim(algo, gen_random_connected(30, s), {s, policy}, s);
        const auto stats = run(sim, default_max_rounds(30));
        REQUIRE(stats.outcome == Outcome::Terminated);
        CHECK(stats.max_idle_rounds == 0);
        CHECK(stats.rounds <= 30 * 30);
      }
    }
  }
}

TEST_CASE("no particle is left expanded") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto sim = make_sim(Algorithm::Hex, gen_random_connected(40, s), {s});
    REQUIRE(run(sim, default_max_rounds(40)).outcome == Outcome::Terminated);
    for (const auto& p : sim.configuration().particles()) {
      CHECK_FALSE(p.expanded());
      CHECK(p.state == ParticleState::Retired);
    }
  }
}

#include <doctest.h>

#include <set>

#include "amoebot/algorithms.hpp"
#include "amoebot/experiment.hpp"
#include "amoebot/generators.hpp"
#include "amoebot/scheduler.hpp"

using namespace amoebot;

namespace {

PortView neighbour(ParticleState s, EdgeFlags shared = {}, bool expanded = false, Side side = Side::Head) {
  PortView p;
  p.kind = PortView::Kind::Neighbor;
  p.state = s;
  p.shared = shared;
  p.expanded = expanded;
  p.side = side;
  return p;
}

PortView retired(EdgeFlags shared = {}) { return neighbour(ParticleState::Retired, shared); }

EdgeFlags snake() {
  EdgeFlags f;
  f.snakedir = true;
  return f;
}

NeighborView contracted_root() {
  NeighborView v;
  v.state = ParticleState::Root;
  return v;
}

// Global direction in which particle `id` keeps a flag selected by `pick`.
template <class Pick>
std::vector<Direction> flagged(const Configuration& cfg, ParticleId id, Pick pick) {
  std::vector<Direction> out;
  const auto& p = cfg.particle(id);
  for (int l = 0; l < 6; ++l) {
    if (pick(p.flags[static_cast<std::size_t>(l)])) out.push_back(local_to_global(p.offset, Label(l)));
  }
  return out;
}

}  // namespace

TEST_CASE("action names round-trip") {
  for (int k = 0; k <= static_cast<int>(ActionKind::Retire); ++k) {
    const auto kind = static_cast<ActionKind>(k);
    CHECK(action_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_FALSE(action_kind_from_string("teleport"));
  CHECK(algorithm_from_string("hex") == Algorithm::Hex);
  CHECK(algorithm_from_string("tri") == Algorithm::Tri);
  CHECK_FALSE(algorithm_from_string("square"));
}

TEST_CASE("inactive particles") {
  SUBCASE("next to a retired particle: become root") {
    NeighborView v;
    v.head[4] = retired();
    CHECK(activate(v, HexRule{}).kind == ActionKind::BecomeRoot);
  }
  SUBCASE("next to an active particle: follow it") {
    NeighborView v;
    v.head[2] = neighbour(ParticleState::Root);
    v.head[5] = neighbour(ParticleState::Follower);
    const auto a = activate(v, HexRule{});
    CHECK(a.kind == ActionKind::BecomeFollower);
    CHECK(a.port == Label(2));
  }
  SUBCASE("retired beats active") {
    NeighborView v;
    v.head[0] = neighbour(ParticleState::Root);
    v.head[3] = retired();
    CHECK(activate(v, TriRule{}).kind == ActionKind::BecomeRoot);
  }
  SUBCASE("only inactive neighbours: wait") {
    NeighborView v;
    v.head[1] = neighbour(ParticleState::Inactive);
    CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
  }
}

TEST_CASE("expanded particles") {
  NeighborView v;
  v.state = ParticleState::Follower;
  v.expanded = true;
  v.tail_port = Label(3);
  v.head[3].kind = PortView::Kind::Self;
  v.tail[0].kind = PortView::Kind::Self;

  SUBCASE("an inactive neighbour blocks contraction") {
    v.head[1] = neighbour(ParticleState::Inactive);
    CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
  }
  SUBCASE("no children, no inactive neighbours: contract") {
    v.head[1] = neighbour(ParticleState::Root);
    CHECK(activate(v, HexRule{}).kind == ActionKind::Contract);
  }
  SUBCASE("a contracted tail child is pulled") {
    EdgeFlags parent;
    parent.parent = true;
    v.tail[4] = neighbour(ParticleState::Follower, parent);
    const auto a = activate(v, HexRule{});
    CHECK(a.kind == ActionKind::HandoverPull);
    CHECK(a.port == Label(4));
  }
  SUBCASE("only expanded tail children: wait") {
    EdgeFlags parent;
    parent.parent = true;
    v.tail[4] = neighbour(ParticleState::Follower, parent, true);
    CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
  }
}

TEST_CASE("contracted follower pushes only into its parent's tail") {
  NeighborView v;
  v.state = ParticleState::Follower;
  v.own_flags[2].parent = true;
  v.head[2] = neighbour(ParticleState::Root, {}, true, Side::Tail);
  const auto a = activate(v, HexRule{});
  CHECK(a.kind == ActionKind::HandoverPush);
  CHECK(a.port == Label(2));

  v.head[2].side = Side::Head;
  CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
  v.head[2] = neighbour(ParticleState::Root);
  CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
}

TEST_CASE("contracted follower touching a retired particle becomes root") {
  NeighborView v;
  v.state = ParticleState::Follower;
  v.own_flags[2].parent = true;
  v.head[2] = neighbour(ParticleState::Root);
  v.head[5] = retired();
  CHECK(activate(v, HexRule{}).kind == ActionKind::BecomeRoot);
}

TEST_CASE("root_direction") {
  auto v = contracted_root();
  v.head[2] = retired();
  v.head[3] = retired();
  CHECK(root_direction(v) == Label(4));

  v = contracted_root();
  v.head[5] = retired();
  CHECK(root_direction(v) == Label(0));

  v = contracted_root();
  v.head[5] = retired();
  v.head[0] = retired();
  v.head[1] = retired();
  CHECK(root_direction(v) == Label(2));

  v = contracted_root();
  CHECK_THROWS_AS(root_direction(v), AlgorithmError);

  for (auto& p : v.head) p = retired();
  CHECK_THROWS_AS(root_direction(v), AlgorithmError);

  v = contracted_root();
  v.head[0] = retired();
  v.head[3] = retired();
  CHECK_THROWS_AS(root_direction(v), AlgorithmError);
}

TEST_CASE("a root expands along root_direction, or waits if that node is taken") {
  auto v = contracted_root();
  v.head[2] = retired();
  v.head[3] = retired();
  auto a = activate(v, HexRule{});
  CHECK(a.kind == ActionKind::Expand);
  CHECK(a.port == Label(4));

  v.head[4] = neighbour(ParticleState::Root);
  CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
}

TEST_CASE("seed presets") {
  const auto hex = HexRule{}.seed_init();
  CHECK(hex[0].snakedir);
  int set = 0;
  for (const auto& f : hex) set += f.any();
  CHECK(set == 1);

  const auto tri = TriRule{}.seed_init();
  CHECK(tri[0].border_left);
  CHECK(tri[1].border_right);
  CHECK(tri[0].snakedir);
  CHECK_FALSE(tri[1].snakedir);
  for (std::size_t l = 2; l < 6; ++l) CHECK_FALSE(tri[l].any());
}

TEST_CASE("hex retirement: turn clockwise past retired neighbours") {
  auto v = contracted_root();
  v.head[3] = retired(snake());
  auto f = HexRule{}.retire_check(v);
  REQUIRE(f);
  CHECK((*f)[4].snakedir);

  v.head[4] = retired();
  v.head[5] = retired();
  f = HexRule{}.retire_check(v);
  REQUIRE(f);
  CHECK((*f)[0].snakedir);

  // no provider: no retirement
  v = contracted_root();
  v.head[3] = retired();
  CHECK_FALSE(HexRule{}.retire_check(v));
}

TEST_CASE("hex on two particles, any offset") {
  for (std::uint64_t off = 0; off < 12; ++off) {
    auto cfg = build_configuration(gen_line(2), HexRule{}, off);
    CHECK(apply_action(cfg, 1, activate(observe(cfg, 1), HexRule{})).kind == ActionKind::BecomeRoot);
    CHECK(apply_action(cfg, 1, activate(observe(cfg, 1), HexRule{})).kind == ActionKind::Retire);
    const auto dirs = flagged(cfg, 1, [](const EdgeFlags& e) { return e.snakedir; });
    REQUIRE(dirs.size() == 1);
    CHECK(neighbor({1, 0}, dirs[0]) == Node{1, -1});
  }
}

TEST_CASE("tri retirement cases") {
  SUBCASE("no border in sight: continue straight") {
    auto v = contracted_root();
    v.head[3] = retired(snake());
    const auto f = TriRule{}.retire_check(v);
    REQUIRE(f);
    CHECK((*f)[0].snakedir);
    CHECK_FALSE((*f)[0].border_left);
    CHECK_FALSE((*f)[0].border_right);
  }
  SUBCASE("border on a different neighbour: start the next row") {
    auto v = contracted_root();
    v.head[3] = retired(snake());
    EdgeFlags b;
    b.border_right = true;
    v.head[4] = retired(b);
    const auto f = TriRule{}.retire_check(v);
    REQUIRE(f);
    CHECK((*f)[1].border_right);
    CHECK((*f)[1].snakedir);
  }
  SUBCASE("border on the provider, left") {
    auto v = contracted_root();
    EdgeFlags e = snake();
    e.border_left = true;
    v.head[3] = retired(e);
    const auto f = TriRule{}.retire_check(v);
    REQUIRE(f);
    CHECK((*f)[0].border_left);
    CHECK((*f)[2].snakedir);
  }
  SUBCASE("border on the provider, right") {
    auto v = contracted_root();
    EdgeFlags e = snake();
    e.border_right = true;
    v.head[3] = retired(e);
    const auto f = TriRule{}.retire_check(v);
    REQUIRE(f);
    CHECK((*f)[0].border_right);
    CHECK((*f)[4].snakedir);
  }
}

TEST_CASE("tri on a two-particle line: first retiree extends the left border") {
  auto cfg = build_configuration(gen_line(2), TriRule{}, 3);
  CHECK(apply_action(cfg, 1, activate(observe(cfg, 1), TriRule{})).kind == ActionKind::BecomeRoot);
  CHECK(apply_action(cfg, 1, activate(observe(cfg, 1), TriRule{})).kind == ActionKind::Retire);
  const auto left = flagged(cfg, 1, [](const EdgeFlags& e) { return e.border_left; });
  const auto snake_dirs = flagged(cfg, 1, [](const EdgeFlags& e) { return e.snakedir; });
  REQUIRE(left.size() == 1);
  CHECK(left[0] == Direction(0));
  REQUIRE(snake_dirs.size() == 1);
  CHECK(neighbor({1, 0}, snake_dirs[0]) == Node{0, 1});
}

TEST_CASE("border tie-break") {
  NeighborView v;
  EdgeFlags l, r;
  l.border_left = true;
  r.border_right = true;
  v.head[2] = retired(l);
  v.head[4] = retired(r);

  auto b = border(v);
  REQUIRE(b);
  CHECK(b->type == BorderType::Left);
  CHECK(b->port == Label(2));

  b = border(v, Label(4));
  REQUIRE(b);
  CHECK(b->type == BorderType::Right);
  CHECK(b->port == Label(4));

  b = border(v, Label(0));  // preferred port has nothing: fall back to the smallest
  REQUIRE(b);
  CHECK(b->port == Label(2));

  CHECK_FALSE(border(NeighborView{}));
}

TEST_CASE("snake_provider ignores non-retired neighbours") {
  NeighborView v;
  v.head[1] = neighbour(ParticleState::Root, snake());
  CHECK_FALSE(snake_provider(v));
  v.head[4] = retired(snake());
  CHECK(snake_provider(v) == Label(4));
}

TEST_CASE("retired particles do nothing") {
  NeighborView v;
  v.state = ParticleState::Retired;
  v.head[0] = neighbour(ParticleState::Inactive);
  CHECK(activate(v, HexRule{}).kind == ActionKind::NoOp);
  CHECK(activate(v, TriRule{}).kind == ActionKind::NoOp);
}

TEST_CASE("label offsets do not change the final shape") {
  for (const auto algo : {Algorithm::Hex, Algorithm::Tri}) {
    for (std::uint64_t init_seed = 0; init_seed < 4; ++init_seed) {
      std::set<Node> reference;
      for (std::uint64_t offset_seed = 0; offset_seed < 5; ++offset_seed) {
        RunRequest req;
        req.algorithm = algo;
        req.init = gen_random_connected(15, init_seed);
        req.schedule = {init_seed};
        req.offset_seed = offset_seed;
        const auto res = simulate(req);
        REQUIRE(res.success());
        std::set<Node> nodes;
        for (const auto& p : res.final_config.particles()) nodes.insert(p.head);
        if (offset_seed == 0) {
          reference = nodes;
        } else {
          CHECK(nodes == reference);
        }
      }
    }
  }
}

TEST_CASE("states only move forward") {
  for (const auto algo : {Algorithm::Hex, Algorithm::Tri}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto& rule = rule_for(algo);
      Simulation sim(build_configuration(gen_random_connected(20, seed), rule, seed), rule, {seed});
      std::vector<ParticleState> last;
      for (const auto& p : sim.configuration().particles()) last.push_back(p.state);
      bool ok = true;
      sim.set_observer([&](const Event&, const Configuration& cfg) {
        for (ParticleId id = 0; id < cfg.size(); ++id) {
          const auto s = cfg.particle(id).state;
          if (s != last[id] && !valid_transition(last[id], s)) ok = false;
          last[id] = s;
        }
      });
      const auto stats = run(sim, default_max_rounds(20));
      CHECK(stats.outcome == Outcome::Terminated);
      CHECK(ok);
    }
  }
}

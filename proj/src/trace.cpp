#include "amoebot/trace.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace amoebot {

using json = nlohmann::ordered_json;

namespace {

json node_json(Node v) { return json::array({v.q, v.r}); }

}  // namespace

TraceWriter::TraceWriter(std::ostream& out, const Configuration& initial, Algorithm algorithm) : out_(out) {
  json particles = json::array();
  for (const auto& p : initial.particles()) {
    particles.push_back({{"q", p.head.q}, {"r", p.head.r}, {"offset", p.offset}, {"seed", p.is_seed}});
  }
  json header = {{"type", "header"}, {"version", 1}, {"algorithm", to_string(algorithm)}, {"particles", particles}};
  out_ << header.dump() << '\n';
}

void TraceWriter::write_event(const Event& e) {
  if (e.terminated) return;
  json nodes = json::array();
  for (const auto& v : e.nodes) nodes.push_back(node_json(v));
  json line = {
      {"type", "event"},
      {"step", e.step},
      {"round", e.round},
      {"particle", e.particle},
      {"action", to_string(e.action)},
      {"port", e.port ? json(e.port->value()) : json(nullptr)},
      {"partner", e.partner ? json(*e.partner) : json(nullptr)},
      {"nodes", nodes},
      {"work", e.work},
  };
  out_ << line.dump() << '\n';
}

void TraceWriter::write_end(const RunStats& s) {
  json line = {{"type", "end"},         {"outcome", to_string(s.outcome)}, {"work", s.movements},
               {"rounds", s.rounds},    {"activations", s.activations}};
  out_ << line.dump() << '\n';
}

void TraceWriter::attach(Simulation& sim) {
  sim.set_observer([this](const Event& e, const Configuration&) { write_event(e); });
}

ReplayReport replay_trace(std::istream& in, std::span<const Checker> checkers) {
  ReplayReport rep;
  std::string line;
  if (!std::getline(in, line)) {
    rep.error = "empty trace";
    return rep;
  }

  Configuration cfg;
  try {
    const auto header = json::parse(line);
    if (header.at("type") != "header") throw std::runtime_error("first record is not a header");
    const auto algo = algorithm_from_string(header.at("algorithm").get<std::string>());
    if (!algo) throw std::runtime_error("unknown algorithm");
    rep.algorithm = *algo;
    const auto& rule = rule_for(*algo);
    for (const auto& p : header.at("particles")) {
      const Node v{p.at("q").get<std::int64_t>(), p.at("r").get<std::int64_t>()};
      const bool is_seed = p.at("seed").get<bool>();
      const auto id = cfg.add_particle(v, p.at("offset").get<int>(), ParticleState::Inactive, is_seed);
      if (is_seed) cfg.set_flags(id, rule.seed_init());
    }
  } catch (const std::exception& err) {
    rep.error = std::string("bad header: ") + err.what();
    return rep;
  }

  const auto& rule = rule_for(rep.algorithm);
  for (const auto& c : checkers) {
    if (!c.check(cfg)) {
      rep.violation = Violation{c.name, 0, "initial configuration"};
      rep.error = "checker " + c.name + " failed on the initial configuration";
      return rep;
    }
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& err) {
      rep.error = std::string("unparsable record: ") + err.what();
      return rep;
    }
    if (rec.at("type") == "end") break;
    if (rec.at("type") != "event") continue;

    const auto step = rec.at("step").get<std::uint64_t>();
    if (step != rep.events + 1) {
      rep.error = "step " + std::to_string(step) + ": expected step " + std::to_string(rep.events + 1);
      return rep;
    }
    const auto pid = rec.at("particle").get<ParticleId>();
    if (pid >= cfg.size()) {
      rep.error = "step " + std::to_string(step) + ": unknown particle";
      return rep;
    }
    AppliedAction applied;
    try {
      applied = apply_action(cfg, pid, activate(observe(cfg, pid), rule));
    } catch (const AlgorithmError& err) {
      rep.violation = Violation{"algorithm", step, err.what()};
      rep.error = "step " + std::to_string(step) + ": " + err.what();
      return rep;
    }
    ++rep.events;

    if (to_string(applied.kind) != rec.at("action").get<std::string>()) {
      rep.error = "step " + std::to_string(step) + ": recorded " + rec.at("action").get<std::string>() +
                  " but the particle decides " + std::string(to_string(applied.kind));
      return rep;
    }
    if (cfg.movements() != rec.at("work").get<std::uint64_t>()) {
      rep.error = "step " + std::to_string(step) + ": work counter mismatch";
      return rep;
    }
    const auto& p = cfg.particle(pid);
    const auto& nodes = rec.at("nodes");
    if (nodes.empty() || nodes[0][0].get<std::int64_t>() != p.head.q || nodes[0][1].get<std::int64_t>() != p.head.r) {
      rep.error = "step " + std::to_string(step) + ": position mismatch";
      return rep;
    }
    for (const auto& c : checkers) {
      if (!c.check(cfg)) {
        rep.violation = Violation{c.name, step, "checker failed after this step"};
        rep.error = "step " + std::to_string(step) + ": checker " + c.name + " failed";
        return rep;
      }
    }
  }

  rep.work = cfg.movements();
  rep.terminated = true;
  for (const auto& p : cfg.particles()) {
    if (p.state != ParticleState::Retired) rep.terminated = false;
  }
  if (rep.terminated) {
    rep.shape = rep.algorithm == Algorithm::Hex ? validate_hexagon(cfg) : validate_triangle(cfg);
    if (!rep.shape->valid) {
      rep.error = "final shape invalid: " + rep.shape->failure_reason;
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace amoebot

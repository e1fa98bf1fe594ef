#pragma once

// Line-delimited JSON traces. The first line is a header describing the
// initial configuration; then one line per activation; then an end line.
//
//   {"type":"header","version":1,"algorithm":"hex","particles":[{"q":0,"r":0,"offset":0,"seed":true},...]}
//   {"type":"event","step":1,"round":0,"particle":3,"action":"expand","port":2,"partner":null,"nodes":[[1,0],[0,0]],"work":1}
//   {"type":"end","outcome":"terminated","work":42,"rounds":7,"activations":120}
//
// Replay re-derives every action from the local view, so it needs no RNG.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "amoebot/algorithms.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/validation.hpp"

namespace amoebot {

class TraceWriter {
 public:
  TraceWriter(std::ostream& out, const Configuration& initial, Algorithm algorithm);

  void write_event(const Event& e);
  void write_end(const RunStats& stats);

  /// Installs write_event as the simulation's observer.
  void attach(Simulation& sim);

 private:
  std::ostream& out_;
};

struct ReplayReport {
  bool ok = false;
  std::string error;
  std::uint64_t events = 0;
  Algorithm algorithm = Algorithm::Hex;
  bool terminated = false;
  std::uint64_t work = 0;
  std::optional<Violation> violation;
  std::optional<ShapeReport> shape;  // set when the replay ends terminated
};

/// Replays a trace, re-deciding each action and evaluating `checkers` after
/// every event. ok is false on any mismatch, violation or invalid final shape.
ReplayReport replay_trace(std::istream& in, std::span<const Checker> checkers);

}  // namespace amoebot

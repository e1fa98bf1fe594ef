// amoebot: run, replay and batch shape-formation simulations.
//
//   amoebot run --algorithm hex --n 20 --init line --check
//   amoebot experiment --spec spec.json
//   amoebot validate --trace run.jsonl
//   amoebot lowerbound --algorithm tri --n 6

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "amoebot/experiment.hpp"
#include "amoebot/render.hpp"
#include "amoebot/trace.hpp"

namespace {

using namespace amoebot;

// Exit codes
constexpr int kOk = 0;
constexpr int kInvalidShape = 1;
constexpr int kViolation = 2;
constexpr int kBudget = 3;
constexpr int kIoError = 4;


int exit_code_for(const RunResult& r) {
  switch (r.stats.outcome) {
    case Outcome::Terminated: return r.shape && r.shape->valid ? kOk : kInvalidShape;
    case Outcome::BudgetExhausted: return kBudget;
    case Outcome::InvariantViolation: return kViolation;
    case Outcome::Running: break;
  }
  return kBudget;
}

struct RunOptions {
  Algorithm algorithm = Algorithm::Hex;
  std::size_t n = 0;
  std::string init = "line";
  std::uint64_t init_seed = 0;
  std::uint64_t sched_seed = 0;
  std::uint64_t offset_seed = 0;
  int seed_offset = 0;
  Policy policy = Policy::UniformRandom;
  std::uint64_t max_rounds = 0;
  std::string trace_path;
  std::uint64_t svg_every = 0;
  std::string svg_prefix = "frame";
  bool check = false;
  bool ascii = false;
};

int cmd_run(const RunOptions& o) {
  RunRequest req;
  req.algorithm = o.algorithm;
  req.init = o.init == "line" ? gen_line(o.n) : gen_random_connected(o.n, o.init_seed);
  req.schedule = {o.sched_seed, o.policy};
  req.offset_seed = o.offset_seed;
  req.seed_offset = o.seed_offset;
  req.max_rounds = o.max_rounds;
  req.check = o.check;

  std::unique_ptr<std::ofstream> trace_file;
  std::unique_ptr<TraceWriter> writer;
  std::uint64_t frame = 0;
  const auto hook = [&](Simulation& sim) {
    if (!o.trace_path.empty()) {
      trace_file = std::make_unique<std::ofstream>(o.trace_path);
      if (!*trace_file) throw std::runtime_error("cannot open trace file " + o.trace_path);
      writer = std::make_unique<TraceWriter>(*trace_file, sim.configuration(), o.algorithm);
    }
    if (!writer && o.svg_every == 0) return;
    if (o.svg_every > 0) {
      std::ostringstream name;
      name << o.svg_prefix << '_' << std::setw(6) << std::setfill('0') << frame++ << ".svg";
      write_svg(sim.configuration(), name.str());
    }
    sim.set_observer([&](const Event& e, const Configuration& cfg) {
      if (writer) writer->write_event(e);
      if (o.svg_every > 0 && e.step % o.svg_every == 0) {
        std::ostringstream name;
        name << o.svg_prefix << '_' << std::setw(6) << std::setfill('0') << frame++ << ".svg";
        write_svg(cfg, name.str());
      }
    });
  };

  RunResult res;
  try {
    res = simulate(req, hook);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  if (writer) writer->write_end(res.stats);
  if (o.svg_every > 0) {
    std::ostringstream name;
    name << o.svg_prefix << "_final.svg";
    write_svg(res.final_config, name.str());
  }

  std::cout << "algorithm=" << to_string(o.algorithm) << " n=" << o.n << " outcome=" << to_string(res.stats.outcome)
            << " work=" << res.stats.movements << " rounds=" << res.stats.rounds
            << " activations=" << res.stats.activations
            << " max_particle_movements=" << res.stats.max_particle_movements;
  if (o.init == "line") std::cout << " lower_bound=" << lower_bound(o.algorithm, o.n);
  if (res.shape) {
    std::cout << " valid=" << (res.shape->valid ? "true" : "false") << " radius_or_side=" << res.shape->radius_or_side;
    if (!res.shape->valid) std::cout << " reason=\"" << res.shape->failure_reason << '"';
  }
  if (res.stats.violation) {
    std::cout << " violation=" << res.stats.violation->checker << "@" << res.stats.violation->step << " ("
              << res.stats.violation->detail << ")";
  }
  std::cout << '\n';
  if (o.ascii) std::cout << render_ascii(res.final_config);
  return exit_code_for(res);
}

int cmd_experiment(const std::string& spec_path, const std::string& out_override, bool serial) {
  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "error: cannot read " << spec_path << '\n';
    return kIoError;
  }
  ExperimentSpec spec;
  try {
    spec = parse_experiment_spec(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  if (!out_override.empty()) spec.csv_path = out_override;

  const auto rows = serial ? run_experiment_serial(spec) : run_experiment_parallel(spec);
  if (spec.csv_path.empty() || spec.csv_path == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(spec.csv_path);
    if (!out) {
      std::cerr << "error: cannot write " << spec.csv_path << '\n';
      return kIoError;
    }
    write_csv(out, rows);
  }

  const auto sum = summarize(spec, rows);
  std::cerr << "rows=" << sum.rows << " failures=" << sum.failures << '\n';
  for (const auto& [algo, by_n] : sum.median_work) {
    std::cerr << to_string(algo) << " median work:";
    for (const auto& [n, w] : by_n) std::cerr << ' ' << n << ':' << w;
    std::cerr << '\n';
  }
  for (const auto& [algo, slope] : sum.slope) {
    std::cerr << to_string(algo) << " log-log slope of median work vs n: " << std::setprecision(4) << slope << '\n';
  }
  return sum.failures == 0 ? kOk : kInvalidShape;
}

int cmd_validate(const std::string& trace_path) {
  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "error: cannot read " << trace_path << '\n';
    return kIoError;
  }
  const auto checkers = default_checkers();
  const auto rep = replay_trace(in, checkers);
  std::cout << "events=" << rep.events << " work=" << rep.work << " terminated=" << (rep.terminated ? "true" : "false");
  if (rep.shape) std::cout << " valid=" << (rep.shape->valid ? "true" : "false");
  std::cout << '\n';
  if (!rep.ok) {
    std::cerr << "replay failed: " << rep.error << '\n';
    return rep.violation ? kViolation : kInvalidShape;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape formation in self-organizing particle systems (amoebot model)"};
  app.require_subcommand(1);

  RunOptions ro;
  std::string algo_name, policy_name = "uniform";
  auto* run = app.add_subcommand("run", "run one simulation");
  run->add_option("--algorithm", algo_name, "hex or tri")->required()->check(CLI::IsMember({"hex", "tri"}));
  run->add_option("--n", ro.n, "number of particles (>= 1)")->required()->check(CLI::PositiveNumber);
  run->add_option("--init", ro.init, "initial configuration")->check(CLI::IsMember({"line", "random"}));
  run->add_option("--init-seed", ro.init_seed, "seed of the random generator");
  run->add_option("--sched-seed", ro.sched_seed, "scheduler seed");
  run->add_option("--offset-seed", ro.offset_seed, "seed for non-seed particle label offsets");
  run->add_option("--seed-offset", ro.seed_offset, "label offset of the seed particle (rotates the shape)")
      ->check(CLI::Range(0, 5));
  run->add_option("--policy", policy_name, "uniform, round-robin or adversarial")
      ->check(CLI::IsMember({"uniform", "round-robin", "adversarial"}));
  run->add_option("--max-rounds", ro.max_rounds, "round budget (default 50 n^2)");
  run->add_option("--trace", ro.trace_path, "write a JSON-lines trace");
  run->add_option("--svg-every", ro.svg_every, "write an SVG snapshot every K activations");
  run->add_option("--svg-prefix", ro.svg_prefix, "path prefix for SVG snapshots");
  run->add_flag("--check", ro.check, "check safety invariants after every action");
  run->add_flag("--ascii", ro.ascii, "print the final configuration");

  std::string spec_path, out_override;
  bool serial = false;
  auto* exp = app.add_subcommand("experiment", "run a batch described by a JSON spec, emit CSV");
  exp->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
  exp->add_option("--out", out_override, "CSV output path (overrides the spec; '-' for stdout)");
  exp->add_flag("--serial", serial, "use the serial reference runner");

  std::string trace_path;
  auto* val = app.add_subcommand("validate", "replay a trace with every invariant checker");
  val->add_option("--trace", trace_path, "trace file")->required();

  std::string lb_algo;
  std::uint64_t lb_n = 0;
  auto* lb = app.add_subcommand("lowerbound", "print the work lower bound for a line of n particles");
  lb->add_option("--algorithm", lb_algo, "hex or tri")->required()->check(CLI::IsMember({"hex", "tri"}));
  lb->add_option("--n", lb_n, "number of particles (>= 1)")->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    ro.algorithm = *algorithm_from_string(algo_name);
    ro.policy = *policy_from_string(policy_name);
    return cmd_run(ro);
  }
  if (*exp) return cmd_experiment(spec_path, out_override, serial);
  if (*val) return cmd_validate(trace_path);
  if (*lb) {
    std::cout << lower_bound(*algorithm_from_string(lb_algo), lb_n) << '\n';
    return kOk;
  }
  return kOk;
}

#include "amoebot/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace amoebot {

bool operator==(const ExperimentRow& a, const ExperimentRow& b) {
  return a.c.algorithm == b.c.algorithm && a.c.n == b.c.n && a.c.init_seed == b.c.init_seed &&
         a.c.sched_seed == b.c.sched_seed && a.valid == b.valid && a.work == b.work && a.rounds == b.rounds &&
         a.activations == b.activations && a.radius_or_side == b.radius_or_side && a.outcome == b.outcome &&
         a.max_particle_movements == b.max_particle_movements && a.lower_bound == b.lower_bound &&
         a.failure == b.failure;
}

ShapeReport validate_shape(Algorithm a, const Configuration& cfg) {
  return a == Algorithm::Hex ? validate_hexagon(cfg) : validate_triangle(cfg);
}

std::uint64_t lower_bound(Algorithm a, std::uint64_t n) {
  return a == Algorithm::Hex ? hex_lower_bound(n) : tri_lower_bound(n);
}

RunResult simulate(const RunRequest& req, const std::function<void(Simulation&)>& sim_hook) {
  const auto& rule = rule_for(req.algorithm);
  Simulation sim(build_configuration(req.init, rule, req.offset_seed, req.seed_offset), rule, req.schedule);
  if (sim_hook) sim_hook(sim);
  const auto budget = req.max_rounds ? req.max_rounds : default_max_rounds(req.init.size());
  RunResult result;
  if (req.check) {
    const auto checkers = default_checkers();
    result.stats = run_with_checks(sim, budget, checkers);
  } else {
    result.stats = run(sim, budget);
  }
  if (result.stats.outcome == Outcome::Terminated) result.shape = validate_shape(req.algorithm, sim.configuration());
  result.final_config = sim.configuration();
  return result;
}

// ---- batch experiments ----------------------------------------------------------

ExperimentSpec parse_experiment_spec(const nlohmann::json& j) {
  ExperimentSpec s;
  try {
    if (j.contains("algorithm")) {
      s.algorithms.clear();
      const auto& a = j.at("algorithm");
      std::vector<std::string> names;
      if (a.is_array()) {
        names = a.get<std::vector<std::string>>();
      } else {
        names.push_back(a.get<std::string>());
      }
      for (const auto& name : names) {
        const auto algo = algorithm_from_string(name);
        if (!algo) throw std::invalid_argument("unknown algorithm '" + name + "'");
        s.algorithms.push_back(*algo);
      }
    }
    s.n = j.at("n").get<std::vector<std::size_t>>();
    s.generator = j.value("generator", s.generator);
    s.repetitions = j.value("repetitions", s.repetitions);
    s.init_seed_base = j.value("init_seed", s.init_seed_base);
    if (j.contains("policy")) {
      const auto p = policy_from_string(j.at("policy").get<std::string>());
      if (!p) throw std::invalid_argument("unknown policy");
      s.policy = *p;
    }
    if (j.contains("sched_seeds")) s.sched_seeds = j.at("sched_seeds").get<std::vector<std::uint64_t>>();
    s.offset_seed = j.value("offset_seed", s.offset_seed);
    s.check = j.value("check", s.check);
    s.csv_path = j.value("csv", s.csv_path);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: ") + e.what());
  }
  if (s.algorithms.empty()) throw std::invalid_argument("experiment spec: no algorithm");
  if (s.n.empty()) throw std::invalid_argument("experiment spec: empty n list");
  if (std::find(s.n.begin(), s.n.end(), std::size_t{0}) != s.n.end()) {
    throw std::invalid_argument("experiment spec: n must be >= 1");
  }
  if (s.repetitions < 1) throw std::invalid_argument("experiment spec: repetitions must be >= 1");
  if (s.sched_seeds.empty()) throw std::invalid_argument("experiment spec: empty sched_seeds");
  if (s.generator != "line" && s.generator != "random") {
    throw std::invalid_argument("experiment spec: generator must be line or random");
  }
  return s;
}

std::vector<ExperimentCase> expand_cases(const ExperimentSpec& spec) {
  std::vector<ExperimentCase> cases;
  for (const auto a : spec.algorithms) {
    for (const auto n : spec.n) {
      for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
        for (const auto s : spec.sched_seeds) cases.push_back({a, n, spec.init_seed_base + rep, s});
      }
    }
  }
  return cases;
}

ExperimentRow run_case(const ExperimentSpec& spec, const ExperimentCase& c) {
  RunRequest req;
  req.algorithm = c.algorithm;
  req.init = spec.generator == "line" ? gen_line(c.n) : gen_random_connected(c.n, c.init_seed);
  req.schedule = {c.sched_seed, spec.policy};
  req.offset_seed = spec.offset_seed;
  req.check = spec.check;

  const auto res = simulate(req);
  ExperimentRow row;
  row.c = c;
  row.work = res.stats.movements;
  row.rounds = res.stats.rounds;
  row.activations = res.stats.activations;
  row.outcome = res.stats.outcome;
  row.max_particle_movements = res.stats.max_particle_movements;
  row.lower_bound = spec.generator == "line" ? lower_bound(c.algorithm, c.n) : 0;
  if (res.shape) {
    row.valid = res.shape->valid;
    row.radius_or_side = res.shape->radius_or_side;
    row.failure = res.shape->failure_reason;
  } else {
    row.failure = std::string(to_string(res.stats.outcome));
    if (res.stats.violation) row.failure += ": " + res.stats.violation->checker + " at step " +
                                            std::to_string(res.stats.violation->step);
  }
  return row;
}

std::vector<ExperimentRow> run_experiment_serial(const ExperimentSpec& spec) {
  const auto cases = expand_cases(spec);
  std::vector<ExperimentRow> rows;
  rows.reserve(cases.size());
  for (const auto& c : cases) rows.push_back(run_case(spec, c));
  return rows;
}

std::vector<ExperimentRow> run_experiment_parallel(const ExperimentSpec& spec) {
  const auto cases = expand_cases(spec);
  std::vector<ExperimentRow> rows(cases.size());
  const auto count = static_cast<std::int64_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    rows[static_cast<std::size_t>(i)] = run_case(spec, cases[static_cast<std::size_t>(i)]);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.c.algorithm) << ',' << r.c.n << ',' << r.c.init_seed << ',' << r.c.sched_seed << ','
        << (r.valid ? "true" : "false") << ',' << r.work << ',' << r.rounds << ',' << r.activations << ','
        << r.radius_or_side << '\n';
  }
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ExperimentSummary summarize(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows) {
  ExperimentSummary sum;
  sum.rows = rows.size();
  std::map<Algorithm, std::map<std::size_t, std::vector<double>>> work;
  for (const auto& r : rows) {
    if (!r.valid || r.outcome != Outcome::Terminated) ++sum.failures;
    work[r.c.algorithm][r.c.n].push_back(static_cast<double>(r.work));
  }
  for (const auto& [algo, by_n] : work) {
    std::vector<double> xs, ys;
    for (const auto& [n, ws] : by_n) {
      const double m = median(ws);
      sum.median_work[algo][n] = m;
      if (n >= 2 && m > 0) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(m);
      }
    }
    if (spec.generator == "line" && xs.size() >= 2) sum.slope[algo] = loglog_slope(xs, ys);
  }
  return sum;
}

}  // namespace amoebot

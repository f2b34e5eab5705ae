#include "seqode/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

#include "seqode/harness/csv.hpp"
#include "seqode/harness/parallel.hpp"

namespace seqode {

namespace {

using nlohmann::json;

std::string output_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

void require_list(bool nonempty, const std::string& field, const std::string& command) {
  if (!nonempty) throw ValidationError("config." + field + ": " + command + " needs at least one value");
}

ErrorOptions error_options(const ExperimentConfig& config) {
  return {config.samples_per_interval, config.error_scope};
}

double class_radius(const ProblemInstance<double>& inst) {
  if (!inst.class_member) return 0.0;
  const auto& c = inst.params;
  return radius_R(c.L, c.M, c.gamma(1.0), inst.space.basis_constant(), c.a, c.b);
}

RunResult run_impl(const ProblemInstance<double>& inst, const Mesh& mesh,
                   const TruncationSchedule& sched, int r, const PowerCost& cost,
                   const ErrorOptions& options, std::optional<Trajectory<double>>* keep) {
  const auto start = std::chrono::steady_clock::now();
  ErrorMonitor monitor(inst, options);
  SolveOptions<double> solve_options;
  solve_options.keep_trajectory = keep != nullptr;
  solve_options.observer = [&](Index, const Segment<double>& seg) { monitor.observe(seg); };
  auto solved = solve(inst, mesh, sched, r, cost, solve_options);

  RunResult run;
  run.n = mesh.intervals();
  run.N = sched.max_dim();
  run.constant_dim = sched.is_constant();
  run.error = monitor.has_exact() ? monitor.sup_error() : std::numeric_limits<double>::quiet_NaN();
  run.worst_time = monitor.worst_time();
  run.ball = monitor.ball_excursion();
  run.radius = class_radius(inst);
  ClassParams params = inst.params;
  params.r = r;
  run.bound = theorem1_bound(params, mesh, sched);
  const auto& ledger = solved.ledger;
  run.cost = ledger.total();
  run.scalar_evaluations = ledger.scalar_evaluations();
  run.information_points = ledger.information_points();
  run.min_step_evaluations = ledger.evaluations().empty()
                                 ? 0
                                 : *std::min_element(ledger.evaluations().begin(),
                                                     ledger.evaluations().end());
  const int m = std::max(r, 1);
  const auto arg_dims = sched.arg_dims();
  for (Index k = 0; k < mesh.intervals(); ++k) {
    run.formula_cost += cost(static_cast<double>(arg_dims[static_cast<std::size_t>(k)])) *
                        static_cast<double>(sched.dim(k)) * (m * (m + 1) / 2);
  }
  if (keep != nullptr) keep->emplace(std::move(solved.trajectory));
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

json fit_json(const std::vector<double>& x, const std::vector<double>& err, bool against_x) {
  if (x.size() < 3) return nullptr;
  for (double e : err) {
    if (!(e > 0.0)) return nullptr;
  }
  const OrderFit fit = fit_order(x, err);
  json out;
  out["slope"] = against_x ? -fit.slope : fit.slope;
  std::vector<double> local = fit.local;
  if (against_x) {
    for (double& v : local) v = -v;
  }
  out["local"] = local;
  return out;
}

// Instance whose error is measured against a finer reference solve when it has
// no closed-form solution.
ProblemInstance<double> with_reference(const ProblemInstance<double>& inst,
                                       const ExperimentConfig& config, Index n_max, Index N) {
  if (inst.exact) return inst;
  const Index n_ref = 4 * n_max;
  const Mesh mesh = build_mesh(config.mesh, inst.params, n_ref);
  std::optional<Trajectory<double>> kept;
  run_kept(inst, mesh, build_schedule(config, n_ref, N), std::max(config.r, 1) + 1,
           PowerCost{0.0}, error_options(config), kept);
  auto reference = std::make_shared<const Trajectory<double>>(std::move(*kept));
  ProblemInstance<double> out = inst;
  out.exact = reference_solution(reference, inst.space);
  return out;
}

}  // namespace

ProblemInstance<double> build_instance(const InstanceSpec& spec, int r) {
  ProblemInstance<double> inst;
  const WeightedSpace space = WeightedSpace::power(spec.p);
  if (spec.label == "lp_sin") {
    inst = make_lp_sin(spec.p);
  } else if (spec.label == "lp_coupled") {
    inst = make_lp_coupled(spec.p);
  } else if (spec.label == "linear") {
    inst = make_decoupled_linear<double>(spec.lambda, spec.p);
  } else if (spec.label == "finite") {
    inst = make_finite_coupled(spec.support);
  } else if (spec.label == "case1") {
    inst = make_case1(space, spec.case_dim, lp_class_params(space)).first;
  } else if (spec.label == "case2") {
    inst = make_case2(space, spec.case_dim, lp_class_params(space)).first;
  } else if (spec.label == "case3") {
    inst = make_case3_base(space, spec.case_slope, lp_class_params(space));
  } else {
    throw ValidationError("config.instance.label: unknown instance \"" + spec.label + "\"");
  }
  inst.params.r = r;
  return inst;
}

Mesh build_mesh(const MeshSpec& spec, const ClassParams& params, Index n) {
  if (spec.kind == MeshKind::graded) return graded_mesh(params.a, params.b, n, spec.sigma);
  return Mesh::uniform(params.a, params.b, n);
}

TruncationSchedule build_schedule(const ExperimentConfig& config, Index n, Index N) {
  if (!config.schedule) return TruncationSchedule::constant(n, N);
  if (config.schedule->rule == "linear") {
    return TruncationSchedule::linear(n, config.schedule->first, config.schedule->last);
  }
  return TruncationSchedule::constant(n, config.schedule->first);
}

ExactSolution reference_solution(std::shared_ptr<const Trajectory<double>> reference,
                                  const WeightedSpace& space) {
  ExactSolution exact;
  auto at = [reference](double t) { return eval_trajectory(*reference, t); };
  exact.component = [at](Index j, double t) {
    const Vec v = at(t);
    return j <= v.size() ? v(j - 1) : 0.0;
  };
  exact.block = [reference](double t, Index first, Eigen::Ref<Vec> out) {
    const auto& traj = *reference;
    const Index k = locate_segment(traj.mesh, t);
    const auto& seg = traj.segments[static_cast<std::size_t>(k)];
    const double tau = t == traj.mesh.point(k + 1) ? 1.0 : (t - seg.t0) / seg.h;
    out.setZero();
    const Index begin = first - 1;
    const Index len = std::min(out.size(), seg.dim() - begin);
    if (len <= 0) return;
    auto head = out.head(len);
    polyval_rows_into(seg.coeffs.middleRows(begin, len), tau, head);
  };
  exact.tail = [at, space](Index dim, double t) {
    const Vec v = at(t);
    double sum = 0.0;
    for (Index j = v.size(); j > dim; --j) {
      sum += abs_pow(v(j - 1), space.p()) * std::pow(space.weight(j), space.p());
    }
    return std::pow(sum, 1.0 / space.p());
  };
  return exact;
}

RunResult run_streamed(const ProblemInstance<double>& inst, const Mesh& mesh,
                       const TruncationSchedule& sched, int r, const PowerCost& cost,
                       const ErrorOptions& options) {
  return run_impl(inst, mesh, sched, r, cost, options, nullptr);
}

RunResult run_kept(const ProblemInstance<double>& inst, const Mesh& mesh,
                   const TruncationSchedule& sched, int r, const PowerCost& cost,
                   const ErrorOptions& options, std::optional<Trajectory<double>>& trajectory) {
  return run_impl(inst, mesh, sched, r, cost, options, &trajectory);
}

bool same_bits(const Trajectory<double>& x, const Trajectory<double>& y) {
  auto same = [](const auto& u, const auto& v) {
    return u.rows() == v.rows() && u.cols() == v.cols() &&
           std::memcmp(u.data(), v.data(), sizeof(double) * static_cast<std::size_t>(u.size())) == 0;
  };
  if (x.knots.size() != y.knots.size() || x.segments.size() != y.segments.size()) return false;
  for (std::size_t k = 0; k < x.knots.size(); ++k) {
    if (!same(x.knots[k], y.knots[k])) return false;
  }
  for (std::size_t k = 0; k < x.segments.size(); ++k) {
    if (!same(x.segments[k].coeffs, y.segments[k].coeffs)) return false;
  }
  return true;
}

json to_json(const RunResult& run) {
  json out;
  out["n"] = run.n;
  out["N"] = run.N;
  out["constant_dim"] = run.constant_dim;
  out["error"] = std::isnan(run.error) ? json(nullptr) : json(run.error);
  out["worst_time"] = run.worst_time;
  out["ball"] = run.ball;
  out["radius"] = run.radius;
  out["bound"] = {{"initial_term", run.bound.initial_term},
                  {"truncation_term", run.bound.truncation_term},
                  {"discretization_term", run.bound.discretization_term},
                  {"total_without_C", run.bound.total_without_C}};
  out["cost"] = run.cost;
  out["formula_cost"] = run.formula_cost;
  out["scalar_evaluations"] = run.scalar_evaluations;
  out["min_step_evaluations"] = run.min_step_evaluations;
  out["information_points"] = run.information_points;
  out["ball_ok"] = run.ball_ok();
  out["condition_c"] = run.condition_c();
  out["seconds"] = run.seconds;
  return out;
}

ErrorCoefficients bound_constants(const ConstantsSpec& spec, double p) {
  if (spec.source == "explicit") return {spec.A, spec.B};
  if (spec.source == "instance") {
    const ErrorConstants c = lp_sin_euler_constants(p);
    return {c.A, c.B};
  }
  const WeightedSpace space = WeightedSpace::power(p);
  return constants_AB(p, lp_radius(space), space.weight_norm());
}

json cmd_solve(const ExperimentConfig& config, const std::string& out_dir) {
  require_list(!config.n.empty(), "n", "solve");
  require_list(!config.N.empty() || config.schedule.has_value(), "N", "solve");
  const ProblemInstance<double> inst = build_instance(config.instance, config.r);
  const Index n = config.n.front();
  const Mesh mesh = build_mesh(config.mesh, inst.params, n);
  const TruncationSchedule sched = build_schedule(config, n, config.N.empty() ? 1 : config.N.front());
  std::optional<Trajectory<double>> kept;
  const RunResult run = run_kept(inst, mesh, sched, config.r, PowerCost{config.cost_beta},
                                 error_options(config), kept);
  const Trajectory<double>& traj = *kept;

  CsvWriter csv(output_path(out_dir, "solve.csv"), {"t", "component", "value"});
  const auto taus = lobatto_samples(config.samples_per_interval);
  for (std::size_t k = 0; k < traj.segments.size(); ++k) {
    const auto& seg = traj.segments[k];
    const bool last = k + 1 == traj.segments.size();
    for (double tau : taus) {
      if (tau == 1.0 && !last) continue;  // the next segment starts there
      const double t = tau == 1.0 ? mesh.point(static_cast<Index>(k) + 1) : seg.t0 + tau * seg.h;
      const Vec value = tau == 1.0 ? traj.knots[k + 1] : polyval_rows(seg.coeffs, tau);
      const Index shown = std::min(config.csv_components, value.size());
      for (Index j = 0; j < shown; ++j) {
        csv << t << static_cast<std::int64_t>(j + 1) << value(j);
        csv.end_row();
      }
    }
  }
  json record;
  record["command"] = "solve";
  record["config"] = to_json(config);
  record["runs"] = json::array({to_json(run)});
  return record;
}

json cmd_converge(const ExperimentConfig& config, const std::string& out_dir) {
  require_list(config.n.size() >= 1, "n", "converge");
  require_list(!config.N.empty() || config.schedule.has_value(), "N", "converge");
  const Index N = config.N.empty() ? 1 : config.N.front();
  const Index n_max = *std::max_element(config.n.begin(), config.n.end());
  const ProblemInstance<double> inst =
      with_reference(build_instance(config.instance, config.r), config, n_max, N);
  std::vector<RunResult> runs(config.n.size());
  parallel_for(config.n.size(), config.threads, [&](std::size_t i) {
    const Index n = config.n[i];
    runs[i] = run_streamed(inst, build_mesh(config.mesh, inst.params, n), build_schedule(config, n, N),
                           config.r, PowerCost{config.cost_beta}, error_options(config));
  });
  CsvWriter csv(output_path(out_dir, "converge.csv"),
                {"n", "N", "error", "ball", "radius", "cost", "scalar_evaluations", "bound_total"});
  std::vector<double> xs;
  std::vector<double> errs;
  json list = json::array();
  for (const auto& run : runs) {
    csv << static_cast<std::int64_t>(run.n) << static_cast<std::int64_t>(run.N) << run.error << run.ball
        << run.radius << run.cost << static_cast<std::int64_t>(run.scalar_evaluations)
        << run.bound.total_without_C;
    csv.end_row();
    xs.push_back(static_cast<double>(run.n));
    errs.push_back(run.error);
    list.push_back(to_json(run));
  }
  json record;
  record["command"] = "converge";
  record["config"] = to_json(config);
  record["runs"] = list;
  record["order"] = fit_json(xs, errs, false);
  record["expected_order"] = std::max(config.r, 1);
  return record;
}

json cmd_truncate(const ExperimentConfig& config, const std::string& out_dir) {
  require_list(!config.n.empty(), "n", "truncate");
  require_list(!config.N.empty(), "N", "truncate");
  const Index n = config.n.front();
  const Index N_max = *std::max_element(config.N.begin(), config.N.end());
  ExperimentConfig plain = config;
  plain.schedule.reset();
  const ProblemInstance<double> inst =
      with_reference(build_instance(config.instance, config.r), plain, n, 4 * N_max);
  std::vector<RunResult> runs(config.N.size());
  parallel_for(config.N.size(), config.threads, [&](std::size_t i) {
    runs[i] = run_streamed(inst, build_mesh(config.mesh, inst.params, n),
                           TruncationSchedule::constant(n, config.N[i]), config.r,
                           PowerCost{config.cost_beta}, error_options(config));
  });
  CsvWriter csv(output_path(out_dir, "truncate.csv"),
                {"N", "n", "error", "ball", "radius", "cost", "bound_total"});
  std::vector<double> xs;
  std::vector<double> errs;
  json list = json::array();
  for (const auto& run : runs) {
    csv << static_cast<std::int64_t>(run.N) << static_cast<std::int64_t>(run.n) << run.error << run.ball
        << run.radius << run.cost << run.bound.total_without_C;
    csv.end_row();
    xs.push_back(static_cast<double>(run.N));
    errs.push_back(run.error);
    list.push_back(to_json(run));
  }
  json record;
  record["command"] = "truncate";
  record["config"] = to_json(config);
  record["runs"] = list;
  record["slope_vs_N"] = fit_json(xs, errs, true);
  record["expected_slope"] = -(1.0 - 1.0 / config.instance.p);
  return record;
}

json cmd_workprecision(const ExperimentConfig& config, const std::string& out_dir) {
  require_list(!config.epsilon.empty(), "epsilon", "workprecision");
  if (config.instance.label != "lp_sin") {
    throw ValidationError("config.instance.label: workprecision needs lp_sin (closed-form plans)");
  }
  const double p = config.instance.p;
  const double beta = config.cost_beta;
  const PowerCost cost{beta};
  const ErrorCoefficients AB = bound_constants(config.constants, p);
  const ProblemInstance<double> inst = build_instance(config.instance, config.r);

  const std::size_t count = config.epsilon.size();
  std::vector<ComplexityPlan> closed(count);
  std::vector<ComplexityPlan> grid(count);
  std::vector<std::optional<RunResult>> realized(count);
  for (std::size_t i = 0; i < count; ++i) {
    closed[i] = lp_closed_form(config.epsilon[i], p, beta, AB.A, AB.B);
    grid[i] = optimize_grid(config.epsilon[i], lp_bound(p, AB.A, AB.B), cost, {30, 40});
  }
  parallel_for(count, config.threads, [&](std::size_t i) {
    const auto& plan = closed[i];
    if (static_cast<double>(plan.n) * static_cast<double>(plan.N) > kMaxRealizedWork) return;
    realized[i] = run_streamed(inst, build_mesh(config.mesh, inst.params, plan.n),
                               TruncationSchedule::constant(plan.n, plan.N), config.r, cost,
                               error_options(config));
  });

  CsvWriter csv(output_path(out_dir, "workprecision.csv"),
                {"epsilon", "closed_n", "closed_N", "closed_cost", "grid_n", "grid_N", "grid_cost",
                 "realized", "error", "ledger_cost", "within_epsilon"});
  std::vector<double> eps;
  std::vector<double> closed_costs;
  std::vector<double> ledger_costs;
  json list = json::array();
  bool all_realized = true;
  bool all_within = true;
  for (std::size_t i = 0; i < count; ++i) {
    const bool ran = realized[i].has_value();
    const double error = ran ? realized[i]->error : std::numeric_limits<double>::quiet_NaN();
    const double ledger_cost = ran ? realized[i]->cost : std::numeric_limits<double>::quiet_NaN();
    const bool within = ran && error <= config.epsilon[i];
    all_realized = all_realized && ran;
    all_within = all_within && within;
    csv << config.epsilon[i] << static_cast<std::int64_t>(closed[i].n)
        << static_cast<std::int64_t>(closed[i].N) << closed[i].predicted_cost
        << static_cast<std::int64_t>(grid[i].n) << static_cast<std::int64_t>(grid[i].N)
        << grid[i].predicted_cost << std::string(ran ? "1" : "0") << error << ledger_cost
        << std::string(within ? "1" : "0");
    csv.end_row();
    eps.push_back(config.epsilon[i]);
    closed_costs.push_back(closed[i].predicted_cost);
    ledger_costs.push_back(ledger_cost);
    json entry = {{"epsilon", config.epsilon[i]},
                  {"closed", {{"n", closed[i].n}, {"N", closed[i].N}, {"cost", closed[i].predicted_cost},
                              {"bound", closed[i].bound}}},
                  {"grid", {{"feasible", grid[i].feasible}, {"n", grid[i].n}, {"N", grid[i].N},
                            {"cost", grid[i].predicted_cost}}}};
    entry["realized"] = ran ? to_json(*realized[i]) : json(nullptr);
    list.push_back(entry);
  }
  json record;
  record["command"] = "workprecision";
  record["config"] = to_json(config);
  record["constants"] = {{"A", AB.A}, {"B", AB.B}, {"source", config.constants.source}};
  record["plans"] = list;
  record["expected_exponent"] = lp_cost_exponent(p, beta);
  record["closed_cost_slope"] = fit_json(eps, closed_costs, false);
  record["ledger_cost_slope"] = all_realized ? fit_json(eps, ledger_costs, false) : json(nullptr);
  record["all_realized"] = all_realized;
  record["all_within_epsilon"] = all_within;
  return record;
}

PairWitness pair_witness(const AdversarialPair& pair, const ClassParams& base, Index n, int r) {
  const Mesh mesh = Mesh::uniform(base.a, base.b, n);
  const TruncationSchedule sched = TruncationSchedule::constant(n, pair.indistinguishable_dim);
  SolveOptions<double> options;
  options.record_trace = true;
  const auto x = solve(pair.first, mesh, sched, r, PowerCost{}, options);
  const auto y = solve(pair.second, mesh, sched, r, PowerCost{}, options);

  const auto& tx = x.ledger.trace();
  const auto& ty = y.ledger.trace();
  for (std::size_t i = 0; i < std::min(tx.size(), ty.size()); ++i) {
    if (std::memcmp(&tx[i].first_coordinate, &ty[i].first_coordinate, sizeof(double)) != 0 ||
        tx[i].evaluations != ty[i].evaluations) {
      std::ostringstream msg;
      msg << "lower bound: evaluation traces differ at information point " << i << " ("
          << tx[i].first_coordinate << " vs " << ty[i].first_coordinate << ")";
      throw NumericalFailure(msg.str());
    }
  }

  PairWitness out;
  out.N = pair.indistinguishable_dim;
  out.guaranteed_gap = pair.guaranteed_gap;
  out.identical = tx.size() == ty.size() &&
                  x.ledger.information_digest() == y.ledger.information_digest() &&
                  same_bits(x.trajectory, y.trajectory);
  out.min_step_evaluations =
      *std::min_element(x.ledger.evaluations().begin(), x.ledger.evaluations().end());

  // Both members have closed forms supported on the first N + 1 components.
  const Index dim = pair.indistinguishable_dim + 1;
  Vec u(dim);
  Vec v(dim);
  constexpr int kTimes = 64;
  for (int i = 0; i <= kTimes; ++i) {
    const double t = i == kTimes ? base.b : base.a + base.length() * i / kTimes;
    exact_block(*pair.first.exact, t, 1, u);
    exact_block(*pair.second.exact, t, 1, v);
    out.measured_gap = std::max(out.measured_gap, distance(pair.first.space, u, v));
  }
  return out;
}

Case3Witness case3_witness(const WeightedSpace& space, const ClassParams& base, int r, Index n,
                           double A, const Case3Bounds& bounds) {
  ClassParams params = base;
  params.r = r;
  const ProblemInstance<double> f = make_case3_base(space, A, params);
  const Mesh mesh = Mesh::uniform(params.a, params.b, n);
  const TruncationSchedule sched = TruncationSchedule::constant(n, 1);
  SolveOptions<double> options;
  options.record_trace = true;
  const auto x = solve(f, mesh, sched, r, PowerCost{}, options);
  require(!x.ledger.trace_truncated(), "case III: evaluation trace was truncated");
  std::vector<double> trace;
  for (const auto& point : x.ledger.trace()) trace.push_back(point.first_coordinate);

  const int m = std::max(r, 1);
  const AdversarialPair pair =
      make_case3(space, trace, A, params, bounds, n * m * (m + 1) / 2);
  const auto y = solve(pair.second, mesh, sched, r, PowerCost{}, options);

  Case3Witness out;
  out.r = r;
  out.n = n;
  out.guaranteed_gap = pair.guaranteed_gap;
  out.scaled_gap = pair.guaranteed_gap * std::pow(static_cast<double>(n), m);
  out.trace_points = static_cast<Index>(pair.trace.size());
  out.bumps = static_cast<Index>(pair.perturbation.pieces().size());
  out.identical = x.ledger.information_digest() == y.ledger.information_digest() &&
                  same_bits(x.trajectory, y.trajectory);
  return out;
}

json cmd_lowerbound(const ExperimentConfig& config, const std::string& out_dir) {
  require_list(!config.n.empty(), "n", "lowerbound");
  require_list(!config.N.empty(), "N", "lowerbound");
  const WeightedSpace space = WeightedSpace::power(config.instance.p);
  ClassParams base = lp_class_params(space);
  base.r = config.r;
  const Case3Bounds bounds = config.case3_bounds.value_or(default_case3_bounds(base));
  const Index n_pair = config.n.front();

  CsvWriter csv(output_path(out_dir, "lowerbound.csv"),
                {"case", "r", "n", "N", "guaranteed_gap", "measured_gap", "scaled_gap", "identical",
                 "condition_c"});
  json cases = json::array();
  auto flag = [](bool b) { return std::string(b ? "1" : "0"); };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (Index N : config.N) {
    const PairWitness one = pair_witness(make_case1(space, N, base), base, n_pair, config.r);
    csv << std::string("I") << config.r << static_cast<std::int64_t>(n_pair) << static_cast<std::int64_t>(N)
        << one.guaranteed_gap << one.measured_gap << nan << flag(one.identical)
        << flag(one.min_step_evaluations >= N);
    csv.end_row();
    cases.push_back({{"case", "I"}, {"N", N}, {"guaranteed_gap", one.guaranteed_gap},
                     {"measured_gap", one.measured_gap}, {"identical", one.identical},
                     {"condition_c", one.min_step_evaluations >= N}});
    if (base.delta(static_cast<double>(N)) > base.M) {
      cases.push_back({{"case", "II"}, {"N", N}, {"skipped", "delta(N) > M"}});
      continue;
    }
    const PairWitness two = pair_witness(make_case2(space, N, base), base, n_pair, config.r);
    csv << std::string("II") << config.r << static_cast<std::int64_t>(n_pair) << static_cast<std::int64_t>(N)
        << two.guaranteed_gap << two.measured_gap << nan << flag(two.identical)
        << flag(two.min_step_evaluations >= N);
    csv.end_row();
    cases.push_back({{"case", "II"}, {"N", N}, {"guaranteed_gap", two.guaranteed_gap},
                     {"measured_gap", two.measured_gap}, {"identical", two.identical},
                     {"condition_c", two.min_step_evaluations >= N}});
  }
  std::vector<Case3Witness> witnesses(config.n.size());
  parallel_for(config.n.size(), config.threads, [&](std::size_t i) {
    witnesses[i] = case3_witness(space, base, config.r, config.n[i], config.instance.case_slope, bounds);
  });
  for (const auto& w : witnesses) {
    csv << std::string("III") << w.r << static_cast<std::int64_t>(w.n) << static_cast<std::int64_t>(1)
        << w.guaranteed_gap << nan << w.scaled_gap << flag(w.identical) << flag(true);
    csv.end_row();
    cases.push_back({{"case", "III"}, {"n", w.n}, {"r", w.r}, {"guaranteed_gap", w.guaranteed_gap},
                     {"scaled_gap", w.scaled_gap}, {"trace_points", w.trace_points},
                     {"bumps", w.bumps}, {"identical", w.identical}});
  }
  json record;
  record["command"] = "lowerbound";
  record["config"] = to_json(config);
  record["cases"] = cases;
  return record;
}

}  // namespace seqode

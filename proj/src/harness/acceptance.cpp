#include "seqode/harness/acceptance.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <chrono>
#include <cmath>
#include <array>
#include <cstring>
#include <numeric>
#include <iomanip>
#include <sstream>

#include "seqode/harness/experiments.hpp"
#include "seqode/harness/parallel.hpp"

namespace seqode {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Ball and condition (C) audits gathered from every run of C1..C5.
struct Audit {
  Index runs = 0;
  Index ball_violations = 0;
  Index evaluation_violations = 0;
  double worst_ball_ratio = 0.0;
  Index min_margin = std::numeric_limits<Index>::max();  ///< min over runs of min_k l_k - N

  void add(const RunResult& run) {
    ++runs;
    if (!run.ball_ok()) ++ball_violations;
    if (run.radius > 0.0) worst_ball_ratio = std::max(worst_ball_ratio, run.ball / run.radius);
    add_evaluations(run.min_step_evaluations, run.N);
  }
  void add_evaluations(Index min_step, Index N) {
    if (min_step < N) ++evaluation_violations;
    min_margin = std::min(min_margin, min_step - N);
  }
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream out;
  out << std::setprecision(digits) << x;
  return out.str();
}

std::vector<Index> powers_of_two(int first, int last, int stride = 1) {
  std::vector<Index> out;
  for (int e = first; e <= last; e += stride) out.push_back(Index{1} << e);
  return out;
}

std::vector<RunResult> run_grid(const ProblemInstance<double>& inst, const std::vector<Index>& ns,
                                const std::vector<Index>& Ns, int r, double beta, ErrorScope scope,
                                int threads) {
  std::vector<RunResult> runs(ns.size() * Ns.size());
  parallel_for(runs.size(), threads, [&](std::size_t i) {
    const Index n = ns[i / Ns.size()];
    const Index N = Ns[i % Ns.size()];
    runs[i] = run_streamed(inst, Mesh::uniform(inst.params.a, inst.params.b, n),
                           TruncationSchedule::constant(n, N), r, PowerCost{beta}, {8, scope});
  });
  return runs;
}

CriterionResult c1_order(const AcceptanceOptions& opt, Audit& audit) {
  CriterionResult out;
  out.passed = true;
  const auto inst = make_lp_sin(2.0);
  const auto ns = powers_of_two(4, 9);
  std::ostringstream detail;
  for (int r = 0; r <= 3; ++r) {
    const auto runs = run_grid(inst, ns, {4096}, r, 0.0, ErrorScope::computed, opt.threads);
    std::vector<double> x;
    std::vector<double> err;
    for (const auto& run : runs) {
      audit.add(run);
      x.push_back(static_cast<double>(run.n));
      err.push_back(run.error);
    }
    const double slope = fit_order(x, err).slope;
    const int m = std::max(r, 1);
    const bool ok = std::abs(slope - m) <= opt.tol.order;
    out.passed = out.passed && ok;
    detail << (r ? ", " : "") << "r=" << r << " slope " << fmt(slope) << (ok ? "" : " (want " + std::to_string(m) + " +- " + fmt(opt.tol.order) + ")");
  }
  out.detail = detail.str();
  return out;
}

CriterionResult c2_truncation(const AcceptanceOptions& opt, Audit& audit) {
  CriterionResult out;
  out.passed = true;
  const auto Ns = powers_of_two(2, 12);
  std::ostringstream detail;
  for (double p : {2.0, 4.0}) {
    const auto runs = run_grid(make_lp_sin(p), {2048}, Ns, 1, 0.0, ErrorScope::full, opt.threads);
    std::vector<double> x;
    std::vector<double> err;
    for (const auto& run : runs) {
      audit.add(run);
      x.push_back(static_cast<double>(run.N));
      err.push_back(run.error);
    }
    const double slope = -fit_order(x, err).slope;
    const double want = -(1.0 - 1.0 / p);
    const bool ok = std::abs(slope - want) <= opt.tol.truncation_slope;
    out.passed = out.passed && ok;
    detail << (p == 2.0 ? "" : ", ") << "p=" << p << " slope " << fmt(slope) << " (want " << fmt(want)
           << " +- " << fmt(opt.tol.truncation_slope) << ")";
  }
  out.detail = detail.str();
  return out;
}

CriterionResult c3_bound(const AcceptanceOptions& opt, Audit& audit) {
  CriterionResult out;
  out.passed = true;
  const double p = 2.0;
  const WeightedSpace space = WeightedSpace::power(p);
  const ErrorCoefficients AB = constants_AB(p, lp_radius(space), space.weight_norm());
  const PlanBound bound = lp_bound(p, AB.A, AB.B);
  const auto runs = run_grid(make_lp_sin(p), powers_of_two(4, 9), powers_of_two(2, 12, 2), 0, 0.0,
                             ErrorScope::full, opt.threads);
  Index violations = 0;
  double worst = 0.0;
  for (const auto& run : runs) {
    audit.add(run);
    const double ratio = run.error / bound(run.n, run.N);
    worst = std::max(worst, ratio);
    if (!(ratio <= 1.0)) ++violations;
  }
  out.passed = violations == 0;
  out.detail = std::to_string(runs.size()) + " cells, " + std::to_string(violations) +
               " violations, A=" + fmt(AB.A, 6) + " B=" + fmt(AB.B, 6) + ", max error/bound " + fmt(worst);
  return out;
}

CriterionResult c4_complexity(const AcceptanceOptions& opt, Audit& audit) {
  CriterionResult out;
  out.passed = true;
  const double p = 2.0;
  const ErrorConstants AB = lp_sin_euler_constants(p);
  const auto inst = make_lp_sin(p);
  const std::vector<double> betas{1.0, 0.0};
  std::vector<double> eps;
  for (int e = 4; e <= 9; ++e) eps.push_back(std::ldexp(1.0, -e));
  std::vector<ComplexityPlan> plans(betas.size() * eps.size());
  std::vector<RunResult> runs(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    plans[i] = lp_closed_form(eps[i % eps.size()], p, betas[i / eps.size()], AB.A, AB.B);
  }
  // Largest plans first so the pool drains evenly.
  std::vector<std::size_t> order(plans.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return plans[x].n * plans[x].N > plans[y].n * plans[y].N;
  });
  parallel_for(order.size(), opt.threads, [&](std::size_t j) {
    const std::size_t i = order[j];
    const auto& plan = plans[i];
    runs[i] = run_streamed(inst, Mesh::uniform(0.0, 1.0, plan.n), TruncationSchedule::constant(plan.n, plan.N),
                           0, PowerCost{betas[i / eps.size()]}, {8, ErrorScope::full});
  });
  std::ostringstream detail;
  const double* ranges[2] = {opt.tol.cost_slope_beta1, opt.tol.cost_slope_beta0};
  for (std::size_t b = 0; b < betas.size(); ++b) {
    std::vector<double> cost;
    Index over = 0;
    for (std::size_t e = 0; e < eps.size(); ++e) {
      const auto& run = runs[b * eps.size() + e];
      audit.add(run);
      cost.push_back(run.cost);
      if (!(run.error <= eps[e])) ++over;
    }
    const double slope = fit_order(eps, cost).slope;
    const bool ok = slope >= ranges[b][0] && slope <= ranges[b][1] && over == 0;
    out.passed = out.passed && ok;
    detail << (b ? "; " : "") << "beta=" << betas[b] << " slope " << fmt(slope) << " in [" << ranges[b][0]
           << ", " << ranges[b][1] << "], " << over << " runs above epsilon";
  }
  out.detail = detail.str();
  return out;
}

CriterionResult c5_lower(const AcceptanceOptions& opt, Audit& audit) {
  CriterionResult out;
  out.passed = true;
  const WeightedSpace space = WeightedSpace::power(2.0);
  std::ostringstream detail;
  {
    ClassParams base = lp_class_params(space);
    base.r = 1;
    const PairWitness one = pair_witness(make_case1(space, 4, base), base, 8, 1);
    audit.add_evaluations(one.min_step_evaluations, one.N);
    const bool ok = one.identical && std::abs(one.guaranteed_gap - 0.5) <= 1e-12 &&
                    one.measured_gap >= one.guaranteed_gap * (1.0 - 1e-12);
    out.passed = out.passed && ok;
    detail << "case I N=4 gap " << fmt(one.measured_gap, 6) << (one.identical ? "" : " (runs differ)");

    const PairWitness two = pair_witness(make_case2(space, 16384, base), base, 8, 1);
    audit.add_evaluations(two.min_step_evaluations, two.N);
    const bool ok2 = two.identical && two.guaranteed_gap > 0.0 &&
                     two.measured_gap >= two.guaranteed_gap * (1.0 - 1e-9);
    out.passed = out.passed && ok2;
    detail << "; case II N=16384 gap " << fmt(two.measured_gap) << " >= " << fmt(two.guaranteed_gap)
           << (two.identical ? "" : " (runs differ)");
  }
  const std::vector<Index> ns{32, 64, 128};
  for (int r : {1, 2}) {
    ClassParams base = lp_class_params(space);
    base.r = r;
    const Case3Bounds bounds = default_case3_bounds(base);
    std::vector<Case3Witness> first(ns.size());
    std::vector<Case3Witness> again(ns.size());
    parallel_for(2 * ns.size(), opt.threads, [&](std::size_t i) {
      auto& slot = i < ns.size() ? first[i] : again[i - ns.size()];
      slot = case3_witness(space, base, r, ns[i % ns.size()], kDefaultCase3Slope, bounds);
    });
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    bool identical = true;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      lo = std::min(lo, first[i].scaled_gap);
      hi = std::max(hi, first[i].scaled_gap);
      identical = identical && first[i].identical && again[i].identical &&
                  std::memcmp(&first[i].guaranteed_gap, &again[i].guaranteed_gap, sizeof(double)) == 0;
    }
    const bool ok = identical && lo > 0.0 && hi / lo <= opt.tol.gap_ratio;
    out.passed = out.passed && ok;
    detail << "; case III r=" << r << " gap*n^m in [" << fmt(lo) << ", " << fmt(hi) << "]"
           << (identical ? "" : " (runs differ)");
  }
  out.detail = detail.str();
  return out;
}

// Distance in units in the last place.
std::int64_t ulps(double x, double y) {
  if (x == y) return 0;
  auto key = [](double v) {
    std::int64_t i;
    std::memcpy(&i, &v, sizeof v);
    return i < 0 ? std::numeric_limits<std::int64_t>::min() - i : i;
  };
  const std::int64_t a = key(x);
  const std::int64_t b = key(y);
  return a > b ? a - b : b - a;
}

CriterionResult c6_exactness(const AcceptanceOptions& opt) {
  CriterionResult out;
  out.passed = true;
  std::ostringstream detail;
  const Index S = 8;
  const Index n = 64;
  const auto finite = make_finite_coupled(S);
  const Mesh mesh = Mesh::uniform(0.0, 1.0, n);

  // Schedules that all cover the support give the same knots.
  bool same = true;
  for (int r : {0, 1, 2, 3}) {
    const auto base = solve(finite, mesh, TruncationSchedule::constant(n, S), r, PowerCost{});
    for (const auto& sched : {TruncationSchedule::constant(n, 4 * S), TruncationSchedule::linear(n, S, 3 * S)}) {
      const auto other = solve(finite, mesh, sched, r, PowerCost{});
      for (std::size_t k = 0; k < base.trajectory.knots.size(); ++k) {
        const Vec& u = base.trajectory.knots[k];
        const Vec& v = other.trajectory.knots[k];
        same = same && std::memcmp(u.data(), v.data(), sizeof(double) * S) == 0 &&
               (v.size() == S || v.tail(v.size() - S).isZero(0.0));
      }
    }
  }
  out.passed = out.passed && same;
  detail << "schedules " << (same ? "bit-identical" : "differ");

  // One step from each knot of the solver against y + h f(y) and Heun.
  std::int64_t worst[2] = {0, 0};
  Vec f0(S);
  Vec f1(S);
  for (int which = 0; which < 2; ++which) {
    const int r = which == 0 ? 0 : 2;
    const auto run = solve(finite, mesh, TruncationSchedule::constant(n, S), r, PowerCost{});
    for (Index k = 0; k < n; ++k) {
      const Vec& y = run.trajectory.knots[static_cast<std::size_t>(k)];
      const Vec& next = run.trajectory.knots[static_cast<std::size_t>(k + 1)];
      const double h = mesh.step(k);
      finite.block(y, f0);
      Vec hand(S);
      if (which == 0) {
        for (Index j = 0; j < S; ++j) hand(j) = y(j) + h * f0(j);
      } else {
        Vec pred(S);
        for (Index j = 0; j < S; ++j) pred(j) = y(j) + h * f0(j);
        finite.block(pred, f1);
        for (Index j = 0; j < S; ++j) hand(j) = y(j) + h * (f0(j) + f1(j)) / 2.0;
      }
      for (Index j = 0; j < S; ++j) worst[which] = std::max(worst[which], ulps(hand(j), next(j)));
    }
  }
  const bool loops = worst[0] <= opt.tol.ulps && worst[1] <= opt.tol.ulps;
  out.passed = out.passed && loops;
  detail << "; Euler " << worst[0] << " ulp, Heun " << worst[1] << " ulp";

  // Exact arithmetic: Euler on y' = -y, n = 100, gives (99/100)^100.
  const Index steps = 100;
  SolveOptions<Rational> final_only_q;
  final_only_q.keep_trajectory = false;
  SolveOptions<double> final_only;
  final_only.keep_trajectory = false;
  const auto linear_q = make_decoupled_linear<Rational>(Rational(1));
  const auto exact_q =
      solve(linear_q, BasicMesh<Rational>::uniform(Rational(0), Rational(1), steps),
            TruncationSchedule::constant(steps, 1), 0, PowerCost{}, final_only_q);
  using boost::multiprecision::cpp_int;
  const Rational want(boost::multiprecision::pow(cpp_int(99), static_cast<unsigned>(steps)),
                      boost::multiprecision::pow(cpp_int(100), static_cast<unsigned>(steps)));
  const bool rational_ok = exact_q.final_value(0) == want;
  const auto linear_d = make_decoupled_linear<double>(1.0);
  const auto approx = solve(linear_d, Mesh::uniform(0.0, 1.0, steps), TruncationSchedule::constant(steps, 1), 0,
                            PowerCost{}, final_only);
  const std::int64_t double_ulps = ulps(approx.final_value(0), static_cast<double>(want));
  out.passed = out.passed && rational_ok && double_ulps <= opt.tol.rational_ulps;
  detail << "; rational (99/100)^100 " << (rational_ok ? "exact" : "differs") << ", double " << double_ulps
         << " ulp";
  out.detail = detail.str();
  return out;
}

}  // namespace

CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& options) {
  Audit audit;
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  if (id == "C1") {
    result = c1_order(options, audit);
  } else if (id == "C2") {
    result = c2_truncation(options, audit);
  } else if (id == "C3") {
    result = c3_bound(options, audit);
  } else if (id == "C4") {
    result = c4_complexity(options, audit);
  } else if (id == "C5") {
    result = c5_lower(options, audit);
  } else if (id == "C6") {
    result = c6_exactness(options);
  } else {
    throw ValidationError("acceptance: no standalone criterion " + id);
  }
  result.id = id;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream out;
  out << result.id << ' ' << (result.passed ? "PASS" : "FAIL") << ' ' << result.name << ": " << result.detail
      << " (" << std::fixed << std::setprecision(1) << result.seconds << " s)";
  return out.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  Audit audit;
  double audit_seconds = 0.0;
  auto timed = [&](const char* id, const char* name, auto&& criterion) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = criterion();
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("threw: ") + e.what();
    }
    result.id = id;
    result.name = name;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    audit_seconds += result.seconds;
    results.push_back(result);
    if (on_result) on_result(results.back());
  };
  timed("C1", "convergence order max(r,1) in n", [&] { return c1_order(options, audit); });
  timed("C2", "truncation error slope -(1-1/p) in N", [&] { return c2_truncation(options, audit); });
  timed("C3", "error below the certified bound", [&] { return c3_bound(options, audit); });
  timed("C4", "cost exponent of the closed-form plan", [&] { return c4_complexity(options, audit); });
  timed("C5", "adversarial pairs share information and keep their gap",
        [&] { return c5_lower(options, audit); });
  timed("C6", "schedule independence and exact reference loops", [&] { return c6_exactness(options); });

  CriterionResult c7{"C7", "iterates stay in the ball of radius R", audit.ball_violations == 0, "", audit_seconds};
  c7.detail = std::to_string(audit.runs) + " runs, " + std::to_string(audit.ball_violations) +
              " outside, max ball/R " + fmt(audit.worst_ball_ratio);
  results.push_back(c7);
  if (on_result) on_result(c7);
  CriterionResult c8{"C8", "every step evaluates at least N components", audit.evaluation_violations == 0, "",
                     audit_seconds};
  c8.detail = std::to_string(audit.evaluation_violations) + " violations, smallest margin " +
              std::to_string(audit.min_margin);
  results.push_back(c8);
  if (on_result) on_result(c8);
  return results;
}

}  // namespace seqode

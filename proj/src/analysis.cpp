#include "seqode/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace seqode {

double radius_R(double L, double M, double gamma1, double P, double a, double b) {
  require(L > 0.0 && M > 0.0 && gamma1 > 0.0 && P > 0.0, "radius_R: inputs must be positive");
  require(a < b, "radius_R: need a < b");
  const double length = b - a;
  // expm1 keeps the L -> 0 limit M (b - a) accurate.
  const double continuous = M / L * std::expm1(L * length);
  const double discrete = 2.0 * std::exp(2.0 * P * L * length) * length * P * (L * gamma1 + M) + gamma1;
  return std::max(continuous, discrete);
}

BoundReport theorem1_bound(const ClassParams& params, const Mesh& mesh,
                           const TruncationSchedule& sched) {
  require(mesh.intervals() == sched.intervals(),
          "theorem1_bound: schedule length does not match the mesh");
  const int m = params.order();
  BoundReport report;
  report.initial_term = params.gamma(static_cast<double>(sched.initial_dim()));
  report.partial.reserve(static_cast<std::size_t>(mesh.intervals()));
  for (Index k = 0; k < mesh.intervals(); ++k) {
    const double h = mesh.step(k);
    report.truncation_term += h * params.delta(static_cast<double>(sched.dim(k)));
    report.discretization_term += std::pow(h, m + 1);
    report.partial.push_back(report.initial_term + report.truncation_term +
                             report.discretization_term);
  }
  report.total_without_C =
      report.initial_term + report.truncation_term + report.discretization_term;
  return report;
}

Index generalized_inverse(const std::function<double(double)>& g, double eps) {
  const double top = g(1.0);
  if (!(eps > 0.0 && eps < top)) {
    std::ostringstream msg;
    msg << "generalized inverse: eps = " << eps << " outside (0, " << top << ")";
    throw ValidationError(msg.str());
  }
  // Bracket by doubling, then bisect on integers.
  Index lo = 1;
  Index hi = 2;
  while (g(static_cast<double>(hi)) > eps) {
    if (hi >= (Index{1} << 62)) throw NumericalFailure("generalized inverse: no solution below 2^62");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const Index mid = lo + (hi - lo) / 2;
    if (g(static_cast<double>(mid)) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::string to_string(PlanSource source) {
  switch (source) {
    case PlanSource::prop1: return "prop1";
    case PlanSource::grid: return "grid";
    case PlanSource::lp_closed_form: return "lp_closed_form";
  }
  return "unknown";
}

AlphaRule uniform_alpha(const ClassParams& params) {
  const double length = params.length();
  return [length](double n) { return length / n; };
}

namespace {

Index inverse_or_one(const std::function<double(double)>& g, double eps) {
  return g(1.0) <= eps ? 1 : generalized_inverse(g, eps);
}

}  // namespace

ComplexityPlan optimize_prop1(double epsilon, const ClassParams& params, const AlphaRule& alpha,
                              const PowerCost& cost, double C1, bool thirds) {
  require(epsilon > 0.0, "optimize_prop1: epsilon must be positive");
  require(C1 > 0.0, "optimize_prop1: C1 must be positive");
  const double target = epsilon / C1 / (thirds ? 3.0 : 1.0);
  const double length = params.length();
  const int m = params.order();
  const Index N_gamma = inverse_or_one(params.gamma, target);
  const Index N_delta = inverse_or_one([&](double k) { return length * params.delta(k); }, target);
  const Index n = inverse_or_one([&](double x) { return length * std::pow(alpha(x), m); }, target);
  ComplexityPlan plan;
  plan.epsilon = epsilon;
  plan.n = n;
  plan.N = std::max(N_gamma, N_delta);
  const double N = static_cast<double>(plan.N);
  plan.predicted_cost = static_cast<double>(n) * cost(N) * N;
  plan.bound = C1 * (params.gamma(N) + length * params.delta(N) +
                     length * std::pow(alpha(static_cast<double>(n)), m));
  plan.source = PlanSource::prop1;
  return plan;
}

PlanBound equal_dim_bound(const ClassParams& params) {
  return [params](Index n, Index N) {
    const double length = params.length();
    const double h = length / static_cast<double>(n);
    const double dim = static_cast<double>(N);
    return params.gamma(dim) + length * params.delta(dim) + length * std::pow(h, params.order());
  };
}

PlanBound lp_bound(double p, double A, double B) {
  require(p > 1.0, "lp_bound: p must exceed 1");
  return [p, A, B](Index n, Index N) {
    return A * std::pow(static_cast<double>(N), -(1.0 - 1.0 / p)) + B / static_cast<double>(n);
  };
}

ComplexityPlan optimize_grid(double epsilon, const PlanBound& bound, const PowerCost& cost,
                             const GridLimits& limits) {
  require(epsilon > 0.0, "optimize_grid: epsilon must be positive");
  require(limits.max_log2_n >= 0 && limits.max_log2_n <= 62 && limits.max_log2_N >= 0 &&
              limits.max_log2_N <= 62,
          "optimize_grid: limits must lie in [0, 62]");
  ComplexityPlan best;
  best.epsilon = epsilon;
  best.source = PlanSource::grid;
  best.feasible = false;
  best.predicted_cost = std::numeric_limits<double>::infinity();
  // N ascending and n ascending with strict improvement gives the tie rule.
  for (int eN = 0; eN <= limits.max_log2_N; ++eN) {
    const Index N = Index{1} << eN;
    for (int en = 0; en <= limits.max_log2_n; ++en) {
      const Index n = Index{1} << en;
      const double value = bound(n, N);
      if (!(value <= epsilon)) continue;
      const double c = static_cast<double>(n) * cost(static_cast<double>(N)) * static_cast<double>(N);
      if (c < best.predicted_cost) {
        best.n = n;
        best.N = N;
        best.bound = value;
        best.predicted_cost = c;
        best.feasible = true;
      }
      break;  // larger n only costs more
    }
  }
  if (!best.feasible) {
    best.n = 0;
    best.N = 0;
    best.predicted_cost = 0.0;
  }
  return best;
}

ComplexityPlan lp_closed_form(double epsilon, double p, double beta, double A, double B) {
  require(p > 1.0, "lp_closed_form: p must exceed 1");
  require(beta >= 0.0, "lp_closed_form: beta must be nonnegative");
  require(epsilon > 0.0, "lp_closed_form: epsilon must be positive");
  require(A > 0.0 && B > 0.0, "lp_closed_form: A and B must be positive");
  ComplexityPlan plan;
  plan.epsilon = epsilon;
  plan.source = PlanSource::lp_closed_form;
  const double n = std::ceil(B * (p * (beta + 2.0) - 1.0) / ((p - 1.0) * epsilon));
  const double base = std::ceil(A * (beta + 2.0 - 1.0 / p) / ((beta + 1.0) * epsilon));
  const double N = std::ceil(std::pow(base, p / (p - 1.0)));
  require(n < 9.2e18 && N < 9.2e18, "lp_closed_form: plan exceeds the index range");
  plan.n = static_cast<Index>(n);
  plan.N = static_cast<Index>(N);
  plan.predicted_cost = n * std::pow(N, 1.0 + beta);
  plan.bound = lp_bound(p, A, B)(plan.n, plan.N);
  // Feasible up to rounding in the power.
  if (plan.bound > epsilon * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "lp_closed_form: plan bound " << plan.bound << " exceeds epsilon " << epsilon;
    throw NumericalFailure(msg.str());
  }
  return plan;
}

double lp_cost_exponent(double p, double beta) {
  require(p > 1.0, "lp_cost_exponent: p must exceed 1");
  return (p * (beta + 2.0) - 1.0) / (p - 1.0);
}

ErrorCoefficients constants_AB(double p, double R, double W) {
  require(p > 1.0, "constants_AB: p must exceed 1");
  require(R > 0.0 && W > 0.0, "constants_AB: R and W must be positive");
  ErrorCoefficients out;
  out.A = (2.0 * R + 1.0) * std::exp(W) / std::pow(p - 1.0, 1.0 / p);
  out.B = W * (R + 1.0) * (3.0 * std::exp(W) - 2.0);
  return out;
}

OrderFit fit_order(const std::vector<double>& x, const std::vector<double>& err) {
  require(x.size() == err.size(), "fit_order: length mismatch");
  require(x.size() >= 3, "fit_order: need at least three points");
  const std::size_t count = x.size();
  std::vector<double> u(count);
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    require(x[i] > 0.0, "fit_order: abscissae must be positive");
    require(err[i] > 0.0 && std::isfinite(err[i]), "fit_order: errors must be positive");
    u[i] = -std::log(x[i]);
    v[i] = std::log(err[i]);
  }
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(count);
  mv /= static_cast<double>(count);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxy += (u[i] - mu) * (v[i] - mv);
    sxx += (u[i] - mu) * (u[i] - mu);
  }
  require(sxx > 0.0, "fit_order: abscissae must not all coincide");
  OrderFit fit;
  fit.slope = sxy / sxx;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    fit.local.push_back(std::log(err[i] / err[i + 1]) / std::log(x[i + 1] / x[i]));
  }
  return fit;
}

}  // namespace seqode

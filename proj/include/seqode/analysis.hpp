#pragma once

#include <functional>
#include <string>
#include <vector>

#include "seqode/mesh.hpp"
#include "seqode/problem_class.hpp"

namespace seqode {

/// Radius of a ball around eta containing both z(t) and the numerical
/// trajectory: max((M/L)(e^{L(b-a)} - 1), 2 e^{2PL(b-a)} (b-a) P (L gamma1 + M) + gamma1).
double radius_R(double L, double M, double gamma1, double P, double a, double b);

/// The three sums of the upper error bound, without the constant.
struct BoundReport {
  double initial_term = 0.0;         ///< gamma(N_{-1})
  double truncation_term = 0.0;      ///< sum_j h_j delta(N_j)
  double discretization_term = 0.0;  ///< sum_j h_j^{max(r,1)+1}
  double total_without_C = 0.0;
  /// Partial bound on [t_k, t_{k+1}]: the same sums taken over j <= k.
  std::vector<double> partial;
};

BoundReport theorem1_bound(const ClassParams& params, const Mesh& mesh,
                           const TruncationSchedule& sched);

/// Smallest integer k >= 1 with g(k) <= eps, for nonincreasing g. Defined for
/// eps in (0, g(1)); throws outside that range or when no k < 2^62 works.
Index generalized_inverse(const std::function<double(double)>& g, double eps);

enum class PlanSource { prop1, grid, lp_closed_form };

std::string to_string(PlanSource source);

/// A uniform-dimension plan (n, N) for accuracy epsilon.
struct ComplexityPlan {
  double epsilon = 0.0;
  Index n = 0;
  Index N = 0;
  double predicted_cost = 0.0;  ///< n c(N) N
  double bound = 0.0;           ///< the source's bound at (n, N)
  PlanSource source = PlanSource::prop1;
  bool feasible = true;
};

/// alpha(n) for the mesh family, nonincreasing in n.
using AlphaRule = std::function<double(double n)>;

/// (b - a) / n.
AlphaRule uniform_alpha(const ClassParams& params);

/// n(eps / C1) and N(eps / C1). With thirds, each of C1 gamma(N), C1 (b-a) delta(N)
/// and C1 (b-a) alpha(n)^{max(r,1)} is held below eps / 3; without, each below eps.
/// A constraint already met at 1 gives 1.
ComplexityPlan optimize_prop1(double epsilon, const ClassParams& params, const AlphaRule& alpha,
                              const PowerCost& cost, double C1 = 1.0, bool thirds = true);

struct GridLimits {
  int max_log2_n = 20;
  int max_log2_N = 24;
};

/// bound(n, N) for a uniform mesh and constant dimension.
using PlanBound = std::function<double(Index n, Index N)>;

/// gamma(N) + (b - a) delta(N) + (b - a) ((b - a) / n)^{max(r,1)}.
PlanBound equal_dim_bound(const ClassParams& params);

/// A N^{-(1 - 1/p)} + B / n.
PlanBound lp_bound(double p, double A, double B);

/// Cheapest (n, N) over powers of two within limits with bound(n, N) <= epsilon.
/// Ties go to the smaller N, then the smaller n. Infeasible plans have
/// feasible = false and n = N = 0.
ComplexityPlan optimize_grid(double epsilon, const PlanBound& bound, const PowerCost& cost,
                             const GridLimits& limits = {});

/// n = ceil(B (p(beta+2) - 1) / ((p-1) eps)),
/// N = ceil(A (beta + 2 - 1/p) / ((beta+1) eps))^{p/(p-1)} (rounded up once more
/// when the power is not an integer).
ComplexityPlan lp_closed_form(double epsilon, double p, double beta, double A, double B);

/// Cost exponent (p(beta+2) - 1) / (p - 1) of the closed-form plans.
double lp_cost_exponent(double p, double beta);

struct ErrorCoefficients {
  double A = 0.0;
  double B = 0.0;
};

/// A = (2R+1) e^W / (p-1)^{1/p}, B = W (R+1) (3 e^W - 2).
ErrorCoefficients constants_AB(double p, double R, double W);

struct OrderFit {
  double slope = 0.0;
  /// log2(err_i / err_{i+1}) / log2(x_{i+1} / x_i) for adjacent pairs.
  std::vector<double> local;
};

/// Least-squares slope of log(err) against log(1/x).
OrderFit fit_order(const std::vector<double>& x, const std::vector<double>& err);

}  // namespace seqode

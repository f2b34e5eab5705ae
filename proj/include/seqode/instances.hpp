#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seqode/bump.hpp"
#include "seqode/problem_class.hpp"
#include "seqode/space.hpp"

namespace seqode {

/// Closed-form solution z(t) of an instance.
struct ExactSolution {
  std::function<double(Index j, double t)> component;
  /// Optional: writes z^{first}, ..., z^{first + out.size() - 1} at t.
  std::function<void(double t, Index first, Eigen::Ref<Vec> out)> block;
  /// Certified bound on (sum_{j > dim} |z^j(t)|^p w_j^p)^{1/p}.
  std::function<double(Index dim, double t)> tail;
};

/// One pair (f, eta): component rules f^j and eta^j in raw coordinates.
template <class Scalar>
struct ProblemInstance {
  using Vector = TruncVec<Scalar>;
  using ComponentRule = std::function<Scalar(Index j, const Vector& y)>;
  using BlockRule = std::function<void(const Vector& y, Eigen::Ref<Vector> out)>;

  std::string label;
  WeightedSpace space = WeightedSpace::power(2.0);
  ClassParams params;
  ComponentRule component;  ///< f^j(y), j >= 1, y finitely supported
  BlockRule block;          ///< optional: f^1..f^{out.size()} at y in one call
  std::function<Scalar(Index j)> eta;
  std::function<double(Index k)> eta_tail;  ///< bound on ||eta - P_k eta||
  std::optional<ExactSolution> exact;
  bool class_member = false;
};

/// f^1..f^{out.size()} at y.
template <class Scalar>
void evaluate(const ProblemInstance<Scalar>& inst, const TruncVec<Scalar>& y,
              Eigen::Ref<TruncVec<Scalar>> out) {
  if (inst.block) {
    inst.block(y, out);
    return;
  }
  for (Index j = 0; j < out.size(); ++j) out(j) = inst.component(j + 1, y);
}

/// P_dim eta.
template <class Scalar>
TruncVec<Scalar> initial_value(const ProblemInstance<Scalar>& inst, Index dim) {
  TruncVec<Scalar> out(dim);
  for (Index j = 0; j < dim; ++j) out(j) = inst.eta(j + 1);
  return out;
}

/// z^{first..first+out.size()-1}(t) through the block rule when present.
void exact_block(const ExactSolution& exact, double t, Index first, Eigen::Ref<Vec> out);

/// Class parameters of the weighted ell_p examples with M_j = L_j = T_j = 1:
/// L = M = D = W, gamma(k) = tail_bound(k), delta(k) = 2 R gamma(k) on [0, 1].
ClassParams lp_class_params(const WeightedSpace& space);

/// Radius R of the weighted ell_p examples (radius_R with L = M = W, P = 1).
double lp_radius(const WeightedSpace& space);

/// f^j(y) = sin(y^1) for all j, eta^j = 1, in ell_p^{1/j}; exact solution
/// z^j(t) = 2 arctan(e^t tan(1/2)).
ProblemInstance<double> make_lp_sin(double p);

/// f^j(y) = sin(sum_i w_i^2 y^i / c_p) with c_p = ||w||_{p'}, eta^j = 1.
ProblemInstance<double> make_lp_coupled(double p);

/// Error constants of the Euler run on make_lp_sin(p) (instance-level,
/// certified): error <= A N^{-(1-1/p)} + B / n on a uniform mesh.
struct ErrorConstants {
  double A = 0.0;
  double B = 0.0;
};
ErrorConstants lp_sin_euler_constants(double p);

/// z^1 of make_lp_sin.
double lp_sin_first_component(double t);

/// f^j(y) = -lambda y^j, eta^j = 1, z^j(t) = exp(-lambda t). Not a class member.
template <class Scalar>
ProblemInstance<Scalar> make_decoupled_linear(const Scalar& lambda, double p = 2.0) {
  WeightedSpace space = WeightedSpace::power(p);
  const double lam = static_cast<double>(lambda);
  ClassParams params;
  params.L = std::max(std::abs(lam), 1.0);
  params.M = params.L * space.tail_bound(0);
  params.D = params.L;
  params.gamma = [space](double k) { return space.tail_bound(static_cast<Index>(k)); };
  params.delta = [space, L = params.L](double k) {
    return L * space.tail_bound(static_cast<Index>(k));
  };
  ExactSolution exact;
  exact.component = [lam](Index, double t) { return std::exp(-lam * t); };
  exact.block = [lam](double t, Index, Eigen::Ref<Vec> out) { out.setConstant(std::exp(-lam * t)); };
  exact.tail = [lam, space](Index dim, double t) {
    return std::exp(-lam * t) * space.tail_bound(dim);
  };
  ProblemInstance<Scalar> inst{
      "linear",
      space,
      params,
      [lambda](Index j, const TruncVec<Scalar>& y) -> Scalar {
        return j <= y.size() ? Scalar(-lambda * y(j - 1)) : Scalar(0);
      },
      [lambda](const TruncVec<Scalar>& y, Eigen::Ref<TruncVec<Scalar>> out) {
        const Index common = std::min(out.size(), y.size());
        for (Index j = 0; j < common; ++j) out(j) = -lambda * y(j);
        for (Index j = common; j < out.size(); ++j) out(j) = Scalar(0);
      },
      [](Index) { return Scalar(1); },
      [space](Index k) { return space.tail_bound(k); },
      exact,
      false};
  return inst;
}

/// Finite system on the first `support` components:
/// f^j(y) = sin(y^{(j mod support) + 1}) - y^j / 2, eta^j = 1/j; zero beyond.
ProblemInstance<double> make_finite_coupled(Index support = 8);

/// Two class members whose information agrees up to the stated set, with a
/// certified lower bound on the distance between their solutions.
struct AdversarialPair {
  ProblemInstance<double> first;
  ProblemInstance<double> second;
  double guaranteed_gap = 0.0;
  Index indistinguishable_dim = 0;  ///< cases I/II: any dimension <= N
  std::vector<double> trace;        ///< case III: first coordinates it agrees on
  BumpTrain perturbation;           ///< case III: H^scal
};

/// f = g = 0, eta = gamma(N) e_{N+1}, kappa = 0.
AdversarialPair make_case1(const WeightedSpace& space, Index N, const ClassParams& base);

/// f = delta(N) e_{N+1}, g = 0, eta = kappa = 0. Requires delta(N) <= M.
AdversarialPair make_case2(const WeightedSpace& space, Index N, const ClassParams& base);

struct Case3Bounds {
  double M1 = 0.0;
  double L1 = 0.0;
  double D1 = 0.0;
};

/// Defaults A = 0.1, M1 = L1 = D1 = 0.1 min(L, M, D).
Case3Bounds default_case3_bounds(const ClassParams& base);
constexpr double kDefaultCase3Slope = 0.1;

/// f = A e_1, g = f + H^scal(y^1) e_1 with bumps in every gap of the trace
/// inside [eta^1, eta^1 + A (b - a)], eta = kappa = 0. max_points bounds the
/// number of distinct information points (0: unbounded).
AdversarialPair make_case3(const WeightedSpace& space, std::vector<double> trace, double A,
                           const ClassParams& base, const Case3Bounds& bounds,
                           Index max_points = 0);

/// The f = A e_1 member of case III on its own (used to produce the trace).
ProblemInstance<double> make_case3_base(const WeightedSpace& space, double A,
                                        const ClassParams& base);

}  // namespace seqode

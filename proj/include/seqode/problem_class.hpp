#pragma once

#include <cmath>
#include <functional>

#include "seqode/space.hpp"

namespace seqode {

/// Nonincreasing positive sequence k -> value, k >= 1.
using Sequence = std::function<double(double)>;

/// Parameters of the class F_r(L, M, D, P, Gamma, Delta) on [a, b].
struct ClassParams {
  double L = 1.0;  ///< Lipschitz constant of f
  double M = 1.0;  ///< bound on ||f(eta)||
  double D = 1.0;  ///< bound on derivatives of order 1..r in the ball
  int r = 0;       ///< smoothness order
  Sequence gamma;  ///< ||eta - P_k eta|| <= gamma(k)
  Sequence delta;  ///< sup_ball ||f(y) - P_k f(y)|| <= delta(k)
  double a = 0.0;
  double b = 1.0;

  int order() const { return r < 1 ? 1 : r; }
  double length() const { return b - a; }
};

/// Throws ValidationError unless L, M, D > 0, a < b, r >= 0 and gamma, delta are
/// positive and nonincreasing on k = 1, 2, 4, ..., 2^20.
void validate(const ClassParams& params);

/// Scalar evaluation cost c(N) = N^beta.
struct PowerCost {
  double beta = 0.0;
  double operator()(double dim) const { return std::pow(dim, beta); }
};

}  // namespace seqode

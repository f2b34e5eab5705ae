#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "seqode/errors.hpp"

namespace seqode {

using Index = Eigen::Index;

/// Finitely supported sequence y^1..y^N of raw components. Components beyond
/// size() are zero.
template <class Scalar>
using TruncVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Vec = TruncVec<double>;

/// Closed-form summable weight family w_j, j >= 1.
class WeightRule {
 public:
  virtual ~WeightRule() = default;
  virtual double weight(Index j) const = 0;
  /// Certified upper bound on sum_{j>k} w_j^s (k >= 0).
  virtual double tail_power_sum(Index k, double s) const = 0;
  virtual std::string describe() const = 0;
};

/// w_j = j^{-q}.
class PowerWeights final : public WeightRule {
 public:
  explicit PowerWeights(double q);
  double q() const { return q_; }
  double weight(Index j) const override;
  double tail_power_sum(Index k, double s) const override;
  std::string describe() const override;

 private:
  double q_;
};

/// The weighted space ell_p^w with norm (sum |y^j|^p w_j^p)^{1/p}.
/// The natural basis e_j = (1/w_j) delta_j has basis constant 1.
class WeightedSpace {
 public:
  WeightedSpace(double p, std::shared_ptr<const WeightRule> weights);
  static WeightedSpace power(double p, double q = 1.0);

  double p() const { return p_; }
  double basis_constant() const { return 1.0; }
  const WeightRule& weights() const { return *weights_; }
  double weight(Index j) const { return weights_->weight(j); }

  /// w_j^p for j = 1..dim, in a vector indexed from 0.
  Vec weight_powers(Index dim) const;
  /// Certified upper bound on (sum_{j>k} w_j^p)^{1/p}.
  double tail_bound(Index k) const;
  /// Certified upper bound on W = (sum_j w_j^p)^{1/p}.
  double weight_norm() const;
  /// Certified upper bound on (sum_j w_j^{p'})^{1/p'}, p' = p/(p-1); the
  /// norm of the functional y -> sum_j w_j^2 y^j. Requires p > 1.
  double dual_weight_norm() const;

 private:
  double p_;
  std::shared_ptr<const WeightRule> weights_;
};

/// |x|^p with the common integer exponents done by multiplication.
inline double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  if (p == 4.0) return (a * a) * (a * a);
  return std::pow(a, p);
}

double norm(const WeightedSpace& space, const Vec& v);

/// Zero-padded norm of u - v.
double distance(const WeightedSpace& space, const Vec& u, const Vec& v);

double tail_bound(const WeightedSpace& space, Index k);

/// P_k v: keeps the first min(k, dim) components.
template <class Derived>
TruncVec<typename Derived::Scalar> project(const Eigen::MatrixBase<Derived>& v,
                                           Index k) {
  require(k >= 0, "project: k must be nonnegative");
  return v.head(std::min<Index>(k, v.size()));
}

/// Copy of v padded with zeros (or cut) to dimension dim.
template <class Derived>
TruncVec<typename Derived::Scalar> resized(const Eigen::MatrixBase<Derived>& v,
                                           Index dim) {
  TruncVec<typename Derived::Scalar> out =
      TruncVec<typename Derived::Scalar>::Zero(dim);
  const Index common = std::min(dim, v.size());
  out.head(common) = v.head(common);
  return out;
}

}  // namespace seqode

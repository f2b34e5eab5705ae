#pragma once

#include <vector>

#include "seqode/polynomial.hpp"

namespace seqode {

/// psi(x) = (1 - x^2)^{s+1} on [-1, 1], zero outside, s = max(r, 1).
/// C^s on the real line; psi and its first s derivatives vanish at +-1.
class BumpProfile {
 public:
  explicit BumpProfile(int r);

  int smoothness() const { return smoothness_; }
  double value(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;
  /// B_r >= max_{1<=j<=s} sup |psi^{(j)}|: grid maximum refined locally, plus 1%.
  double derivative_bound() const { return derivative_bound_; }
  /// Exact integral of psi over [-1, 1].
  double integral() const { return integral_; }

 private:
  int smoothness_;
  std::vector<CoeffRow<double>> derivatives_;
  double derivative_bound_ = 0.0;
  double integral_ = 0.0;
};

/// Shared, lazily built profile for smoothness r.
const BumpProfile& bump_profile(int r);

/// H(x) = height psi((x - center) / radius), supported on [lo, hi].
struct Bump {
  double lo = 0.0;
  double hi = 0.0;
  double height = 0.0;
  const BumpProfile* profile = nullptr;

  double center() const { return 0.5 * (lo + hi); }
  double radius() const { return 0.5 * (hi - lo); }
  /// Exactly zero for x <= lo or x >= hi.
  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;
  double integral() const { return height * radius() * profile->integral(); }
};

/// Bump of the given radius with height min(M1, D1 min_j radius^j / B_r),
/// j = 1..max(r, 1), so that sup|H| <= M1 and sup|H^{(j)}| <= D1.
Bump bump(int r, double center, double radius, double M1, double D1);

/// Sum of bumps with pairwise disjoint open supports, sorted by position.
class BumpTrain {
 public:
  BumpTrain() = default;
  explicit BumpTrain(std::vector<Bump> pieces);

  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;
  double integral() const;
  const std::vector<Bump>& pieces() const { return pieces_; }

 private:
  const Bump* locate(double x) const;
  std::vector<Bump> pieces_;
};

}  // namespace seqode

#include "seqode/space.hpp"

#include <cmath>
#include <sstream>

namespace seqode {

namespace {

// Number of explicitly summed terms before the integral tail takes over.
constexpr Index kExplicitTerms = Index{1} << 20;

double power_sum_bound(const WeightRule& w, double s) {
  double sum = 0.0;
  for (Index j = kExplicitTerms; j >= 1; --j) sum += std::pow(w.weight(j), s);
  return sum + w.tail_power_sum(kExplicitTerms, s);
}

}  // namespace

PowerWeights::PowerWeights(double q) : q_(q) {
  require(std::isfinite(q) && q > 0.0, "PowerWeights: q must be positive");
}

double PowerWeights::weight(Index j) const {
  return std::pow(static_cast<double>(j), -q_);
}

double PowerWeights::tail_power_sum(Index k, double s) const {
  const double e = q_ * s;
  if (!(e > 1.0)) {
    std::ostringstream msg;
    msg << "tail bound: q*p = " << e << " <= 1, weight tail diverges";
    throw ValidationError(msg.str());
  }
  require(k >= 0, "tail bound: k must be nonnegative");
  // sum_{j>k} j^{-e} <= int_k^inf x^{-e} dx; for k = 0 add the j = 1 term.
  if (k == 0) return 1.0 + 1.0 / (e - 1.0);
  return std::pow(static_cast<double>(k), 1.0 - e) / (e - 1.0);
}

std::string PowerWeights::describe() const {
  std::ostringstream out;
  out << "w_j = j^-" << q_;
  return out.str();
}

WeightedSpace::WeightedSpace(double p, std::shared_ptr<const WeightRule> weights)
    : p_(p), weights_(std::move(weights)) {
  require(std::isfinite(p) && p >= 1.0, "WeightedSpace: p must be >= 1");
  require(weights_ != nullptr, "WeightedSpace: missing weight rule");
  // Rejects non-summable families up front.
  (void)weights_->tail_power_sum(1, p_);
}

WeightedSpace WeightedSpace::power(double p, double q) {
  return WeightedSpace(p, std::make_shared<PowerWeights>(q));
}

Vec WeightedSpace::weight_powers(Index dim) const {
  Vec out(dim);
  for (Index j = 0; j < dim; ++j) out(j) = std::pow(weight(j + 1), p_);
  return out;
}

double WeightedSpace::tail_bound(Index k) const {
  return std::pow(weights_->tail_power_sum(k, p_), 1.0 / p_);
}

double WeightedSpace::weight_norm() const {
  return std::pow(power_sum_bound(*weights_, p_), 1.0 / p_);
}

double WeightedSpace::dual_weight_norm() const {
  require(p_ > 1.0, "dual weight norm requires p > 1");
  const double dual = p_ / (p_ - 1.0);
  return std::pow(power_sum_bound(*weights_, dual), 1.0 / dual);
}

double norm(const WeightedSpace& space, const Vec& v) {
  // Weights decay, so summing from the last component keeps small terms first.
  double sum = 0.0;
  for (Index j = v.size(); j >= 1; --j) {
    sum += abs_pow(v(j - 1), space.p()) * std::pow(space.weight(j), space.p());
  }
  return std::pow(sum, 1.0 / space.p());
}

double distance(const WeightedSpace& space, const Vec& u, const Vec& v) {
  const Index dim = std::max(u.size(), v.size());
  return norm(space, resized(u, dim) - resized(v, dim));
}

double tail_bound(const WeightedSpace& space, Index k) {
  require(k >= 1, "tail_bound: k must be positive");
  return space.tail_bound(k);
}

}  // namespace seqode

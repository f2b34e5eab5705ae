#include "seqode/bump.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace seqode {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Maximum of |p| on [-1, 1]: dense grid, then golden-section refinement
// around the best grid point.
double sup_abs(const CoeffRow<double>& p) {
  constexpr int kGrid = 1 << 16;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = -1.0 + 2.0 * i / kGrid;
    const double v = std::abs(polyval(p, x));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = std::max(-1.0, -1.0 + 2.0 * (best - 1) / kGrid);
  double hi = std::min(1.0, -1.0 + 2.0 * (best + 1) / kGrid);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double x1 = hi - ratio * (hi - lo);
    const double x2 = lo + ratio * (hi - lo);
    if (std::abs(polyval(p, x1)) > std::abs(polyval(p, x2))) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return std::max(best_value, std::abs(polyval(p, 0.5 * (lo + hi))));
}

}  // namespace

BumpProfile::BumpProfile(int r) : smoothness_(std::max(r, 1)) {
  require(r >= 0, "bump: smoothness must be nonnegative");
  const int power = smoothness_ + 1;
  CoeffRow<double> psi = CoeffRow<double>::Zero(2 * power + 1);
  for (int i = 0; i <= power; ++i) {
    psi(2 * i) = (i % 2 == 0 ? 1.0 : -1.0) * binomial(power, i);
  }
  derivatives_.push_back(psi);
  for (int j = 1; j <= smoothness_; ++j) {
    derivatives_.push_back(differentiate(derivatives_.back()));
  }
  double bound = 0.0;
  for (int j = 1; j <= smoothness_; ++j) bound = std::max(bound, sup_abs(derivatives_[j]));
  derivative_bound_ = 1.01 * bound;
  // int_{-1}^{1} (1 - x^2)^m dx = 2^{2m+1} (m!)^2 / (2m+1)!
  double integral = 2.0;
  for (int i = 1; i <= power; ++i) integral *= (2.0 * i) / (2.0 * i + 1.0);
  integral_ = integral;
}

double BumpProfile::derivative(double x, int order) const {
  require(order >= 0 && order <= smoothness_, "bump: derivative order out of range");
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return polyval(derivatives_[static_cast<std::size_t>(order)], x);
}

double Bump::derivative(double x, int order) const {
  if (x <= lo || x >= hi) return 0.0;
  const double rho = radius();
  return height * std::pow(rho, -order) * profile->derivative((x - center()) / rho, order);
}

const BumpProfile& bump_profile(int r) {
  require(r >= 0, "bump: smoothness must be nonnegative");
  static std::mutex guard;
  static std::map<int, BumpProfile> cache;
  const int s = std::max(r, 1);
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, BumpProfile(s)).first;
  return it->second;
}

Bump bump(int r, double center, double radius, double M1, double D1) {
  require(radius > 0.0, "bump: radius must be positive");
  require(M1 > 0.0 && D1 > 0.0, "bump: M1 and D1 must be positive");
  Bump out;
  out.profile = &bump_profile(r);
  out.lo = center - radius;
  out.hi = center + radius;
  const int s = out.profile->smoothness();
  const double smallest_power = std::min(radius, std::pow(radius, s));
  out.height = std::min(M1, D1 * smallest_power / out.profile->derivative_bound());
  return out;
}

BumpTrain::BumpTrain(std::vector<Bump> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Bump& x, const Bump& y) { return x.lo < y.lo; });
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    require(pieces_[i - 1].hi <= pieces_[i].lo, "bump train: supports overlap");
  }
}

const Bump* BumpTrain::locate(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Bump& b) { return v < b.lo; });
  if (it == pieces_.begin()) return nullptr;
  --it;
  return x < it->hi ? &*it : nullptr;
}

double BumpTrain::derivative(double x, int order) const {
  const Bump* piece = locate(x);
  return piece == nullptr ? 0.0 : piece->derivative(x, order);
}

double BumpTrain::integral() const {
  double sum = 0.0;
  for (const auto& piece : pieces_) sum += piece.integral();
  return sum;
}

}  // namespace seqode

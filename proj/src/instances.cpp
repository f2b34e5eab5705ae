#include "seqode/instances.hpp"

#include <algorithm>
#include <sstream>

#include "seqode/analysis.hpp"

namespace seqode {

namespace {

double first_raw(const Vec& y) { return y.size() > 0 ? y(0) : 0.0; }

// gamma(k) for w_j = j^{-q}, continuous in k.
Sequence power_tail(const WeightedSpace& space) {
  const auto* rule = dynamic_cast<const PowerWeights*>(&space.weights());
  require(rule != nullptr, "instance: needs power weights");
  const double p = space.p();
  const double e = p * rule->q();
  return [p, e](double k) { return std::pow(std::pow(k, 1.0 - e) / (e - 1.0), 1.0 / p); };
}

void require_lp(double p) {
  if (!(std::isfinite(p) && p > 1.0)) {
    std::ostringstream msg;
    msg << "instance: p = " << p << " must exceed 1";
    throw ValidationError(msg.str());
  }
}

ExactSolution constant_solution(Vec value, double tail) {
  ExactSolution exact;
  exact.component = [value](Index j, double) { return j <= value.size() ? value(j - 1) : 0.0; };
  exact.block = [value](double, Index first, Eigen::Ref<Vec> out) {
    for (Index i = 0; i < out.size(); ++i) {
      const Index j = first + i;
      out(i) = j <= value.size() ? value(j - 1) : 0.0;
    }
  };
  const Index support = value.size();
  exact.tail = [support, tail](Index dim, double) { return dim >= support ? 0.0 : tail; };
  return exact;
}

ProblemInstance<double> zero_instance(const std::string& label, const WeightedSpace& space,
                                      const ClassParams& params) {
  ProblemInstance<double> inst;
  inst.label = label;
  inst.space = space;
  inst.params = params;
  inst.component = [](Index, const Vec&) { return 0.0; };
  inst.block = [](const Vec&, Eigen::Ref<Vec> out) { out.setZero(); };
  inst.eta = [](Index) { return 0.0; };
  inst.eta_tail = [](Index) { return 0.0; };
  inst.exact = constant_solution(Vec(), 0.0);
  inst.class_member = true;
  return inst;
}

}  // namespace

void exact_block(const ExactSolution& exact, double t, Index first, Eigen::Ref<Vec> out) {
  if (exact.block) {
    exact.block(t, first, out);
    return;
  }
  for (Index i = 0; i < out.size(); ++i) out(i) = exact.component(first + i, t);
}

double lp_radius(const WeightedSpace& space) {
  const double W = space.weight_norm();
  return radius_R(W, W, space.tail_bound(1), space.basis_constant(), 0.0, 1.0);
}

ClassParams lp_class_params(const WeightedSpace& space) {
  ClassParams params;
  const double W = space.weight_norm();
  params.L = W;
  params.M = W;
  params.D = W;
  params.r = 1;
  params.a = 0.0;
  params.b = 1.0;
  params.gamma = power_tail(space);
  const double R = radius_R(W, W, params.gamma(1.0), space.basis_constant(), params.a, params.b);
  params.delta = [gamma = params.gamma, R](double k) { return 2.0 * R * gamma(k); };
  return params;
}

double lp_sin_first_component(double t) {
  return 2.0 * std::atan(std::exp(t) * std::tan(0.5));
}

ProblemInstance<double> make_lp_sin(double p) {
  require_lp(p);
  ProblemInstance<double> inst;
  inst.label = "lp_sin";
  inst.space = WeightedSpace::power(p);
  inst.params = lp_class_params(inst.space);
  inst.component = [](Index, const Vec& y) { return std::sin(first_raw(y)); };
  inst.block = [](const Vec& y, Eigen::Ref<Vec> out) { out.setConstant(std::sin(first_raw(y))); };
  inst.eta = [](Index) { return 1.0; };
  inst.eta_tail = [space = inst.space](Index k) { return space.tail_bound(k); };
  ExactSolution exact;
  // eta^j = eta^1 for every j, so every component follows z^1.
  exact.component = [](Index, double t) { return lp_sin_first_component(t); };
  exact.block = [](double t, Index, Eigen::Ref<Vec> out) {
    out.setConstant(lp_sin_first_component(t));
  };
  exact.tail = [space = inst.space](Index dim, double t) {
    return std::abs(lp_sin_first_component(t)) * space.tail_bound(dim);
  };
  inst.exact = exact;
  inst.class_member = true;
  return inst;
}

ProblemInstance<double> make_lp_coupled(double p) {
  require_lp(p);
  ProblemInstance<double> inst;
  inst.label = "lp_coupled";
  inst.space = WeightedSpace::power(p);
  inst.params = lp_class_params(inst.space);
  const double c = inst.space.dual_weight_norm();
  auto argument = [space = inst.space, c](const Vec& y) {
    double sum = 0.0;
    for (Index i = y.size(); i >= 1; --i) {
      const double w = space.weight(i);
      sum += w * w * y(i - 1);
    }
    return sum / c;
  };
  inst.component = [argument](Index, const Vec& y) { return std::sin(argument(y)); };
  inst.block = [argument](const Vec& y, Eigen::Ref<Vec> out) {
    out.setConstant(std::sin(argument(y)));
  };
  inst.eta = [](Index) { return 1.0; };
  inst.eta_tail = [space = inst.space](Index k) { return space.tail_bound(k); };
  inst.class_member = true;
  return inst;
}

ErrorConstants lp_sin_euler_constants(double p) {
  require_lp(p);
  const WeightedSpace space = WeightedSpace::power(p);
  const double W = space.weight_norm();
  // z^1 increases on [0, 1]; |z''| = |sin(2z)| / 2 <= 1/2; sin is 1-Lipschitz.
  const double z_max = lp_sin_first_component(1.0);
  const double L = 1.0;
  const double length = 1.0;
  ErrorConstants out;
  out.A = z_max / std::pow(p - 1.0, 1.0 / p);
  out.B = W * std::expm1(L * length) * 0.5 * length / (2.0 * L);
  return out;
}

ProblemInstance<double> make_finite_coupled(Index support) {
  require(support >= 1, "finite instance: support must be positive");
  ProblemInstance<double> inst;
  inst.label = "finite";
  inst.space = WeightedSpace::power(2.0);
  ClassParams params;
  params.L = 1.5 * std::max<double>(1.0, static_cast<double>(support));
  params.M = 2.0 * inst.space.weight_norm();
  params.D = params.L;
  params.gamma = [space = inst.space](double k) { return space.tail_bound(static_cast<Index>(k)); };
  params.delta = params.gamma;
  inst.params = params;
  inst.component = [support](Index j, const Vec& y) {
    if (j > support) return 0.0;
    const Index source = j % support + 1;
    const double ys = source <= y.size() ? y(source - 1) : 0.0;
    const double yj = j <= y.size() ? y(j - 1) : 0.0;
    return std::sin(ys) - 0.5 * yj;
  };
  inst.block = [component = inst.component](const Vec& y, Eigen::Ref<Vec> out) {
    for (Index j = 0; j < out.size(); ++j) out(j) = component(j + 1, y);
  };
  inst.eta = [support](Index j) { return j <= support ? 1.0 / static_cast<double>(j) : 0.0; };
  inst.eta_tail = [space = inst.space](Index k) { return space.tail_bound(k); };
  inst.class_member = false;
  return inst;
}

AdversarialPair make_case1(const WeightedSpace& space, Index N, const ClassParams& base) {
  require(N >= 1, "case I: N must be positive");
  validate(base);
  const double gap = base.gamma(static_cast<double>(N));
  Vec eta = Vec::Zero(N + 1);
  eta(N) = gap / space.weight(N + 1);

  AdversarialPair pair{zero_instance("case1", space, base),
                       zero_instance("case1", space, base), 0.0, 0, {}, {}};
  auto& first = pair.first;
  first.eta = [eta](Index j) { return j <= eta.size() ? eta(j - 1) : 0.0; };
  first.eta_tail = [N, gap](Index k) { return k <= N ? gap : 0.0; };
  first.exact = constant_solution(eta, gap);
  pair.guaranteed_gap = gap;
  pair.indistinguishable_dim = N;
  return pair;
}

AdversarialPair make_case2(const WeightedSpace& space, Index N, const ClassParams& base) {
  require(N >= 1, "case II: N must be positive");
  validate(base);
  const double level = base.delta(static_cast<double>(N));
  if (level > base.M) {
    std::ostringstream msg;
    msg << "case II: delta(" << N << ") = " << level << " exceeds M = " << base.M;
    throw ValidationError(msg.str());
  }
  const double raw = level / space.weight(N + 1);
  AdversarialPair pair{zero_instance("case2", space, base),
                       zero_instance("case2", space, base), 0.0, 0, {}, {}};
  auto& first = pair.first;
  first.component = [N, raw](Index j, const Vec&) { return j == N + 1 ? raw : 0.0; };
  first.block = [N, raw](const Vec&, Eigen::Ref<Vec> out) {
    out.setZero();
    if (out.size() > N) out(N) = raw;
  };
  ExactSolution exact;
  const double a = base.a;
  exact.component = [N, raw, a](Index j, double t) { return j == N + 1 ? (t - a) * raw : 0.0; };
  exact.block = [N, raw, a](double t, Index first_index, Eigen::Ref<Vec> out) {
    out.setZero();
    const Index at = N + 1 - first_index;
    if (at >= 0 && at < out.size()) out(at) = (t - a) * raw;
  };
  exact.tail = [N, level, a](Index dim, double t) { return dim > N ? 0.0 : (t - a) * level; };
  first.exact = exact;
  pair.guaranteed_gap = base.length() * level;
  pair.indistinguishable_dim = N;
  return pair;
}

Case3Bounds default_case3_bounds(const ClassParams& base) {
  const double scale = 0.1 * std::min({base.L, base.M, base.D});
  return {scale, scale, scale};
}

ProblemInstance<double> make_case3_base(const WeightedSpace& space, double A,
                                        const ClassParams& base) {
  require(A > 0.0, "case III: A must be positive");
  require(A <= base.M, "case III: A exceeds M");
  require(space.weight(1) == 1.0, "case III: needs w_1 = 1");
  validate(base);
  ProblemInstance<double> inst = zero_instance("case3", space, base);
  inst.component = [A](Index j, const Vec&) { return j == 1 ? A : 0.0; };
  inst.block = [A](const Vec&, Eigen::Ref<Vec> out) {
    out.setZero();
    if (out.size() > 0) out(0) = A;
  };
  ExactSolution exact;
  const double a = base.a;
  exact.component = [A, a](Index j, double t) { return j == 1 ? A * (t - a) : 0.0; };
  exact.block = [A, a](double t, Index first, Eigen::Ref<Vec> out) {
    out.setZero();
    if (first == 1 && out.size() > 0) out(0) = A * (t - a);
  };
  exact.tail = [](Index, double) { return 0.0; };
  inst.exact = exact;
  return inst;
}

AdversarialPair make_case3(const WeightedSpace& space, std::vector<double> trace, double A,
                           const ClassParams& base, const Case3Bounds& bounds,
                           Index max_points) {
  require(bounds.M1 > 0.0 && bounds.L1 > 0.0 && bounds.D1 > 0.0,
          "case III: M1, L1, D1 must be positive");
  require(A + bounds.M1 <= base.M, "case III: A + M1 exceeds M");
  require(bounds.L1 <= base.L, "case III: L1 exceeds L");
  const double D1 = std::min(bounds.D1, bounds.L1);
  require(D1 <= base.D, "case III: D1 exceeds D");

  AdversarialPair pair{make_case3_base(space, A, base),
                       make_case3_base(space, A, base), 0.0, 0, {}, {}};
  const double lo = 0.0;  // eta^1
  const double hi = A * base.length();
  require(lo < hi, "case III: empty interval");

  for (double x : trace) require(std::isfinite(x), "case III: non-finite trace point");
  std::sort(trace.begin(), trace.end());
  trace.erase(std::unique(trace.begin(), trace.end()), trace.end());
  if (max_points > 0 && static_cast<Index>(trace.size()) > max_points) {
    std::ostringstream msg;
    msg << "case III: trace has " << trace.size() << " distinct points, more than " << max_points;
    throw ValidationError(msg.str());
  }

  std::vector<double> cuts{lo};
  for (double x : trace) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  cuts.push_back(hi);

  const BumpProfile& profile = bump_profile(base.r);
  const int s = profile.smoothness();
  const double min_width = 1e-12 * (hi - lo);
  std::vector<Bump> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= min_width) continue;
    Bump piece;
    piece.lo = cuts[i];
    piece.hi = cuts[i + 1];
    piece.profile = &profile;
    const double rho = piece.radius();
    piece.height = std::min(bounds.M1, D1 * std::min(rho, std::pow(rho, s)) / profile.derivative_bound());
    pieces.push_back(piece);
  }
  pair.perturbation = BumpTrain(std::move(pieces));

  auto& second = pair.second;
  second.component = [A, H = pair.perturbation](Index j, const Vec& y) {
    return j == 1 ? A + H(first_raw(y)) : 0.0;
  };
  second.block = [A, H = pair.perturbation](const Vec& y, Eigen::Ref<Vec> out) {
    out.setZero();
    if (out.size() > 0) out(0) = A + H(first_raw(y));
  };
  second.exact.reset();

  // int_a^b H(A (xi - a) + eta^1) d xi = (1/A) int H.
  pair.guaranteed_gap =
      pair.perturbation.integral() / A / (1.0 + base.L * base.length());
  pair.trace = std::move(trace);
  return pair;
}

}  // namespace seqode

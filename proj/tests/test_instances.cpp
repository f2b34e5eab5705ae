#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "seqode/analysis.hpp"
#include "seqode/instances.hpp"

using namespace seqode;

namespace {

// Classical RK4 for z' = sin z, z(0) = 1.
double rk4_sin(double t_end, int steps) {
  double z = 1.0;
  const double h = t_end / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1 = std::sin(z);
    const double k2 = std::sin(z + 0.5 * h * k1);
    const double k3 = std::sin(z + 0.5 * h * k2);
    const double k4 = std::sin(z + h * k3);
    z += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
  }
  return z;
}

Vec eval(const ProblemInstance<double>& inst, const Vec& y, Index dim) {
  Vec out(dim);
  evaluate<double>(inst, y, out);
  return out;
}

}  // namespace

TEST_CASE("lp_sin right-hand side and exact solution") {
  const auto inst = make_lp_sin(2.0);
  CHECK(inst.class_member);
  CHECK(inst.component(5, Vec::Zero(1)) == 0.0);
  CHECK(inst.params.gamma(4) == doctest::Approx(0.5));
  const double z1 = lp_sin_first_component(1.0);
  CHECK(z1 == doctest::Approx(2.0 * std::atan(std::numbers::e * std::tan(0.5))).epsilon(1e-15));
  CHECK(z1 == doctest::Approx(rk4_sin(1.0, 20000)).epsilon(1e-12));
  CHECK(z1 == doctest::Approx(1.95629).epsilon(1e-5));
  // Residual of z' = sin z by central differences.
  for (double t : {0.1, 0.5, 0.9}) {
    const double h = 1e-5;
    const double dz = (lp_sin_first_component(t + h) - lp_sin_first_component(t - h)) / (2 * h);
    CHECK(dz == doctest::Approx(std::sin(lp_sin_first_component(t))).epsilon(1e-8));
  }
  CHECK(inst.exact->component(7, 1.0) == z1);
  Vec block(3);
  exact_block(*inst.exact, 0.4, 2, block);
  CHECK(block(2) == lp_sin_first_component(0.4));
  CHECK(inst.exact->tail(4, 1.0) == doctest::Approx(z1 * 0.5));
}

TEST_CASE("lp class parameters") {
  const auto space = WeightedSpace::power(2.0);
  const ClassParams c = lp_class_params(space);
  const double W = std::numbers::pi / std::sqrt(6.0);
  CHECK(c.L == doctest::Approx(W).epsilon(1e-9));
  CHECK(c.M == c.L);
  CHECK(c.gamma(1.0) == doctest::Approx(1.0));
  const double R = lp_radius(space);
  CHECK(R == doctest::Approx(radius_R(c.L, c.M, 1.0, 1.0, 0.0, 1.0)));
  CHECK(c.delta(4.0) == doctest::Approx(2.0 * R * 0.5));
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("lp_coupled is zero at zero and Lipschitz with constant 1") {
  const auto inst = make_lp_coupled(2.0);
  CHECK(eval(inst, Vec::Zero(16), 16).isZero(0.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::uniform_int_distribution<Index> length(1, 64);
  for (int trial = 0; trial < 1000; ++trial) {
    Vec y(length(rng)), z(length(rng));
    for (Index j = 0; j < y.size(); ++j) y(j) = value(rng);
    for (Index j = 0; j < z.size(); ++j) z(j) = value(rng);
    CHECK(std::abs(inst.component(1, y) - inst.component(1, z)) <= distance(inst.space, y, z) + 1e-14);
  }
  // Block and component rules agree.
  Vec y(20);
  for (Index j = 0; j < 20; ++j) y(j) = value(rng);
  const Vec block = eval(inst, y, 20);
  for (Index j = 0; j < 20; ++j) CHECK(block(j) == doctest::Approx(inst.component(j + 1, y)).epsilon(1e-15));
}

TEST_CASE("decoupled linear instance") {
  const auto inst = make_decoupled_linear<double>(1.0);
  CHECK(inst.exact->component(3, 1.0) == doctest::Approx(0.3678794).epsilon(1e-7));
  const auto still = make_decoupled_linear<double>(0.0);
  CHECK(still.exact->component(3, 0.7) == 1.0);
  CHECK_FALSE(inst.class_member);
}

TEST_CASE("finite instance is supported on its first components") {
  const auto inst = make_finite_coupled(4);
  Vec y(6);
  y << 0.5, -0.2, 0.3, 0.1, 9.0, 9.0;
  const Vec f = eval(inst, y, 6);
  CHECK(f(0) == doctest::Approx(std::sin(-0.2) - 0.25));
  CHECK(f(3) == doctest::Approx(std::sin(0.5) - 0.05));
  CHECK(f(4) == 0.0);
  CHECK(f(5) == 0.0);
  CHECK(inst.eta(2) == 0.5);
  CHECK(inst.eta(5) == 0.0);
}

TEST_CASE("case I: equal information, gap gamma(N)") {
  const auto space = WeightedSpace::power(2.0);
  const ClassParams base = lp_class_params(space);
  const auto pair = make_case1(space, 4, base);
  CHECK(pair.guaranteed_gap == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(initial_value(pair.first, 4).isZero(0.0));
  CHECK(initial_value(pair.second, 4).isZero(0.0));
  CHECK(make_case1(space, 1, base).guaranteed_gap == doctest::Approx(1.0));
  Vec u(5), v(5);
  exact_block(*pair.first.exact, 0.3, 1, u);
  exact_block(*pair.second.exact, 0.3, 1, v);
  CHECK(distance(space, u, v) == doctest::Approx(0.5));
}

TEST_CASE("case II: gap (b - a) delta(N), solution linear in t") {
  const auto space = WeightedSpace::power(2.0);
  const ClassParams base = lp_class_params(space);
  CHECK_THROWS_AS(make_case2(space, 4, base), ValidationError);
  const Index N = 16384;
  const auto pair = make_case2(space, N, base);
  CHECK(pair.guaranteed_gap == doctest::Approx(base.delta(static_cast<double>(N))));
  Vec y = Vec::Random(N);
  CHECK(eval(pair.first, y, N).isZero(0.0));
  CHECK(eval(pair.second, y, N).isZero(0.0));
  const double slope = base.delta(static_cast<double>(N)) / space.weight(N + 1);
  CHECK(pair.first.exact->component(N + 1, 0.5) == doctest::Approx(0.5 * slope));
  CHECK(pair.first.exact->component(N, 0.5) == 0.0);
}

TEST_CASE("case III bumps vanish at every trace point") {
  const auto space = WeightedSpace::power(2.0);
  ClassParams base = lp_class_params(space);
  base.r = 2;
  const double A = kDefaultCase3Slope;
  std::vector<double> trace;
  for (int i = 0; i <= 40; ++i) trace.push_back(A * i / 40.0);
  const auto pair = make_case3(space, trace, A, base, default_case3_bounds(base));
  CHECK(pair.guaranteed_gap > 0.0);
  for (double x : trace) {
    CHECK(pair.perturbation(x) == 0.0);
    Vec y(1);
    y << x;
    CHECK(pair.first.component(1, y) == pair.second.component(1, y));
  }
  Vec mid(1);
  mid << A * 0.5 / 40.0;
  CHECK(pair.second.component(1, mid) > pair.first.component(1, mid));
  CHECK_THROWS_AS(make_case3(space, trace, A, base, default_case3_bounds(base), 10), ValidationError);
}

TEST_CASE("case III gap scales like the trace spacing to the power m") {
  const auto space = WeightedSpace::power(2.0);
  for (int r : {1, 2}) {
    ClassParams base = lp_class_params(space);
    base.r = r;
    const double A = kDefaultCase3Slope;
    auto gap = [&](int s) {
      std::vector<double> trace;
      for (int i = 0; i <= s; ++i) trace.push_back(A * i / s);
      return make_case3(space, trace, A, base, default_case3_bounds(base)).guaranteed_gap;
    };
    const double ratio = gap(64) / gap(128);
    CHECK(ratio == doctest::Approx(std::pow(2.0, std::max(r, 1))).epsilon(0.05));
  }
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "seqode/analysis.hpp"
#include "seqode/instances.hpp"

using namespace seqode;

namespace {

ClassParams power_params(int r) {
  ClassParams c;
  c.L = 1.0;
  c.M = 1.0;
  c.D = 1.0;
  c.r = r;
  c.gamma = [](double k) { return 1.0 / std::sqrt(k); };
  c.delta = [](double k) { return 2.0 / std::sqrt(k); };
  return c;
}

}  // namespace

TEST_CASE("radius formula") {
  // max((M/L)(e^{L(b-a)} - 1), 2 e^{2PL(b-a)} (b-a) P (L gamma1 + M) + gamma1)
  const double L = 1.3, M = 0.7, g = 0.9, P = 1.0;
  const double want = std::max(M / L * (std::exp(L) - 1.0), 2 * std::exp(2 * P * L) * P * (L * g + M) + g);
  CHECK(radius_R(L, M, g, P, 0.0, 1.0) == doctest::Approx(want).epsilon(1e-15));
  CHECK(radius_R(L, M, g, P, 0.0, 2.0) >= radius_R(L, M, g, P, 0.0, 1.0));
  // Small L: the first term tends to M (b - a) and stays finite.
  const double tiny = radius_R(1e-12, 2.0, 1e-9, 1.0, 0.0, 3.0);
  CHECK(std::isfinite(tiny));
  CHECK(tiny >= 2.0 * 3.0);
}

TEST_CASE("lp radius and constants A, B") {
  const auto space = WeightedSpace::power(2.0);
  const double W = space.weight_norm();
  const double R = lp_radius(space);
  CHECK(R == doctest::Approx(2 * std::exp(2 * W) * (W * 1.0 + W) + 1.0).epsilon(1e-12));
  CHECK(R == doctest::Approx(67.70).epsilon(1e-3));
  const auto AB = constants_AB(2.0, R, W);
  CHECK(AB.A == doctest::Approx((2 * R + 1) * std::exp(W) / std::pow(1.0, 0.5)));
  CHECK(AB.B == doctest::Approx(W * (R + 1) * (3 * std::exp(W) - 2)));
  CHECK(AB.A > 0.0);
  CHECK(AB.B > 0.0);
  CHECK(constants_AB(2.0, R + 1, W).A > AB.A);
  CHECK(constants_AB(2.0, R, W + 0.1).B > AB.B);
}

TEST_CASE("bound report terms on a uniform mesh") {
  const ClassParams c = power_params(2);
  const Index n = 8, N = 16;
  const Mesh mesh = Mesh::uniform(0.0, 1.0, n);
  const auto report = theorem1_bound(c, mesh, TruncationSchedule::constant(n, N));
  CHECK(report.initial_term == doctest::Approx(0.25));
  CHECK(report.truncation_term == doctest::Approx(0.5));
  CHECK(report.discretization_term == doctest::Approx(std::pow(1.0 / n, 2)));
  CHECK(report.total_without_C == doctest::Approx(0.25 + 0.5 + 1.0 / 64));

  const auto one = theorem1_bound(c, Mesh::uniform(0.0, 1.0, 1), TruncationSchedule::constant(1, N));
  CHECK(one.discretization_term == doctest::Approx(1.0));

  const auto finer = theorem1_bound(c, Mesh::uniform(0.0, 1.0, 2 * n), TruncationSchedule::constant(2 * n, N));
  CHECK(finer.truncation_term == doctest::Approx(report.truncation_term));
  CHECK(finer.discretization_term == doctest::Approx(report.discretization_term / 4));
}

TEST_CASE("generalized inverse") {
  auto g = [](double k) { return 1.0 / std::sqrt(k); };
  CHECK(generalized_inverse(g, 0.01) == 10000);
  CHECK(generalized_inverse(g, 0.0099) == 10204);  // 1 / 0.0099^2 = 10203.04
  CHECK_THROWS_AS(generalized_inverse(g, 0.0), ValidationError);
  CHECK_THROWS_AS(generalized_inverse(g, 2.0), ValidationError);
}

TEST_CASE("prop1 plans") {
  ClassParams c = power_params(2);
  const auto plan = optimize_prop1(1e-4, c, uniform_alpha(c), PowerCost{}, 1.0, false);
  CHECK(plan.n == 100);
  const auto report = theorem1_bound(c, Mesh::uniform(0.0, 1.0, plan.n), TruncationSchedule::constant(plan.n, plan.N));
  CHECK(report.initial_term <= 1e-4);
  CHECK(report.discretization_term <= 1e-4 * (1 + 1e-12));
  CHECK(report.truncation_term <= 1e-4 * (1 + 1e-12));
  const auto thirds = optimize_prop1(1e-2, c, uniform_alpha(c), PowerCost{}, 1.0, true);
  const auto t3 = theorem1_bound(c, Mesh::uniform(0.0, 1.0, thirds.n), TruncationSchedule::constant(thirds.n, thirds.N));
  CHECK(t3.total_without_C <= 1e-2 * (1 + 1e-12));
  const auto huge = optimize_prop1(100.0, c, uniform_alpha(c), PowerCost{}, 1.0, false);
  CHECK(huge.n == 1);
  CHECK(huge.N == 1);
}

TEST_CASE("grid optimum is feasible, minimal, and beats rounded prop1 plans") {
  const ClassParams c = power_params(1);
  const PlanBound bound = equal_dim_bound(c);
  const PowerCost cost{1.0};
  for (double eps : {0.5, 0.1, 0.03}) {
    const auto plan = optimize_grid(eps, bound, cost, {16, 24});
    REQUIRE(plan.feasible);
    CHECK(bound(plan.n, plan.N) <= eps);
    // Brute force over the same grid.
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= 16; ++a) {
      for (int b = 0; b <= 24; ++b) {
        const Index n = Index{1} << a, N = Index{1} << b;
        if (bound(n, N) <= eps) best = std::min(best, n * cost(N) * N);
      }
    }
    CHECK(plan.predicted_cost == best);
    const auto prop = optimize_prop1(eps, c, uniform_alpha(c), cost, 1.0, true);
    auto up = [](Index x) { return Index{1} << static_cast<int>(std::ceil(std::log2(static_cast<double>(x)))); };
    const Index n2 = up(prop.n), N2 = up(prop.N);
    CHECK(plan.predicted_cost <= n2 * cost(N2) * N2);
  }
  const auto easy = optimize_grid(1e3, bound, cost);
  CHECK(easy.n == 1);
  CHECK(easy.N == 1);
  const auto impossible = optimize_grid(1e-9, bound, cost, {4, 4});
  CHECK_FALSE(impossible.feasible);
  CHECK(impossible.n == 0);
}

TEST_CASE("closed-form plans") {
  const double A = 491.85, B = 776.95;
  const auto plan = lp_closed_form(1.0 / 64, 2.0, 1.0, A, B);
  CHECK(plan.n == static_cast<Index>(std::ceil(5 * B * 64)));
  const double root = std::ceil(1.25 * A * 64);
  CHECK(plan.N == static_cast<Index>(root * root));
  CHECK(lp_cost_exponent(2.0, 1.0) == 5.0);
  CHECK(lp_cost_exponent(2.0, 0.0) == 3.0);
  for (int e = 4; e <= 12; ++e) {
    const double eps = std::ldexp(1.0, -e);
    const auto p = lp_closed_form(eps, 2.0, 1.0, A, B);
    CHECK(A / std::sqrt(static_cast<double>(p.N)) + B / static_cast<double>(p.n) <= eps);
  }
  const double ratio = lp_closed_form(std::ldexp(1.0, -10), 2.0, 1.0, A, B).predicted_cost /
                       lp_closed_form(std::ldexp(1.0, -9), 2.0, 1.0, A, B).predicted_cost;
  CHECK(ratio == doctest::Approx(32.0).epsilon(0.1));
}

TEST_CASE("grid cost follows eps^-5 for p = 2, beta = 1") {
  const auto space = WeightedSpace::power(2.0);
  const auto AB = constants_AB(2.0, lp_radius(space), space.weight_norm());
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int e = 4; e <= 10; ++e) {
    const double eps = std::ldexp(1.0, -e);
    const auto plan = optimize_grid(eps, lp_bound(2.0, AB.A, AB.B), PowerCost{1.0}, {30, 50});
    REQUIRE(plan.feasible);
    const double scaled = plan.predicted_cost * std::pow(eps, 5.0);
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi / lo <= 4.0);
}

TEST_CASE("order fit") {
  std::vector<double> n{10, 20, 40, 80};
  std::vector<double> quad, flat, euler;
  for (double x : n) {
    quad.push_back(3.0 / (x * x));
    flat.push_back(0.2);
    euler.push_back(std::abs(std::exp(-1.0) - std::pow(1.0 - 1.0 / x, x)));
  }
  CHECK(fit_order(n, quad).slope == doctest::Approx(2.0));
  CHECK(fit_order(n, flat).slope == doctest::Approx(0.0));
  const auto fit = fit_order(n, euler);
  CHECK(fit.slope >= 0.95);
  CHECK(fit.slope <= 1.05);
  CHECK(fit.local.size() == 3);
  CHECK_THROWS_AS(fit_order({1.0}, {1.0}), ValidationError);
}

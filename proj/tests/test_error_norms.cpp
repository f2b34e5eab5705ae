#include <doctest.h>

#include <cmath>

#include "seqode/error_norms.hpp"

using namespace seqode;

TEST_CASE("Lobatto samples") {
  const auto taus = lobatto_samples(5);
  REQUIRE(taus.size() == 5);
  CHECK(taus.front() == 0.0);
  CHECK(taus.back() == 1.0);
  CHECK(taus[2] == doctest::Approx(0.5));
  CHECK(taus[1] + taus[3] == doctest::Approx(1.0));
  CHECK_THROWS_AS(lobatto_samples(1), ValidationError);
}

TEST_CASE("Euler error on y' = -y against closed forms") {
  const auto inst = make_decoupled_linear<double>(1.0);
  const auto run = solve(inst, Mesh::uniform(0.0, 1.0, 100), TruncationSchedule::constant(100, 1), 1, PowerCost{});
  const double at_end = std::abs(std::exp(-1.0) - std::pow(0.99, 100));
  CHECK(at_end == doctest::Approx(0.0018471).epsilon(1e-4));
  const double err = sup_error(run.trajectory, inst, {8, ErrorScope::computed});
  CHECK(err >= at_end * (1 - 1e-12));
  // The sup over [0, 1] of |e^{-t} - Euler| is attained near the end for this problem.
  CHECK(err == doctest::Approx(at_end).epsilon(0.05));
}

TEST_CASE("full scope adds exactly the tail when the computed part is exact") {
  const auto inst = make_lp_sin(2.0);
  // A solve with f = 0 on top of eta = 1 has error z - 1; instead compare scopes.
  const auto run = solve(inst, Mesh::uniform(0.0, 1.0, 32), TruncationSchedule::constant(32, 16), 2, PowerCost{});
  const double computed = sup_error(run.trajectory, inst, {8, ErrorScope::computed});
  const double full = sup_error(run.trajectory, inst, {8, ErrorScope::full});
  CHECK(full > computed);
  const double z1 = lp_sin_first_component(1.0);
  CHECK(full <= std::pow(std::pow(computed, 2) + std::pow(z1 * inst.space.tail_bound(16), 2), 0.5) * (1 + 1e-12) +
                    1e-12);
}

TEST_CASE("more samples never lower the sup") {
  const auto inst = make_lp_sin(2.0);
  const auto run = solve(inst, Mesh::uniform(0.0, 1.0, 16), TruncationSchedule::constant(16, 64), 0, PowerCost{});
  // Lobatto sets for k and 2k - 1 points are nested.
  const double coarse = sup_error(run.trajectory, inst, {3, ErrorScope::full});
  const double fine = sup_error(run.trajectory, inst, {5, ErrorScope::full});
  CHECK(fine >= coarse);
}

TEST_CASE("streamed monitor agrees with the stored trajectory") {
  const auto inst = make_lp_sin(4.0);
  const Mesh mesh = Mesh::uniform(0.0, 1.0, 24);
  const auto sched = TruncationSchedule::linear(24, 100, 5000);
  ErrorMonitor monitor(inst, {6, ErrorScope::full});
  SolveOptions<double> options;
  options.observer = [&](Index, const Segment<double>& seg) { monitor.observe(seg); };
  const auto run = solve(inst, mesh, sched, 1, PowerCost{}, options);
  CHECK(monitor.sup_error() == doctest::Approx(sup_error(run.trajectory, inst, {6, ErrorScope::full})).epsilon(1e-14));
  CHECK(monitor.ball_excursion() ==
        doctest::Approx(ball_excursion(run.trajectory, inst, {6, ErrorScope::full})).epsilon(1e-14));
  CHECK(monitor.samples_taken() == 24 * 6);
}

TEST_CASE("ball excursion of a constant trajectory is the eta tail") {
  auto inst = make_decoupled_linear<double>(0.0);
  const auto run = solve(inst, Mesh::uniform(0.0, 1.0, 4), TruncationSchedule::constant(4, 8), 1, PowerCost{});
  // l(t) = P_8 eta, so ||l - eta|| is bounded by the certified tail of eta.
  CHECK(ball_excursion(run.trajectory, inst, {4, ErrorScope::computed}) == doctest::Approx(inst.eta_tail(8)));
}

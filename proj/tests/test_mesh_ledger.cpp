#include <doctest.h>

#include <cmath>

#include "seqode/ledger.hpp"
#include "seqode/mesh.hpp"

using namespace seqode;

TEST_CASE("uniform mesh") {
  const Mesh mesh = Mesh::uniform(0.0, 1.0, 4);
  CHECK(mesh.intervals() == 4);
  CHECK(mesh.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(mesh.alpha() == 0.25);
  CHECK(mesh.uniformity_constant() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Mesh::uniform(0.0, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(Mesh::uniform(1.0, 0.0, 3), ValidationError);
  CHECK_THROWS_AS(Mesh({0.0, 0.5, 0.4, 1.0}, 1.0), ValidationError);
  CHECK_THROWS_AS(Mesh({0.0, 0.9, 1.0}, 0.5), ValidationError);
}

TEST_CASE("graded mesh keeps its steps below alpha") {
  for (double sigma : {1.0, 1.5, 2.0}) {
    const Mesh mesh = graded_mesh(0.0, 2.0, 50, sigma);
    CHECK(mesh.point(0) == 0.0);
    CHECK(mesh.point(50) == 2.0);
    CHECK(mesh.alpha() == doctest::Approx(sigma * 2.0 / 50));
    CHECK(mesh.max_step() <= mesh.alpha() * (1 + 1e-12));
    CHECK(mesh.point(10) == doctest::Approx(2.0 * std::pow(0.2, sigma)));
  }
  CHECK_THROWS_AS(graded_mesh(0.0, 1.0, 10, 2.5), ValidationError);
}

TEST_CASE("truncation schedules") {
  const auto constant = TruncationSchedule::constant(3, 8);
  CHECK(constant.dims() == std::vector<Index>{8, 8, 8, 8});
  CHECK(constant.is_constant());
  const auto linear = TruncationSchedule::linear(4, 2, 10);
  CHECK(linear.initial_dim() == 2);
  CHECK(linear.dim(3) == 10);
  CHECK_FALSE(linear.is_constant());
  const TruncationSchedule falling({5, 3, 9, 2});
  CHECK(falling.arg_dims() == std::vector<Index>{5, 9, 9});
  CHECK(falling.max_dim() == 9);
  CHECK_THROWS_AS(TruncationSchedule({4, 0}), ValidationError);
}

TEST_CASE("ledger totals") {
  CostLedger ledger(PowerCost{1.0});
  ledger.begin_step(4);
  ledger.add_evaluations(0.5, 3);
  ledger.add_evaluations(0.7, 3);
  ledger.begin_step(8);
  ledger.add_evaluations(0.9, 8);
  CHECK(ledger.steps() == 2);
  CHECK(ledger.evaluations() == std::vector<Index>{6, 8});
  CHECK(ledger.scalar_evaluations() == 14);
  CHECK(ledger.information_points() == 3);
  // sum c(M_k) l_k with c(N) = N
  CHECK(ledger.total() == doctest::Approx(4.0 * 6 + 8.0 * 8));
  CHECK_FALSE(ledger.recording());
}

TEST_CASE("ledger trace and digest") {
  CostLedger a(PowerCost{}, true, 2);
  CostLedger b(PowerCost{}, true, 2);
  for (auto* l : {&a, &b}) {
    l->begin_step(2);
    l->add_evaluations(0.25, 2);
    l->add_evaluations(0.25, 1);
  }
  const std::vector<double> values{1.0, 2.0};
  a.mix_values(values);
  b.mix_values(values);
  CHECK(a.information_digest() == b.information_digest());
  // One entry per information point, carrying its evaluation count.
  CHECK(a.trace().size() == 2);
  CHECK(a.trace_length() == 3);
  CHECK_FALSE(a.trace_truncated());
  a.add_evaluations(0.5, 1);
  CHECK(a.trace_truncated());
  CHECK(a.trace().size() == 2);
  const std::vector<double> other{1.0, 2.0000000000000004};
  b.mix_values(other);
  CostLedger c(PowerCost{}, true, 3);
  c.begin_step(2);
  c.add_evaluations(0.25, 2);
  c.add_evaluations(0.25, 1);
  c.mix_values(values);
  c.mix_values(values);
  CHECK(b.information_digest() != c.information_digest());
}

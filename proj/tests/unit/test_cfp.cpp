#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "evfam/cfp.hpp"
#include "evfam/instances.hpp"

using namespace evfam::cfp;

namespace {

Vector v(std::initializer_list<double> xs) {
  Vector r(xs.size());
  std::size_t k = 0;
  for (double x : xs) r[k++] = x;
  return r;
}

void expect_near(const Vector& a, const Vector& b, double tol = 1e-12) {
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE((a - b).norm(), tol) << a.transpose() << " vs " << b.transpose();
}

}  // namespace

TEST(Operators, Projections) {
  const auto left = Operator::halfspace(v({1, 0}), 0);
  expect_near(left.apply(v({-1, -1})), v({-1, -1}));
  const auto right = Operator::halfspace(v({-1, 0}), 0);
  expect_near(right.apply(v({-1, -1})), v({0, -1}));
  expect_near(Operator::ball(v({0, 0}), 1).apply(v({2, 0})), v({1, 0}));
  expect_near(Operator::hyperplane(v({0, 2}), 2).apply(v({3, 5})), v({3, 1}));
  expect_near(Operator::box(v({0, 0}), v({1, 1})).apply(v({-2, 0.5})), v({0, 0.5}));
  Matrix a(1, 2);
  a << 1, 1;
  expect_near(Operator::affine(a, v({0})).apply(v({1, 1})), v({0, 0}));
}

TEST(Operators, Subgradient) {
  // f(x) = max(x1 - 1, x2 - 1): one active piece at (3, 0).
  const auto s = Operator::subgradient({{v({1, 0}), -1}, {v({0, 1}), -1}});
  expect_near(s.apply(v({3, 0})), v({1, 0}));
  expect_near(s.apply(v({0, 0})), v({0, 0}));
  // Tie: lowest piece index wins.
  expect_near(s.apply(v({2, 2})), v({1, 2}));
  EXPECT_TRUE(s.is_cutter());
  EXPECT_FALSE(s.is_firmly_nonexpansive());
  EXPECT_TRUE(Operator::subgradient({{v({1, 0}), -1}}).is_firmly_nonexpansive());
}

TEST(Operators, Validation) {
  EXPECT_THROW(Operator::halfspace(v({0, 0}), 1), std::invalid_argument);
  EXPECT_THROW(Operator::ball(v({0}), 0), std::invalid_argument);
  EXPECT_THROW(Operator::box(v({1}), v({0})), std::invalid_argument);
  Matrix rank1(2, 2);
  rank1 << 1, 1, 2, 2;
  EXPECT_THROW(Operator::affine(rank1, v({0, 0})), std::invalid_argument);
  EXPECT_THROW(Operator::subgradient({}), std::invalid_argument);
  EXPECT_THROW(relax(Operator::ball(v({0}), 1), 2.5), std::invalid_argument);
  EXPECT_THROW(Operator::ball(v({0}), 1).apply(v({1, 2})), std::invalid_argument);
}

TEST(Operators, Flags) {
  const auto h = Operator::halfspace(v({1}), 0);
  EXPECT_TRUE(h.is_cutter() && h.is_firmly_nonexpansive() && h.is_projection() && h.demiclosed_at_zero());
  EXPECT_TRUE(relax(h, 0.5).is_cutter());
  EXPECT_FALSE(relax(h, 1.5).is_cutter());
  EXPECT_FALSE(Operator::averaged(h).is_projection());
  const auto twice = Operator::custom(1, [](const Vector& x) { Vector y = 2 * x; return y; }, "double");
  EXPECT_FALSE(twice.is_cutter());
}

TEST(Operators, CutterAndFne) {
  const auto h = Operator::halfspace(v({1, 0}), 0);
  EXPECT_TRUE(cutter_check(h, v({1, 0}), v({-1, 0})));
  EXPECT_TRUE(cutter_check(h, v({-1, 0}), v({-2, 0})));
  EXPECT_THROW(cutter_check(h, v({1, 0}), v({1, 0})), std::invalid_argument);
  EXPECT_TRUE(fne_check(h, v({1, 1}), v({1, 1})));
  const auto twice = Operator::custom(1, [](const Vector& x) { Vector y = 2 * x; return y; }, "double");
  EXPECT_FALSE(fne_check(twice, v({1}), v({0})));
}

TEST(Operators, Relax) {
  const auto h = Operator::halfspace(v({1, 0}), 0);
  expect_near(relax(h, 0).apply(v({3, 4})), v({3, 4}));
  expect_near(relax(h, 1).apply(v({3, 4})), h.apply(v({3, 4})));
  expect_near(relax(h, 0.5).apply(v({1, 0})), v({0.5, 0}));
}

TEST(OperatorsProperty, KindsBehave) {
  std::mt19937_64 rng(31);
  for (auto kind : {OperatorKind::Halfspace, OperatorKind::Hyperplane, OperatorKind::Ball, OperatorKind::Box,
                    OperatorKind::Affine, OperatorKind::Subgradient, OperatorKind::Averaged, OperatorKind::Relaxed}) {
    for (int k = 0; k < 300; ++k) {
      const std::size_t dim = 1 + rng() % 5;
      const auto s = random_operator(kind, dim, rng);
      const Vector x = random_point(rng, dim, 5.0), y = random_point(rng, dim, 5.0), z = s.fix_point(rng);
      ASSERT_TRUE(s.op.in_fix(z)) << to_string(kind);
      ASSERT_TRUE(cutter_check(s.op, x, z)) << to_string(kind);
      const double lambda = std::uniform_real_distribution<double>(0, 1)(rng);
      ASSERT_TRUE(cutter_check(relax(s.op, lambda), x, z)) << to_string(kind);
      if (s.op.is_firmly_nonexpansive()) ASSERT_TRUE(fne_check(s.op, x, y)) << to_string(kind);
      if (s.op.is_projection()) {
        const Vector p = s.op.apply(x);
        ASSERT_LE((s.op.apply(p) - p).norm(), 1e-12) << to_string(kind);
      }
    }
  }
}

TEST(Control, Validate) {
  EXPECT_EQ(control_validate(Control::cyclic(3), 3, 3), 3u);
  EXPECT_EQ(control_validate(Control::almost_cyclic({0, 0, 1}), 2, 3), 3u);
  EXPECT_EQ(control_validate(Control::almost_cyclic({0, 1, 1, 0}), 2, 4), 3u);
  EXPECT_THROW(control_validate(Control::almost_cyclic({0, 0}), 2, 2), std::invalid_argument);
  EXPECT_THROW(control_validate(Control::almost_cyclic({0, 2}), 2, 2), std::invalid_argument);
  EXPECT_EQ(control_validate(Control::explicit_list({0, 1, 0, 1, 1}), 2, 5), 2u);
  EXPECT_THROW(Control::almost_cyclic({}), std::invalid_argument);
  const auto e = Control::explicit_list({1, 0});
  EXPECT_EQ(e.length(), 2u);
  EXPECT_THROW(e.at(2), std::out_of_range);
  EXPECT_EQ(Control::cyclic(4).at(9), 1u);
}

TEST(Relaxation, Schedules) {
  EXPECT_THROW(Relaxation::constant(2.5), std::invalid_argument);
  EXPECT_THROW(Relaxation::sequence({}), std::invalid_argument);
  const auto r = Relaxation::sequence({0.5, 1.5});
  EXPECT_DOUBLE_EQ(r.at(3), 1.5);
  EXPECT_DOUBLE_EQ(r.inf(), 0.5);
  EXPECT_DOUBLE_EQ(r.sup(), 1.5);
}

TEST(Acsa, TwoHalfspaces) {
  const std::vector<Operator> ops = {Operator::halfspace(v({-1, 0}), 0), Operator::halfspace(v({0, -1}), 0)};
  const auto t = acsa_run(ops, Control::cyclic(2), Relaxation::constant(1), v({-1, -1}), {1e-6, 100, 1});
  EXPECT_EQ(t.status, RunStatus::Converged);
  ASSERT_EQ(t.steps(), 2u);
  EXPECT_EQ(t.iterates[1], v({0, -1}));
  EXPECT_EQ(t.iterates[2], v({0, 0}));
  EXPECT_EQ(max_residual(ops, t.final_point()), 0.0);
  EXPECT_TRUE(replay(t, ops).ok);
  EXPECT_EQ(fejer_violations(t, v({1, 1})), 0u);
}

TEST(Acsa, DegenerateRuns) {
  const std::vector<Operator> one = {Operator::ball(v({0, 0}), 1)};
  const auto fixed = acsa_run(one, Control::cyclic(1), Relaxation::constant(1), v({0.5, 0}), {1e-9, 50, 1});
  EXPECT_EQ(fixed.status, RunStatus::Converged);
  EXPECT_EQ(fixed.steps(), 0u);

  const auto frozen = acsa_run(one, Control::cyclic(1), Relaxation::constant(0), v({3, 0}), {1e-9, 20, 5});
  EXPECT_EQ(frozen.status, RunStatus::IterationCap);
  for (const auto& x : frozen.iterates) EXPECT_EQ(x, v({3, 0}));

  const auto capped = acsa_run(one, Control::cyclic(1), Relaxation::constant(0.5), v({3, 0}), {1e-12, 1, 1});
  EXPECT_EQ(capped.status, RunStatus::IterationCap);
  EXPECT_EQ(capped.steps(), 1u);
}

TEST(Acsa, Errors) {
  const std::vector<Operator> none;
  EXPECT_THROW(acsa_run(none, Control::cyclic(1), Relaxation::constant(1), v({0}), {}), std::invalid_argument);
  const std::vector<Operator> one = {Operator::ball(v({0}), 1)};
  EXPECT_THROW(acsa_run(one, Control::cyclic(2), Relaxation::constant(1), v({0}), {}), std::invalid_argument);
  EXPECT_THROW(acsa_run(one, Control::cyclic(1), Relaxation::constant(1), v({0, 0}), {}), std::invalid_argument);
  const std::vector<Operator> blowup = {
      Operator::custom(1, [](const Vector& x) { Vector y = x * 1e300; return y; }, "blowup")};
  EXPECT_THROW(acsa_run(blowup, Control::cyclic(1), Relaxation::constant(1), v({10}), {1e-9, 10, 1}),
               NumericalError);
}

TEST(Acsa, ReplayDetectsTampering) {
  const std::vector<Operator> ops = {Operator::halfspace(v({-1, 0}), 0), Operator::halfspace(v({0, -1}), 0)};
  auto t = acsa_run(ops, Control::cyclic(2), Relaxation::constant(1), v({-1, -1}), {1e-6, 100, 1});
  t.iterates[1][0] += 1e-6;
  const auto r = replay(t, ops);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.first_mismatch, 0u);
}

TEST(AcsaProperty, FeasibleInstancesConverge) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 10; ++k) {
    const auto inst = random_feasible_instance(rng, 4, 6, 0.1);
    const auto ctrl = Control::almost_cyclic(inst.pattern);
    ASSERT_LE(control_validate(ctrl, 6, inst.pattern.size()), 12u);
    const auto t = acsa_run(inst.ops, ctrl, Relaxation::constant(1), inst.x0, {1e-6, 10000, 10});
    ASSERT_EQ(t.status, RunStatus::Converged);
    ASSERT_LE(max_residual(inst.ops, t.final_point()), 1e-6);
    ASSERT_EQ(fejer_violations(t, inst.center), 0u);
    ASSERT_TRUE(replay(t, inst.ops).ok);
  }
}

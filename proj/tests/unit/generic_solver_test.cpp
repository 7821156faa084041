#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "checks.hpp"
#include "generators.hpp"
#include "vcpoint/generic_solver.hpp"

namespace vcpoint {
namespace {

using fixtures::code_of;
using fixtures::expect_vec_near;
using fixtures::Gen;
using fixtures::hover_spec;
using fixtures::hover_state;

const VehicleParams kParams = VehicleParams::reference_quadrotor();
constexpr std::array<double, 3> kZero{0, 0, 0};

TaskSpec arc_spec(SignConvention c = SignConvention::geometric) {
  TaskSpec spec;
  spec.z0 = 0.58;
  spec.target = {0.1, 0.2, -0.1};
  spec.convention = c;
  return spec;
}

void expect_input_near(const ControlInput& a, const ControlInput& b, double tol) {
  EXPECT_NEAR(a.f, b.f, tol);
  EXPECT_NEAR(a.tau1, b.tau1, tol);
  EXPECT_NEAR(a.tau2, b.tau2, tol);
  EXPECT_NEAR(a.tau3, b.tau3, tol);
}

TEST(TaskConstraintSet, ValuesMatchResiduals) {
  Gen gen(51);
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    const TaskSpec spec = arc_spec(c);
    const GenericConstraintSet cs = task_constraint_set(spec);
    ASSERT_EQ(cs.constraints.size(), 3u);
    for (int i = 0; i < 200; ++i) {
      const RigidBodyState s = gen.feasible_state(spec);
      const ResidualVector mu = residuals(s, spec);
      EXPECT_NEAR(evaluate_constraint(cs.constraints[0], s), mu.mu_z, 1e-14);
      EXPECT_NEAR(evaluate_constraint(cs.constraints[1], s), mu.mu_O3, 1e-14);
      EXPECT_NEAR(evaluate_constraint(cs.constraints[2], s), mu.mu_O2, 1e-14);
    }
  }
}

TEST(CoefficientRate, FiniteDifferencesAgreeWithAnalyticRates) {
  Gen gen(52);
  const TaskSpec spec = arc_spec();
  const GenericConstraintSet analytic = task_constraint_set(spec, true);
  const GenericConstraintSet numeric = task_constraint_set(spec, false);
  for (int i = 0; i < 200; ++i) {
    const RigidBodyState s = gen.feasible_state(spec);
    for (std::size_t a = 0; a < 3; ++a) {
      const ConstraintCoefficients x = coefficient_rate(analytic.constraints[a], s, 1e-6);
      const ConstraintCoefficients y = coefficient_rate(numeric.constraints[a], s, 1e-6);
      expect_vec_near(x.angular, y.angular, 1e-7);
      expect_vec_near(x.linear, y.linear, 1e-7);
    }
  }
}

TEST(SolveGeneric, HoverFixture) {
  const ControlInput u =
      solve_invariance_generic(hover_state(), kParams, task_constraint_set(hover_spec()), kZero);
  expect_input_near(u, {9.8, 0, 0, 0}, 1e-12);
}

TEST(SolveGeneric, MatchesInvarianceLawOnManifold) {
  Gen gen(53);
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    const TaskSpec spec = arc_spec(c);
    for (const bool analytic : {false, true}) {
      const GenericConstraintSet cs = task_constraint_set(spec, analytic);
      for (int i = 0; i < 100; ++i) {
        const RigidBodyState s = gen.on_manifold_state(spec);
        expect_input_near(solve_invariance_generic(s, kParams, cs, kZero), invariance_control(s, kParams, spec),
                          1e-8);
      }
    }
  }
}

TEST(SolveGeneric, MatchesStabilizedLawOffManifold) {
  Gen gen(54);
  const std::array<double, 3> gains{5, 3, 3};
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    const TaskSpec spec = arc_spec(c);
    for (const bool analytic : {false, true}) {
      const GenericConstraintSet cs = task_constraint_set(spec, analytic);
      for (int i = 0; i < 100; ++i) {
        const RigidBodyState s = gen.feasible_state(spec);
        expect_input_near(solve_invariance_generic(s, kParams, cs, gains),
                          control_stabilized(s, kParams, spec, {5, 3, 3}), 1e-8);
        expect_input_near(solve_invariance_generic(s, kParams, cs, kZero),
                          control_stabilized(s, kParams, spec, {}), 1e-8);
      }
    }
  }
}

TEST(SolveGeneric, SingularSystemNearHorizontalThrustAxis) {
  RigidBodyState s = hover_state();
  // Tilt about b1 until e3^T b3 = 1e-6.
  s.R = Rotation::about_z(std::numbers::pi) * Rotation::about_x(std::acos(1e-6));
  EXPECT_NEAR(s.R.matrix()(2, 2), 1e-6, 1e-15);
  EXPECT_EQ(code_of([&] { solve_invariance_generic(s, kParams, task_constraint_set(hover_spec()), kZero); }),
            ErrorCode::SingularSystem);
  s.R = Rotation::about_z(std::numbers::pi) * Rotation::about_x(std::acos(9e-6));
  EXPECT_EQ(code_of([&] { solve_invariance_generic(s, kParams, task_constraint_set(hover_spec()), kZero); }),
            ErrorCode::SingularSystem);
}

TEST(SolveGeneric, DimensionMismatch) {
  const GenericConstraintSet cs = task_constraint_set(hover_spec());
  const std::array<double, 2> two{0, 0};
  EXPECT_EQ(code_of([&] { solve_invariance_generic(hover_state(), kParams, cs, two); }),
            ErrorCode::DimensionMismatch);

  GenericConstraintSet fewer_inputs = cs;
  fewer_inputs.inputs.pop_back();
  EXPECT_EQ(code_of([&] { solve_invariance_generic(hover_state(), kParams, fewer_inputs, kZero); }),
            ErrorCode::DimensionMismatch);

  GenericConstraintSet repeated = cs;
  repeated.inputs[2] = repeated.inputs[1];
  EXPECT_EQ(code_of([&] { solve_invariance_generic(hover_state(), kParams, repeated, kZero); }),
            ErrorCode::DimensionMismatch);

  GenericConstraintSet empty;
  EXPECT_EQ(code_of([&] { solve_invariance_generic(hover_state(), kParams, empty, {}); }),
            ErrorCode::DimensionMismatch);
}

TEST(SolveGeneric, SingleConstraint) {
  // Altitude rate alone, thrust only: f = m (g - k mu_z)/s3.
  GenericConstraintSet cs;
  cs.constraints.push_back(task_constraint_set(hover_spec()).constraints[0]);
  cs.inputs = {InputChannel::thrust};
  RigidBodyState s = hover_state();
  s.v = {0, 0, 0.1};
  const std::array<double, 1> k{5};
  EXPECT_NEAR(solve_invariance_generic(s, kParams, cs, k).f, 9.3, 1e-12);
}

// Four constraints, four inputs: the body rates and the vertical velocity are
// all held at zero-rate. There is no closed-form oracle, so the check is that
// the resulting closed loop imposes the requested residual dynamics.
GenericConstraintSet full_actuation_set(const TaskSpec& spec) {
  GenericConstraintSet cs = task_constraint_set(spec);
  ConstraintEvaluator roll;
  roll.coefficients = [](const Rotation&, const Vec3&) { return ConstraintCoefficients{Vec3::e1(), Vec3{}}; };
  cs.constraints.push_back(roll);
  cs.inputs.push_back(InputChannel::tau1);
  return cs;
}

TEST(SolveGeneric, FourInputsImposeTargetDynamics) {
  Gen gen(55);
  const TaskSpec spec = arc_spec();
  const GenericConstraintSet cs = full_actuation_set(spec);
  const std::array<double, 4> k{2, 3, 4, 5};
  for (int i = 0; i < 100; ++i) {
    const RigidBodyState s = gen.feasible_state(spec);
    const Policy policy = [&](const RigidBodyState& x) { return solve_invariance_generic(x, kParams, cs, k); };
    std::array<double, 4> mu{};
    std::array<double, 4> rate{};
    const double eps = 1e-6;
    const RigidBodyState plus = rk4_step(s, eps, policy, kParams);
    const RigidBodyState minus = rk4_step(s, -eps, policy, kParams);
    for (std::size_t a = 0; a < 4; ++a) {
      mu[a] = evaluate_constraint(cs.constraints[a], s);
      rate[a] = (evaluate_constraint(cs.constraints[a], plus) - evaluate_constraint(cs.constraints[a], minus)) /
                (2 * eps);
      EXPECT_NEAR(rate[a], -k[a] * mu[a], 1e-4 * std::max(1.0, std::abs(k[a] * mu[a])));
    }
  }
}

}  // namespace
}  // namespace vcpoint

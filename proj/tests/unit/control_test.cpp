#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "checks.hpp"
#include "generators.hpp"
#include "vcpoint/control.hpp"

namespace vcpoint {
namespace {

using fixtures::code_of;
using fixtures::Gen;
using fixtures::hover_spec;
using fixtures::hover_state;

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
const VehicleParams kParams = VehicleParams::reference_quadrotor();

TaskSpec with(SignConvention c, TaskSpec spec) {
  spec.convention = c;
  return spec;
}

TaskSpec arc_spec() {
  TaskSpec spec;
  spec.z0 = 0.58;
  return spec;
}

TEST(ThrustInvariance, Examples) {
  RigidBodyState s;
  s.p = {1, 0, 0};
  EXPECT_DOUBLE_EQ(thrust_invariance(s, kParams, hover_spec()), 9.8);
  s.R = Rotation::about_x(kPi / 3);  // s3 = cos 60 = 0.5
  EXPECT_NEAR(thrust_invariance(s, kParams, hover_spec()), 19.6, 1e-13);
  s.R = Rotation::about_y(kPi / 2);
  EXPECT_EQ(code_of([&] { thrust_invariance(s, kParams, hover_spec()); }), ErrorCode::SingularAttitude);
}

TEST(TorquesInvariance, HoverFixture) {
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    const TaskSpec spec = with(c, hover_spec());
    RigidBodyState s = hover_state();
    const ControlInput u = invariance_control(s, kParams, spec);
    EXPECT_EQ(u.f, 9.8);
    EXPECT_EQ(u.tau1, 0.0);
    EXPECT_EQ(u.tau2, 0.0);
    EXPECT_EQ(u.tau3, 0.0);

    s.omega = {0.3, 0, 0};
    const TorquePair t = torques_invariance(s, kParams, spec);
    EXPECT_EQ(t.tau2, 0.0);
    EXPECT_EQ(t.tau3, 0.0);
  }
}

TEST(TorquesInvariance, StaticArcPointByHandSubstitution) {
  // At rest on the arc: omega = 0, s2 = 0 (b2 horizontal), s3 = r/rho, f = m g/s3.
  // tau2 = J2 sigma (g s3 - g/s3)/rho and tau3 = 0.
  const double r = 0.9;
  const double rho = std::hypot(r, 0.58);
  const double s3 = r / rho;
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    const TaskSpec spec = with(c, arc_spec());
    const double sigma = c == SignConvention::reversed ? 1.0 : -1.0;
    const RigidBodyState s = on_manifold_init(20 * kDeg, r, spec, 0.0);
    const ControlInput u = invariance_control(s, kParams, spec);
    EXPECT_NEAR(u.f, 9.8 / s3, 1e-12);
    EXPECT_NEAR(u.tau2, 2.0 * sigma * (9.8 * s3 - 9.8 / s3) / rho, 1e-12);
    EXPECT_NEAR(u.tau3, 0.0, 1e-12);
  }
}

TEST(ControlStabilized, ThrustExample) {
  RigidBodyState s = hover_state();
  s.v = {0, 0, 0.1};
  const ControlInput u = control_stabilized(s, kParams, hover_spec(), {5, 0, 0});
  EXPECT_NEAR(u.f, 9.3, 1e-13);
  EXPECT_EQ(u.tau1, 0.0);
}

TEST(ControlStabilized, ReducesToInvarianceLawOnManifold) {
  Gen gen(41);
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    TaskSpec spec = with(c, arc_spec());
    spec.target = {0.1, -0.4, 0.2};
    for (int i = 0; i < 300; ++i) {
      const RigidBodyState s = gen.on_manifold_state(spec);
      const Gains g{gen.uniform(0, 10), gen.uniform(0, 10), gen.uniform(0, 10)};
      const ControlInput a = control_stabilized(s, kParams, spec, g);
      const ControlInput b = invariance_control(s, kParams, spec);
      const double scale = 1.0 + std::abs(b.tau2) + std::abs(b.tau3);
      EXPECT_NEAR(a.f, b.f, 1e-12 * scale);
      EXPECT_NEAR(a.tau2, b.tau2, 1e-12 * scale);
      EXPECT_NEAR(a.tau3, b.tau3, 1e-12 * scale);
    }
  }
}

TEST(ControlStabilized, ImposesTargetResidualDynamics) {
  Gen gen(42);
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    TaskSpec spec = with(c, arc_spec());
    spec.target = {-0.2, 0.3, 0.0};
    for (int i = 0; i < 200; ++i) {
      const RigidBodyState s = gen.feasible_state(spec);
      const Gains g{gen.uniform(0.5, 10), gen.uniform(0.5, 10), gen.uniform(0.5, 10)};
      const Policy policy = [&](const RigidBodyState& x) { return control_stabilized(x, kParams, spec, g); };
      const ResidualVector mu = residuals(s, spec);
      const ResidualVector rate = fixtures::residual_rate(s, policy, kParams, spec);
      const auto check = [](double measured, double expected) {
        EXPECT_NEAR(measured, expected, 1e-4 * std::max(1.0, std::abs(expected)));
      };
      check(rate.mu_z, -g.k_z * mu.mu_z);
      check(rate.mu_O3, -g.k_O3 * mu.mu_O3);
      check(rate.mu_O2, -g.k_O2 * mu.mu_O2);
    }
  }
}

TEST(ControlStabilized, ZeroGainsFreezeResiduals) {
  Gen gen(43);
  const TaskSpec spec = arc_spec();
  const Policy policy = [&](const RigidBodyState& x) { return control_stabilized(x, kParams, spec, {}); };
  for (int i = 0; i < 200; ++i) {
    const RigidBodyState s = gen.feasible_state(spec);
    const ResidualVector rate = fixtures::residual_rate(s, policy, kParams, spec);
    EXPECT_NEAR(rate.mu_z, 0.0, 1e-4);
    EXPECT_NEAR(rate.mu_O3, 0.0, 1e-4);
    EXPECT_NEAR(rate.mu_O2, 0.0, 1e-4);
  }
}

TEST(InvarianceLaw, TangentOnManifold) {
  Gen gen(44);
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    const TaskSpec spec = with(c, arc_spec());
    const Policy policy = [&](const RigidBodyState& x) { return invariance_control(x, kParams, spec); };
    for (int i = 0; i < 200; ++i) {
      const RigidBodyState s = gen.on_manifold_state(spec);
      const ResidualVector rate = fixtures::residual_rate(s, policy, kParams, spec);
      EXPECT_LE(std::abs(rate.mu_z), 1e-4);
      EXPECT_LE(std::abs(rate.mu_O3), 1e-4);
      EXPECT_LE(std::abs(rate.mu_O2), 1e-4);
    }
  }
}

TEST(InvarianceLaw, UniqueTangentInput) {
  // Moving any one input away from the law breaks tangency of its residual channel.
  Gen gen(45);
  const TaskSpec spec = arc_spec();
  for (int i = 0; i < 50; ++i) {
    const RigidBodyState s = gen.on_manifold_state(spec);
    const ControlInput u = invariance_control(s, kParams, spec);
    for (int channel = 0; channel < 3; ++channel) {
      ControlInput w = u;
      (channel == 0 ? w.f : channel == 1 ? w.tau2 : w.tau3) += 0.5;
      const Policy policy = [&](const RigidBodyState&) { return w; };
      const ResidualVector rate = fixtures::residual_rate(s, policy, kParams, spec);
      const double worst = std::max({std::abs(rate.mu_z), std::abs(rate.mu_O3), std::abs(rate.mu_O2)});
      EXPECT_GT(worst, 1e-2) << "channel " << channel;
    }
  }
}

TEST(Gains, Validation) {
  EXPECT_NO_THROW((Gains{0, 0, 0}.validate()));
  EXPECT_EQ(code_of([] { Gains{-1, 0, 0}.validate(); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { Gains{0, std::nan(""), 0}.validate(); }), ErrorCode::InvalidParameter);
}

TEST(ControlStabilized, SingularAndCollisionErrors) {
  RigidBodyState s = hover_state();
  s.R = Rotation::about_y(kPi / 2);
  EXPECT_EQ(code_of([&] { control_stabilized(s, kParams, hover_spec(), {}); }), ErrorCode::SingularAttitude);
  s = hover_state();
  s.p = {0.01, 0, 0};
  EXPECT_EQ(code_of([&] { control_stabilized(s, kParams, hover_spec(), {}); }), ErrorCode::TargetCollision);
  EXPECT_EQ(code_of([&] { torques_invariance(s, kParams, hover_spec()); }), ErrorCode::TargetCollision);
}

TEST(Transversality, ReferenceMatrix) {
  const RigidBodyState s = hover_state();
  const TransversalityMatrix rev = transversality_matrix(s, kParams, with(SignConvention::reversed, hover_spec()));
  const double expected_rev[3][3] = {{1, 0, 0}, {0, 0, 1.0 / 6.0}, {1, 0.5, 0}};
  const TransversalityMatrix geo = transversality_matrix(s, kParams, hover_spec());
  const double expected_geo[3][3] = {{1, 0, 0}, {0, 0, 1.0 / 6.0}, {-1, 0.5, 0}};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(rev.entries[a][j], expected_rev[a][j], 1e-15);
      EXPECT_NEAR(geo.entries[a][j], expected_geo[a][j], 1e-15);
    }
  }
  EXPECT_NEAR(rev.det, -1.0 / 12.0, 1e-15);
  EXPECT_NEAR(geo.det, -1.0 / 12.0, 1e-15);
}

TEST(Transversality, SingularAttitudeHasZeroDeterminant) {
  RigidBodyState s = hover_state();
  s.R = Rotation::about_z(kPi) * Rotation::about_x(kPi / 2);
  EXPECT_NEAR(transversality_matrix(s, kParams, hover_spec()).det, 0.0, 1e-15);
}

TEST(Transversality, DeterminantIdentityOnRandomStates) {
  Gen gen(46);
  for (const SignConvention c : {SignConvention::geometric, SignConvention::reversed}) {
    TaskSpec spec = with(c, arc_spec());
    for (int i = 0; i < 1000; ++i) {
      RigidBodyState s;
      s.R = gen.rotation();
      s.p = gen.relative_position(0.2, 5.0, 1.0);
      const VehicleParams params(gen.uniform(0.2, 3), 9.8, gen.uniform(0.5, 3), gen.uniform(0.5, 3),
                                 gen.uniform(0.5, 6));
      const TransversalityMatrix T = transversality_matrix(s, params, spec);
      const double s3 = s.R.matrix()(2, 2);
      EXPECT_NEAR(T.det, -s3 / (params.m() * params.J2() * params.J3()), 1e-12);
    }
  }
}

}  // namespace
}  // namespace vcpoint

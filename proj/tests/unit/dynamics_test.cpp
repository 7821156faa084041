#include <gtest/gtest.h>

#include "checks.hpp"
#include "generators.hpp"
#include "vcpoint/dynamics.hpp"

namespace vcpoint {
namespace {

using fixtures::code_of;
using fixtures::expect_vec_near;
using fixtures::Gen;

const VehicleParams kParams = VehicleParams::reference_quadrotor();

ControlInput random_input(Gen& gen) {
  return {gen.uniform(0.0, 20.0), gen.uniform(-3, 3), gen.uniform(-3, 3), gen.uniform(-3, 3)};
}

RigidBodyState random_state(Gen& gen) {
  return {gen.rotation(), gen.vec(-5, 5), gen.vec(-3, 3), gen.vec(-3, 3)};
}

TEST(VehicleParams, RejectsNonPositiveValues) {
  EXPECT_EQ(code_of([] { VehicleParams(0.0, 9.8, 1, 1, 1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { VehicleParams(1.0, -9.8, 1, 1, 1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { VehicleParams(1.0, 9.8, 1, 0, 1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { VehicleParams(1.0, 9.8, 1, 1, std::nan("")); }), ErrorCode::InvalidParameter);
}

TEST(VehicleParams, FullInertiaMustBeDiagonal) {
  Mat3 J = Mat3::diagonal({2, 2, 6});
  EXPECT_EQ(VehicleParams::from_inertia(1, 9.8, J).J3(), 6.0);
  J(0, 1) = J(1, 0) = 0.1;
  EXPECT_EQ(code_of([&] { VehicleParams::from_inertia(1, 9.8, J); }), ErrorCode::InvalidParameter);
}

TEST(StateDerivative, HoverIsAnEquilibrium) {
  const RigidBodyState s{};
  const StateDerivative d = state_derivative(s, kParams, {kParams.m() * kParams.g(), 0, 0, 0});
  EXPECT_EQ(d.dv, Vec3{});
  EXPECT_EQ(d.domega, Vec3{});
  EXPECT_EQ(d.dp, Vec3{});
  EXPECT_EQ(d.dR, Mat3::zero());
}

TEST(StateDerivative, FreeFall) {
  const StateDerivative d = state_derivative(RigidBodyState{}, kParams, {});
  EXPECT_EQ(d.dv, (Vec3{0, 0, -9.8}));
}

TEST(StateDerivative, SpinAboutPrincipalAxisHasNoGyroscopicTerm) {
  RigidBodyState s;
  s.omega = {1, 0, 0};
  EXPECT_EQ(state_derivative(s, kParams, {}).domega, Vec3{});
}

TEST(StateDerivative, EulerEquationsByHand) {
  // omega = (1, 2, 3), J = diag(2, 2, 6): omega x J omega = (2*18 - 3*4, 3*2 - 1*18, 0) = (24, -12, 0).
  RigidBodyState s;
  s.omega = {1, 2, 3};
  const StateDerivative d = state_derivative(s, kParams, {0, 1, 2, 3});
  expect_vec_near(d.domega, {(1 - 24) / 2.0, (2 + 12) / 2.0, 3 / 6.0}, 1e-15);
  expect_vec_near(gyroscopic_torque(s.omega, kParams), {24, -12, 0}, 1e-15);
}

TEST(StateDerivative, RotationRateIsTangent) {
  Gen gen(21);
  for (int i = 0; i < 1000; ++i) {
    const RigidBodyState s = random_state(gen);
    const StateDerivative d = state_derivative(s, kParams, random_input(gen));
    const Mat3 body = s.R.matrix().transposed() * d.dR;
    EXPECT_LT(frobenius_norm(body + body.transposed()), 1e-12);
  }
}

TEST(AffineFields, ReferenceValues) {
  const AffineFields a = affine_fields(RigidBodyState{}, kParams);
  EXPECT_EQ(a.a_f.angular, Vec3{});
  EXPECT_EQ(a.a_f.linear, Vec3::e3());
  EXPECT_EQ(a.a_tau[1].angular, (Vec3{0, 0.5, 0}));
  EXPECT_EQ(a.a_tau[1].linear, Vec3{});
  EXPECT_EQ(a.a_tau[2].angular, (Vec3{0, 0, 1.0 / 6.0}));
}

TEST(AffineFields, ReconstructsStateDerivative) {
  Gen gen(22);
  for (int i = 0; i < 1000; ++i) {
    const RigidBodyState s = random_state(gen);
    const ControlInput u = random_input(gen);
    const StateDerivative d = state_derivative(s, kParams, u);
    const Twist xi = affine_fields(s, kParams).evaluate(u);
    expect_vec_near(xi.angular, d.domega, 1e-13);
    expect_vec_near(xi.linear, d.dv, 1e-13);
    EXPECT_NEAR(norm(affine_fields(s, kParams).a_f.linear), 1.0 / kParams.m(), 1e-15);
  }
}

TEST(StateDerivative, AffineInInputs) {
  Gen gen(23);
  for (int i = 0; i < 200; ++i) {
    const RigidBodyState s = random_state(gen);
    const ControlInput u1 = random_input(gen);
    const ControlInput u2 = random_input(gen);
    const double lambda = gen.uniform(-2, 2);
    const ControlInput mix{u1.f + lambda * u2.f, u1.tau1 + lambda * u2.tau1, u1.tau2 + lambda * u2.tau2,
                           u1.tau3 + lambda * u2.tau3};
    const StateDerivative d0 = state_derivative(s, kParams, {});
    const StateDerivative d1 = state_derivative(s, kParams, u1);
    const StateDerivative d2 = state_derivative(s, kParams, u2);
    const StateDerivative dm = state_derivative(s, kParams, mix);
    expect_vec_near(dm.dv, d1.dv + lambda * (d2.dv - d0.dv), 1e-12);
    expect_vec_near(dm.domega, d1.domega + lambda * (d2.domega - d0.domega), 1e-12);
  }
}

}  // namespace
}  // namespace vcpoint

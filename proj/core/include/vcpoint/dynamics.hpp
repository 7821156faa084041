#pragma once

// Quadrotor equations of motion on SE(3) and their velocity-level
// affine-in-control split.

#include <array>

#include "vcpoint/se3.hpp"

namespace vcpoint {

/// Mass, gravity and principal inertias of the vehicle. All strictly positive;
/// the inertia tensor is diagonal in the body frame.
class VehicleParams {
 public:
  /// Throws Error{InvalidParameter} unless every value is finite and > 0.
  VehicleParams(double mass, double gravity, double J1, double J2, double J3);

  /// Accepts a full inertia tensor but rejects any non-zero off-diagonal term.
  static VehicleParams from_inertia(double mass, double gravity, const Mat3& inertia);

  /// (m, g, J1, J2, J3) = (1, 9.8, 2, 2, 6).
  static VehicleParams reference_quadrotor() { return {1.0, 9.8, 2.0, 2.0, 6.0}; }

  double m() const noexcept { return m_; }
  double g() const noexcept { return g_; }
  double J1() const noexcept { return J_.x; }
  double J2() const noexcept { return J_.y; }
  double J3() const noexcept { return J_.z; }
  const Vec3& inertia() const noexcept { return J_; }

 private:
  double m_;
  double g_;
  Vec3 J_;
};

/// Configuration (R, p) with v in the world frame and omega in the body frame.
struct RigidBodyState {
  Rotation R;
  Vec3 p;
  Vec3 v;
  Vec3 omega;

  /// Body-frame component v_i = b_i^T v.
  double body_velocity(int i) const { return dot(body_axis(R, i), v); }
};

struct ControlInput {
  double f = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;

  Vec3 torque() const { return {tau1, tau2, tau3}; }
};

struct StateDerivative {
  Mat3 dR;
  Vec3 dp;
  Vec3 dv;
  Vec3 domega;
};

/// Element of the left-trivialized velocity space xi = (omega, v).
struct Twist {
  Vec3 angular;
  Vec3 linear;

  friend Twist operator+(const Twist& a, const Twist& b) {
    return {a.angular + b.angular, a.linear + b.linear};
  }
  friend Twist operator*(double s, const Twist& a) { return {s * a.angular, s * a.linear}; }
};

/// xi_dot = a0 + f a_f + sum_i tau_i a_tau[i].
struct AffineFields {
  Twist a0;
  Twist a_f;
  std::array<Twist, 3> a_tau;

  Twist evaluate(const ControlInput& u) const;
};

/// Right-hand side of the equations of motion:
///   p' = v,  m v' = f R e3 - m g e3,  R' = R hat(omega),  J omega' + omega x J omega = tau.
StateDerivative state_derivative(const RigidBodyState& s, const VehicleParams& params, const ControlInput& u);

AffineFields affine_fields(const RigidBodyState& s, const VehicleParams& params);

/// Euler gyroscopic term omega x J omega.
Vec3 gyroscopic_torque(const Vec3& omega, const VehicleParams& params);

}  // namespace vcpoint

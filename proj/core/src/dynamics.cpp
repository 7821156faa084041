#include "vcpoint/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint {

namespace {

Vec3 inverse_inertia(const VehicleParams& params, const Vec3& w) {
  return {w.x / params.J1(), w.y / params.J2(), w.z / params.J3()};
}

}  // namespace

VehicleParams::VehicleParams(double mass, double gravity, double J1, double J2, double J3)
    : m_(mass), g_(gravity), J_{J1, J2, J3} {
  for (double value : {mass, gravity, J1, J2, J3}) {
    if (!(std::isfinite(value) && value > 0.0)) {
      std::ostringstream msg;
      msg << "vehicle parameters must be finite and positive: m=" << mass << " g=" << gravity << " J=("
          << J1 << ", " << J2 << ", " << J3 << ")";
      throw Error(ErrorCode::InvalidParameter, msg.str());
    }
  }
}

VehicleParams VehicleParams::from_inertia(double mass, double gravity, const Mat3& inertia) {
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (r != c && inertia(r, c) != 0.0) {
        throw Error(ErrorCode::InvalidParameter, "inertia tensor must be diagonal in the body frame");
      }
    }
  }
  return {mass, gravity, inertia(0, 0), inertia(1, 1), inertia(2, 2)};
}

Vec3 gyroscopic_torque(const Vec3& omega, const VehicleParams& params) {
  const Vec3 J_omega{params.J1() * omega.x, params.J2() * omega.y, params.J3() * omega.z};
  return cross(omega, J_omega);
}

StateDerivative state_derivative(const RigidBodyState& s, const VehicleParams& params, const ControlInput& u) {
  const Vec3 b3 = body_axis(s.R, 3);
  StateDerivative d;
  d.dp = s.v;
  d.dv = (u.f / params.m()) * b3 - params.g() * Vec3::e3();
  d.dR = s.R.matrix() * hat(s.omega);
  d.domega = inverse_inertia(params, u.torque() - gyroscopic_torque(s.omega, params));
  return d;
}

AffineFields affine_fields(const RigidBodyState& s, const VehicleParams& params) {
  AffineFields a;
  a.a0 = {-inverse_inertia(params, gyroscopic_torque(s.omega, params)), -params.g() * Vec3::e3()};
  a.a_f = {Vec3{}, body_axis(s.R, 3) / params.m()};
  for (int i = 0; i < 3; ++i) {
    a.a_tau[static_cast<std::size_t>(i)] = {inverse_inertia(params, Vec3::unit(i + 1)), Vec3{}};
  }
  return a;
}

Twist AffineFields::evaluate(const ControlInput& u) const {
  return a0 + u.f * a_f + u.tau1 * a_tau[0] + u.tau2 * a_tau[1] + u.tau3 * a_tau[2];
}

}  // namespace vcpoint

#include "vcpoint/control.hpp"

#include <cmath>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint {

namespace {

struct Regular {
  double s2;
  double s3;
  double rho;
};

Regular require_regular(const RigidBodyState& s, const TaskSpec& spec) {
  const RegularityReport r = regularity(s, spec);
  if (!(std::abs(r.s3) >= spec.eps_s)) {
    std::ostringstream msg;
    msg << "|e3^T b3| = " << std::abs(r.s3) << " below eps_s " << spec.eps_s;
    throw Error(ErrorCode::SingularAttitude, msg.str());
  }
  if (!(r.rho >= spec.eps_rho)) {
    std::ostringstream msg;
    msg << "distance to target " << r.rho << " below eps_rho " << spec.eps_rho;
    throw Error(ErrorCode::TargetCollision, msg.str());
  }
  return {r.s2, r.s3, r.rho};
}

}  // namespace

void Gains::validate() const {
  for (double k : {k_z, k_O3, k_O2}) {
    if (!(std::isfinite(k) && k >= 0.0)) throw Error(ErrorCode::InvalidParameter, "gains must be finite and >= 0");
  }
}

double thrust_invariance(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec) {
  const double s3 = s.R.matrix()(2, 2);
  if (!(std::abs(s3) >= spec.eps_s)) {
    std::ostringstream msg;
    msg << "|e3^T b3| = " << std::abs(s3) << " below eps_s " << spec.eps_s;
    throw Error(ErrorCode::SingularAttitude, msg.str());
  }
  return params.m() * params.g() / s3;
}

TorquePair torques_invariance(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec) {
  const Regular reg = require_regular(s, spec);
  const double f = thrust_invariance(s, params, spec);
  const double sigma = spec.sign();
  const double m = params.m();
  const double g = params.g();
  const double J1 = params.J1();
  const double J2 = params.J2();
  const double J3 = params.J3();
  const Vec3& w = s.omega;
  const double v1 = s.body_velocity(1);

  TorquePair t;
  t.tau2 = J2 * (w.x * w.z + sigma * (g * reg.s3 - f / m) / reg.rho + (1.0 - sigma) * w.y * v1 / reg.rho) +
           (J1 - J3) * w.x * w.z;
  t.tau3 = J3 * (-w.x * w.y - sigma * g * reg.s2 / reg.rho + (1.0 - sigma) * w.z * v1 / reg.rho) +
           (J2 - J1) * w.x * w.y;
  return t;
}

ControlInput invariance_control(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec) {
  const TorquePair t = torques_invariance(s, params, spec);
  return {thrust_invariance(s, params, spec), 0.0, t.tau2, t.tau3};
}

ControlInput control_stabilized(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec,
                                const Gains& gains) {
  gains.validate();
  const Regular reg = require_regular(s, spec);
  const ResidualVector mu = residuals(s, spec);
  const double sigma = spec.sign();
  const double m = params.m();
  const double g = params.g();
  const double J1 = params.J1();
  const double J2 = params.J2();
  const double J3 = params.J3();
  const Vec3& w = s.omega;
  const double v1 = s.body_velocity(1);
  const double v2 = s.body_velocity(2);
  const double v3 = s.body_velocity(3);
  const double rho = reg.rho;
  const double rho_dot = dot(relative_position(s.p, spec), s.v) / rho;

  ControlInput u;
  u.f = m * (g - gains.k_z * mu.mu_z) / reg.s3;
  u.tau1 = 0.0;
  u.tau2 = J2 * (-gains.k_O2 * mu.mu_O2 - ((J3 - J1) / J2) * w.z * w.x -
                 sigma * (w.y * v1 - w.x * v2 + u.f / m - g * reg.s3) / rho + sigma * v3 * rho_dot / (rho * rho));
  u.tau3 = J3 * (-gains.k_O3 * mu.mu_O3 - ((J1 - J2) / J3) * w.x * w.y +
                 sigma * (w.x * v3 - w.z * v1 - g * reg.s2) / rho - sigma * v2 * rho_dot / (rho * rho));
  return u;
}

TransversalityMatrix transversality_matrix(const RigidBodyState& s, const VehicleParams& params,
                                           const TaskSpec& spec) {
  const Vec3 rel = relative_position(s.p, spec);
  const double rho = norm(rel);
  if (!(rho >= spec.eps_rho)) {
    std::ostringstream msg;
    msg << "distance to target " << rho << " below eps_rho " << spec.eps_rho;
    throw Error(ErrorCode::TargetCollision, msg.str());
  }
  const double sigma = spec.sign();
  const Vec3 b2 = body_axis(s.R, 2);
  const Vec3 b3 = body_axis(s.R, 3);
  const double m = params.m();

  // C^a = (A, B) with mu^a = A.omega + B.v; a_f = (0, b3/m), a_tau_i = (e_i/J_i, 0).
  TransversalityMatrix t;
  t.entries[0] = {b3.z / m, 0.0, 0.0};
  t.entries[1] = {-sigma * dot(b2, b3) / (m * rho), 0.0, 1.0 / params.J3()};
  t.entries[2] = {sigma * dot(b3, b3) / (m * rho), 1.0 / params.J2(), 0.0};

  const Mat3 M{{t.entries[0][0], t.entries[0][1], t.entries[0][2], t.entries[1][0], t.entries[1][1],
                t.entries[1][2], t.entries[2][0], t.entries[2][1], t.entries[2][2]}};
  t.det = M.determinant();
  return t;
}

}  // namespace vcpoint

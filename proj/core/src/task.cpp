#include "vcpoint/task.hpp"

#include <cmath>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint {

namespace {

double checked_range(const RigidBodyState& s, const TaskSpec& spec) {
  const double rho = norm(relative_position(s.p, spec));
  if (!(rho >= spec.eps_rho)) {
    std::ostringstream msg;
    msg << "distance to target " << rho << " below eps_rho " << spec.eps_rho;
    throw Error(ErrorCode::TargetCollision, msg.str());
  }
  return rho;
}

}  // namespace

void TaskSpec::validate() const {
  if (!is_finite(target) || !std::isfinite(z0)) {
    throw Error(ErrorCode::InvalidParameter, "task target and altitude must be finite");
  }
  if (!(eps_s > 0.0 && eps_s < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "eps_s must lie in (0, 1)");
  }
  if (!(eps_rho > 0.0 && std::isfinite(eps_rho))) {
    throw Error(ErrorCode::InvalidParameter, "eps_rho must be positive");
  }
}

ResidualVector residuals(const RigidBodyState& s, const TaskSpec& spec) {
  const double rho = checked_range(s, spec);
  const double sigma = spec.sign();
  return {
      s.v.z,
      s.omega.z - sigma * s.body_velocity(2) / rho,
      s.omega.y + sigma * s.body_velocity(3) / rho,
  };
}

TaskErrors task_errors(const RigidBodyState& s, const TaskSpec& spec) {
  const double rho = checked_range(s, spec);
  const Vec3 p_hat = relative_position(s.p, spec) / rho;
  return {norm(body_axis(s.R, 1) + p_hat), std::abs(s.p.z - spec.z0)};
}

RegularityReport regularity(const RigidBodyState& s, const TaskSpec& spec) {
  RegularityReport r;
  r.s3 = s.R.matrix()(2, 2);
  r.s2 = s.R.matrix()(2, 1);
  r.rho = norm(relative_position(s.p, spec));
  r.feasible = std::abs(r.s3) >= spec.eps_s && r.rho >= spec.eps_rho;
  return r;
}

Rotation complete_frame(const Vec3& b1_in) {
  const double n1 = norm(b1_in);
  if (!(n1 > 0.0) || !std::isfinite(n1)) {
    throw Error(ErrorCode::InfeasibleGeometry, "pointing axis must be a finite non-zero vector");
  }
  const Vec3 b1 = b1_in / n1;
  const Vec3 side = cross(Vec3::e3(), b1);
  const double ns = norm(side);
  if (ns < 1e-12) {
    throw Error(ErrorCode::InfeasibleGeometry, "pointing axis is vertical; frame completion undefined");
  }
  Vec3 b2 = side / ns;
  Vec3 b3 = cross(b1, b2);
  if (b3.z < 0.0) {
    b2 = -b2;
    b3 = -b3;
  }
  return project_to_so3(Mat3::from_columns(b1, b2, b3));
}

Vec3 compatible_angular_velocity(const Rotation& R, const Vec3& p, const Vec3& v, double omega1,
                                 const TaskSpec& spec) {
  const double rho = norm(relative_position(p, spec));
  if (!(rho >= spec.eps_rho)) {
    throw Error(ErrorCode::TargetCollision, "cannot build compatible rates this close to the target");
  }
  const double sigma = spec.sign();
  const double v2 = dot(body_axis(R, 2), v);
  const double v3 = dot(body_axis(R, 3), v);
  return {omega1, -sigma * v3 / rho, sigma * v2 / rho};
}

double relative_equilibrium_speed(const VehicleParams& params, const TaskSpec& spec) {
  const double height = spec.z0 - spec.target.z;
  if (height < 0.0) {
    throw Error(ErrorCode::InfeasibleGeometry, "no circular relative equilibrium below the target");
  }
  return std::sqrt(params.g() * height);
}

RigidBodyState on_manifold_init(double theta, double r, const TaskSpec& spec, double tangential_speed) {
  spec.validate();
  if (!(r > 0.0)) throw Error(ErrorCode::InfeasibleGeometry, "arc radius must be positive");

  const Vec3 rel{r * std::cos(theta), r * std::sin(theta), spec.z0 - spec.target.z};
  const double rho = norm(rel);
  if (rho < spec.eps_rho) throw Error(ErrorCode::InfeasibleGeometry, "initial point too close to the target");

  RigidBodyState s;
  s.p = spec.target + rel;
  s.R = complete_frame(-(rel / rho));
  const double s3 = s.R.matrix()(2, 2);
  if (std::abs(s3) < spec.eps_s) {
    std::ostringstream msg;
    msg << "completed frame has e3^T b3 = " << s3 << " below eps_s " << spec.eps_s;
    throw Error(ErrorCode::InfeasibleGeometry, msg.str());
  }

  // b2 is horizontal by construction, so e3^T v = 0 already.
  s.v = tangential_speed * body_axis(s.R, 2);
  s.v.z = 0.0;

  const double azimuth_rate = cross(Vec3{rel.x, rel.y, 0.0}, s.v).z / (r * r);
  const double omega1 = dot(body_axis(s.R, 1), azimuth_rate * Vec3::e3());
  s.omega = compatible_angular_velocity(s.R, s.p, s.v, omega1, spec);
  return s;
}

RigidBodyState perturb_vertical(const RigidBodyState& s, double delta) {
  RigidBodyState out = s;
  out.v.z += delta;
  return out;
}

}  // namespace vcpoint

#pragma once

// Geometry of the pointing + fixed-altitude task: body axis b1 locked to the
// line of sight towards a target (b1 = -p_hat) while e3^T p = z0.

#include "vcpoint/dynamics.hpp"
#include "vcpoint/se3.hpp"

namespace vcpoint {

/// Sign used in the two rotational velocity-level conditions.
///
/// geometric: the exact derivative of b1 + p_hat = 0, i.e. omega3 = -v2/rho and
///            omega2 = v3/rho. This is the distribution tangent to the task
///            manifold and is the default.
/// reversed:  omega3 = v2/rho and omega2 = -v3/rho, both signs flipped. Under
///            it the rotational residuals do not vanish along motions that
///            keep b1 = -p_hat.
enum class SignConvention { geometric, reversed };

struct TaskSpec {
  Vec3 target{};
  double z0 = 0.0;
  double eps_s = 0.1;
  double eps_rho = 0.1;
  SignConvention convention = SignConvention::geometric;

  /// +1 for reversed, -1 for geometric.
  double sign() const noexcept { return convention == SignConvention::reversed ? 1.0 : -1.0; }

  /// Throws Error{InvalidParameter} unless eps_s in (0, 1), eps_rho > 0 and all values finite.
  void validate() const;
};

/// Velocity-level residuals; zero exactly on the task distribution.
///   mu_z  = e3^T v
///   mu_O3 = omega3 - sign * v2 / rho
///   mu_O2 = omega2 + sign * v3 / rho
struct ResidualVector {
  double mu_z = 0.0;
  double mu_O3 = 0.0;
  double mu_O2 = 0.0;
};

struct TaskErrors {
  double e_pt = 0.0;  ///< ||b1 + p_hat||, in [0, 2]
  double e_z = 0.0;   ///< |e3^T p - z0|
};

struct RegularityReport {
  double s3 = 0.0;   ///< e3^T b3
  double s2 = 0.0;   ///< e3^T b2
  double rho = 0.0;  ///< ||p - target||
  bool feasible = false;
};

/// p - target.
inline Vec3 relative_position(const Vec3& p, const TaskSpec& spec) { return p - spec.target; }

/// Throws Error{TargetCollision} if rho < eps_rho.
ResidualVector residuals(const RigidBodyState& s, const TaskSpec& spec);

/// Throws Error{TargetCollision} if rho < eps_rho.
TaskErrors task_errors(const RigidBodyState& s, const TaskSpec& spec);

RegularityReport regularity(const RigidBodyState& s, const TaskSpec& spec);

/// Completes b1 to a right-handed frame: b2 = (e3 x b1)/||e3 x b1||, b3 = b1 x b2,
/// with (b2, b3) flipped jointly if e3^T b3 < 0. Throws Error{InfeasibleGeometry}
/// when b1 is (numerically) vertical.
Rotation complete_frame(const Vec3& b1);

/// Body rates (omega1, omega2, omega3) that zero the two rotational residuals at
/// (R, p, v) for the given free roll rate omega1.
Vec3 compatible_angular_velocity(const Rotation& R, const Vec3& p, const Vec3& v, double omega1,
                                 const TaskSpec& spec);

/// Horizontal speed of the circular relative equilibrium on the task manifold,
/// sqrt(g (z0 - target_z)). Throws Error{InfeasibleGeometry} if z0 < target_z.
double relative_equilibrium_speed(const VehicleParams& params, const TaskSpec& spec);

/// State on the task manifold at polar angle theta and horizontal radius r about
/// the target, altitude z0, frame from complete_frame(-p_hat), v =
/// tangential_speed * b2 and residuals zero. The roll rate omega1 is the
/// component along b1 of the azimuthal rate about the vertical, so that the frame
/// co-rotates with the line of sight.
/// Throws Error{InfeasibleGeometry} if r <= 0, rho < eps_rho or |s3| < eps_s.
RigidBodyState on_manifold_init(double theta, double r, const TaskSpec& spec, double tangential_speed);

/// Adds delta * e3 to v. mu_z shifts by exactly delta; the rotational residuals
/// shift through b2^T e3 and b3^T e3.
RigidBodyState perturb_vertical(const RigidBodyState& s, double delta);

}  // namespace vcpoint

#pragma once

// Closed-form invariance-enforcing and residual-stabilizing control laws for
// the pointing + altitude task, with inputs (f, tau2, tau3) and tau1 = 0.

#include <array>

#include "vcpoint/dynamics.hpp"
#include "vcpoint/task.hpp"

namespace vcpoint {

/// First-order residual decay rates (1/s). Zero gains recover the pure
/// invariance law on the constraint set.
struct Gains {
  double k_z = 0.0;
  double k_O3 = 0.0;
  double k_O2 = 0.0;

  /// Throws Error{InvalidParameter} on negative or non-finite gains.
  void validate() const;
};

struct TorquePair {
  double tau2 = 0.0;
  double tau3 = 0.0;
};

/// f = m g / (e3^T R e3). Throws Error{SingularAttitude} if |s3| < eps_s.
double thrust_invariance(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec);

/// Torques keeping the task distribution invariant, valid for states on it
/// (b1 = -p_hat, residuals zero):
///
///   tau2 = J2 (w1 w3 + sign (g s3 - f/m)/rho + (1 - sign) w2 v1/rho) + (J1 - J3) w1 w3
///   tau3 = J3 (-w1 w2 - sign g s2/rho + (1 - sign) w3 v1/rho) + (J2 - J1) w1 w2
///
/// with f from thrust_invariance(). The (1 - sign) terms vanish under the
/// reversed convention.
TorquePair torques_invariance(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec);

/// (thrust_invariance, 0, torques_invariance).
ControlInput invariance_control(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec);

/// Inputs imposing mu_dot = -k mu on every residual channel (f <-> mu_z,
/// tau3 <-> mu_O3, tau2 <-> mu_O2), valid anywhere in the feasible set. Uses
/// rho_dot = p_hat^T v. Reduces to invariance_control() where the residuals vanish.
/// Throws Error{SingularAttitude} or Error{TargetCollision} outside the feasible set.
ControlInput control_stabilized(const RigidBodyState& s, const VehicleParams& params, const TaskSpec& spec,
                                const Gains& gains);

/// Rows (mu_z, mu_O3, mu_O2), columns (f, tau2, tau3): entry (a, j) = C^a . a_j.
struct TransversalityMatrix {
  std::array<std::array<double, 3>, 3> entries{};
  double det = 0.0;
};

/// det equals -s3 / (m J2 J3). Throws Error{TargetCollision} if rho < eps_rho.
TransversalityMatrix transversality_matrix(const RigidBodyState& s, const VehicleParams& params,
                                           const TaskSpec& spec);

}  // namespace vcpoint

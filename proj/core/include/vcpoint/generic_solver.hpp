#pragma once

// Generic invariance-enforcing controller: for m velocity-level constraints
// mu^a = A^a(g).omega + B^a(g).v and m selected inputs, solve
//
//   G^a + sum_j u_j C^a.a_j = -k^a mu^a,   G^a = (dC^a . g_dot) . xi + C^a . a0
//
// for u. The coefficient rate dC^a . g_dot is taken from the constraint's
// analytic evaluator when present, otherwise by central differences on the group.

#include <functional>
#include <span>
#include <vector>

#include "vcpoint/dynamics.hpp"
#include "vcpoint/task.hpp"

namespace vcpoint {

enum class InputChannel { thrust, tau1, tau2, tau3 };

/// Coefficients (A, B) of a constraint one-form in the left trivialization.
struct ConstraintCoefficients {
  Vec3 angular;  ///< A, paired with omega
  Vec3 linear;   ///< B, paired with v
};

struct ConstraintEvaluator {
  /// (R, p) -> (A, B). Must be deterministic and side-effect free.
  std::function<ConstraintCoefficients(const Rotation&, const Vec3&)> coefficients;
  /// Optional: time derivative of (A, B) along R' = R hat(omega), p' = v.
  std::function<ConstraintCoefficients(const RigidBodyState&)> rate;
};

struct GenericConstraintSet {
  std::vector<ConstraintEvaluator> constraints;
  std::vector<InputChannel> inputs;
};

struct SolverOptions {
  /// Step for central differences of the coefficient maps.
  double fd_step = 1e-6;
  /// Largest accepted 2-norm condition number of the input matrix.
  double max_condition = 1e4;
};

/// Constraint value A.omega + B.v at the state.
double evaluate_constraint(const ConstraintEvaluator& c, const RigidBodyState& s);

/// Rate of the coefficients along the state's velocity; analytic when the
/// evaluator supplies one, otherwise central differences with the given step.
ConstraintCoefficients coefficient_rate(const ConstraintEvaluator& c, const RigidBodyState& s, double fd_step);

/// Throws Error{DimensionMismatch} if the constraint count, input count and gain
/// count disagree, fall outside 1..4 or repeat an input; Error{SingularSystem}
/// when the input matrix condition number exceeds options.max_condition.
ControlInput solve_invariance_generic(const RigidBodyState& s, const VehicleParams& params,
                                      const GenericConstraintSet& cs, std::span<const double> gains,
                                      const SolverOptions& options = {});

/// The pointing + altitude task as a generic set with inputs (f, tau2, tau3),
/// constraints ordered (mu_z, mu_O3, mu_O2). With analytic_rates the exact
/// coefficient derivatives are attached; otherwise the solver differentiates
/// numerically.
GenericConstraintSet task_constraint_set(const TaskSpec& spec, bool analytic_rates = false);

}  // namespace vcpoint

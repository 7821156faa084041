#pragma once

// Fixed-step classical Runge-Kutta integration of the closed loop. The
// rotation is integrated in the ambient 3x3 space and re-projected onto SO(3)
// on a fixed schedule. Stage states are projected before the control policy
// and vector field are evaluated, so every policy call sees a valid rotation.

#include <cstddef>
#include <functional>
#include <vector>

#include "vcpoint/dynamics.hpp"
#include "vcpoint/error.hpp"
#include "vcpoint/task.hpp"

namespace vcpoint {

using Policy = std::function<ControlInput(const RigidBodyState&)>;

struct SimConfig {
  double h = 1e-3;
  double T = 10.0;
  int reorthonormalize_every = 1;
  bool abort_on_infeasible = true;

  /// Throws Error{InvalidParameter} unless 0 < h <= T and reorthonormalize_every >= 1.
  void validate() const;
  /// Number of steps, round(T / h).
  std::size_t step_count() const;
};

struct TrajectorySample {
  double t = 0.0;
  RigidBodyState state;
  ControlInput input;
  ResidualVector residuals;
  TaskErrors errors;
  RegularityReport regularity;
};

/// Raised by simulate() when the trajectory leaves the feasible set or the
/// policy fails. Carries the samples recorded up to the last valid one.
class SimulationAborted : public Error {
 public:
  SimulationAborted(const std::string& message, std::size_t last_valid_index,
                    std::vector<TrajectorySample> samples)
      : Error(ErrorCode::InfeasibleEncountered, message),
        last_valid_index_(last_valid_index),
        samples_(std::move(samples)) {}

  std::size_t last_valid_index() const noexcept { return last_valid_index_; }
  const std::vector<TrajectorySample>& samples() const noexcept { return samples_; }

 private:
  std::size_t last_valid_index_;
  std::vector<TrajectorySample> samples_;
};

/// One RK4 step of size h. Policy errors surface as Error{PolicyFailure}. With
/// reproject the result rotation is the polar projection of the ambient update;
/// otherwise the ambient update must already be a rotation within tolerance.
RigidBodyState rk4_step(const RigidBodyState& s, double h, const Policy& policy, const VehicleParams& params,
                        bool reproject = true);

/// Samples at t = k h for k = 0..round(T/h). If the regularity monitor fails
/// with abort_on_infeasible set, or the policy fails at any stage, throws
/// SimulationAborted.
std::vector<TrajectorySample> simulate(const RigidBodyState& init, const Policy& policy,
                                       const VehicleParams& params, const TaskSpec& spec,
                                       const SimConfig& cfg);

/// Builds the sample record for a state (policy evaluated at the state).
TrajectorySample make_sample(double t, const RigidBodyState& s, const Policy& policy,
                             const TaskSpec& spec);

}  // namespace vcpoint

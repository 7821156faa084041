#include "vcpoint/integrator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vcpoint {

namespace {

// Integration variables; R is not required to be orthonormal between projections.
struct AmbientState {
  Mat3 R;
  Vec3 p;
  Vec3 v;
  Vec3 omega;
};

struct AmbientRate {
  Mat3 dR;
  Vec3 dp;
  Vec3 dv;
  Vec3 domega;
};

AmbientState to_ambient(const RigidBodyState& s) { return {s.R.matrix(), s.p, s.v, s.omega}; }

RigidBodyState projected_view(const AmbientState& a) { return {project_to_so3(a.R), a.p, a.v, a.omega}; }

AmbientState advance(const AmbientState& a, const AmbientRate& k, double scale) {
  return {a.R + scale * k.dR, a.p + scale * k.dp, a.v + scale * k.dv, a.omega + scale * k.domega};
}

ControlInput call_policy(const Policy& policy, const RigidBodyState& s) {
  try {
    return policy(s);
  } catch (const Error& e) {
    throw Error(ErrorCode::PolicyFailure, e.what());
  }
}

AmbientRate rate(const AmbientState& a, const Policy& policy, const VehicleParams& params) {
  const RigidBodyState view = projected_view(a);
  const StateDerivative d = state_derivative(view, params, call_policy(policy, view));
  return {d.dR, d.dp, d.dv, d.domega};
}

AmbientState rk4_ambient(const AmbientState& a, double h, const Policy& policy, const VehicleParams& params) {
  const AmbientRate k1 = rate(a, policy, params);
  const AmbientRate k2 = rate(advance(a, k1, 0.5 * h), policy, params);
  const AmbientRate k3 = rate(advance(a, k2, 0.5 * h), policy, params);
  const AmbientRate k4 = rate(advance(a, k3, h), policy, params);
  const double w = h / 6.0;
  AmbientState out = a;
  out.R += w * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
  out.p += w * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  out.v += w * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  out.omega += w * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (!(std::isfinite(h) && h > 0.0)) throw Error(ErrorCode::InvalidParameter, "step size must be positive");
  if (!(std::isfinite(T) && T > 0.0)) throw Error(ErrorCode::InvalidParameter, "horizon must be positive");
  if (h > T) throw Error(ErrorCode::InvalidParameter, "step size exceeds horizon");
  if (reorthonormalize_every < 1) {
    throw Error(ErrorCode::InvalidParameter, "reorthonormalize_every must be at least 1");
  }
}

std::size_t SimConfig::step_count() const { return static_cast<std::size_t>(std::llround(T / h)); }

RigidBodyState rk4_step(const RigidBodyState& s, double h, const Policy& policy, const VehicleParams& params,
                        bool reproject) {
  const AmbientState next = rk4_ambient(to_ambient(s), h, policy, params);
  return {reproject ? project_to_so3(next.R) : Rotation(next.R), next.p, next.v, next.omega};
}

TrajectorySample make_sample(double t, const RigidBodyState& s, const Policy& policy, const TaskSpec& spec) {
  TrajectorySample sample;
  sample.t = t;
  sample.state = s;
  sample.regularity = regularity(s, spec);
  sample.input = call_policy(policy, s);
  if (sample.regularity.rho >= spec.eps_rho) {
    sample.residuals = residuals(s, spec);
    sample.errors = task_errors(s, spec);
  } else {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    sample.residuals = {nan, nan, nan};
    sample.errors = {nan, std::abs(s.p.z - spec.z0)};
  }
  return sample;
}

std::vector<TrajectorySample> simulate(const RigidBodyState& init, const Policy& policy,
                                       const VehicleParams& params, const TaskSpec& spec,
                                       const SimConfig& cfg) {
  cfg.validate();
  spec.validate();
  const std::size_t steps = cfg.step_count();
  const auto every = static_cast<std::size_t>(cfg.reorthonormalize_every);

  std::vector<TrajectorySample> samples;
  samples.reserve(steps + 1);

  const auto fail = [&](std::size_t k, const std::string& why) {
    std::ostringstream msg;
    msg << "step " << k << " (t = " << static_cast<double>(k) * cfg.h << "): " << why;
    const std::size_t last = samples.empty() ? 0 : samples.size() - 1;
    throw SimulationAborted(msg.str(), last, std::move(samples));
  };

  AmbientState amb = to_ambient(init);
  for (std::size_t k = 0;; ++k) {
    RigidBodyState state = init;
    if (k > 0) {
      try {
        state = {Rotation(amb.R), amb.p, amb.v, amb.omega};
      } catch (const Error& e) {
        fail(k, e.what());
      }
    }

    const RegularityReport reg = regularity(state, spec);
    if (!reg.feasible && cfg.abort_on_infeasible) {
      std::ostringstream why;
      why << "regularity lost (|s3| = " << std::abs(reg.s3) << ", rho = " << reg.rho << ")";
      fail(k, why.str());
    }
    try {
      samples.push_back(make_sample(static_cast<double>(k) * cfg.h, state, policy, spec));
    } catch (const Error& e) {
      fail(k, e.what());
    }

    if (k == steps) break;
    try {
      amb = rk4_ambient(amb, cfg.h, policy, params);
      if ((k + 1) % every == 0) amb.R = project_to_so3(amb.R).matrix();
    } catch (const Error& e) {
      fail(k + 1, e.what());
    }
  }
  return samples;
}

}  // namespace vcpoint

#include "vcpoint/generic_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint {

namespace {

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

Twist input_direction(const AffineFields& fields, InputChannel channel) {
  switch (channel) {
    case InputChannel::thrust: return fields.a_f;
    case InputChannel::tau1: return fields.a_tau[0];
    case InputChannel::tau2: return fields.a_tau[1];
    case InputChannel::tau3: return fields.a_tau[2];
  }
  return {};
}

double pair(const ConstraintCoefficients& c, const Twist& xi) {
  return dot(c.angular, xi.angular) + dot(c.linear, xi.linear);
}

void assign(ControlInput& u, InputChannel channel, double value) {
  switch (channel) {
    case InputChannel::thrust: u.f = value; break;
    case InputChannel::tau1: u.tau1 = value; break;
    case InputChannel::tau2: u.tau2 = value; break;
    case InputChannel::tau3: u.tau3 = value; break;
  }
}

void check_dimensions(const GenericConstraintSet& cs, std::size_t gain_count) {
  const std::size_t m = cs.constraints.size();
  std::ostringstream msg;
  if (m < 1 || m > 4) {
    msg << "constraint count " << m << " outside 1..4";
  } else if (cs.inputs.size() != m) {
    msg << cs.inputs.size() << " inputs selected for " << m << " constraints";
  } else if (gain_count != m) {
    msg << gain_count << " gains supplied for " << m << " constraints";
  } else {
    std::vector<InputChannel> sorted = cs.inputs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) msg << "input channel selected twice";
  }
  if (!msg.str().empty()) throw Error(ErrorCode::DimensionMismatch, msg.str());
}

ConstraintCoefficients scaled_difference(const ConstraintCoefficients& plus, const ConstraintCoefficients& minus,
                                         double inv_width) {
  return {(plus.angular - minus.angular) * inv_width, (plus.linear - minus.linear) * inv_width};
}

}  // namespace

double evaluate_constraint(const ConstraintEvaluator& c, const RigidBodyState& s) {
  const ConstraintCoefficients coeff = c.coefficients(s.R, s.p);
  return dot(coeff.angular, s.omega) + dot(coeff.linear, s.v);
}

ConstraintCoefficients coefficient_rate(const ConstraintEvaluator& c, const RigidBodyState& s, double fd_step) {
  if (c.rate) return c.rate(s);
  // First-order exponential updates R (I +- h hat(omega)), re-projected to SO(3).
  const Mat3 step = fd_step * (s.R.matrix() * hat(s.omega));
  const Rotation r_plus = project_to_so3(s.R.matrix() + step);
  const Rotation r_minus = project_to_so3(s.R.matrix() - step);
  const ConstraintCoefficients plus = c.coefficients(r_plus, s.p + fd_step * s.v);
  const ConstraintCoefficients minus = c.coefficients(r_minus, s.p - fd_step * s.v);
  return scaled_difference(plus, minus, 0.5 / fd_step);
}

ControlInput solve_invariance_generic(const RigidBodyState& s, const VehicleParams& params,
                                      const GenericConstraintSet& cs, std::span<const double> gains,
                                      const SolverOptions& options) {
  check_dimensions(cs, gains.size());
  const auto m = static_cast<Eigen::Index>(cs.constraints.size());
  const AffineFields fields = affine_fields(s, params);
  const Twist xi{s.omega, s.v};

  SmallMatrix M(m, m);
  SmallVector rhs(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const ConstraintEvaluator& c = cs.constraints[static_cast<std::size_t>(a)];
    const ConstraintCoefficients coeff = c.coefficients(s.R, s.p);
    const ConstraintCoefficients rate = coefficient_rate(c, s, options.fd_step);
    const double G = pair(rate, xi) + pair(coeff, fields.a0);
    const double mu = pair(coeff, xi);
    rhs(a) = -G - gains[static_cast<std::size_t>(a)] * mu;
    for (Eigen::Index j = 0; j < m; ++j) {
      M(a, j) = pair(coeff, input_direction(fields, cs.inputs[static_cast<std::size_t>(j)]));
    }
  }

  const Eigen::JacobiSVD<SmallMatrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smallest = sv(m - 1);
  const double condition = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(condition <= options.max_condition)) {
    std::ostringstream msg;
    msg << "input matrix condition number " << condition << " exceeds " << options.max_condition
        << " (transversality lost)";
    throw Error(ErrorCode::SingularSystem, msg.str());
  }
  const SmallVector solution = svd.solve(rhs);

  ControlInput u;
  for (Eigen::Index j = 0; j < m; ++j) assign(u, cs.inputs[static_cast<std::size_t>(j)], solution(j));
  return u;
}

GenericConstraintSet task_constraint_set(const TaskSpec& spec, bool analytic_rates) {
  const double sigma = spec.sign();
  const Vec3 target = spec.target;

  ConstraintEvaluator altitude;
  altitude.coefficients = [](const Rotation&, const Vec3&) {
    return ConstraintCoefficients{Vec3{}, Vec3::e3()};
  };

  // mu_O3 = e3.omega - sigma b2.v / rho
  ConstraintEvaluator yaw;
  yaw.coefficients = [sigma, target](const Rotation& R, const Vec3& p) {
    return ConstraintCoefficients{Vec3::e3(), (-sigma / norm(p - target)) * body_axis(R, 2)};
  };

  // mu_O2 = e2.omega + sigma b3.v / rho
  ConstraintEvaluator pitch;
  pitch.coefficients = [sigma, target](const Rotation& R, const Vec3& p) {
    return ConstraintCoefficients{Vec3::e2(), (sigma / norm(p - target)) * body_axis(R, 3)};
  };

  if (analytic_rates) {
    altitude.rate = [](const RigidBodyState&) { return ConstraintCoefficients{}; };
    // d/dt (b / rho) = (w x b)/rho - b rho_dot / rho^2 with w = R omega.
    const auto axis_over_rho_rate = [target](const RigidBodyState& s, int axis) {
      const Vec3 rel = s.p - target;
      const double rho = norm(rel);
      const double rho_dot = dot(rel, s.v) / rho;
      const Vec3 b = body_axis(s.R, axis);
      return cross(s.R * s.omega, b) / rho - (rho_dot / (rho * rho)) * b;
    };
    yaw.rate = [sigma, axis_over_rho_rate](const RigidBodyState& s) {
      return ConstraintCoefficients{Vec3{}, -sigma * axis_over_rho_rate(s, 2)};
    };
    pitch.rate = [sigma, axis_over_rho_rate](const RigidBodyState& s) {
      return ConstraintCoefficients{Vec3{}, sigma * axis_over_rho_rate(s, 3)};
    };
  }

  GenericConstraintSet cs;
  cs.constraints = {altitude, yaw, pitch};
  cs.inputs = {InputChannel::thrust, InputChannel::tau2, InputChannel::tau3};
  return cs;
}

}  // namespace vcpoint

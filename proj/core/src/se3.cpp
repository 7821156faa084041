#include "vcpoint/se3.hpp"

#include <Eigen/Dense>

#include <ostream>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint {

namespace {

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(r, c) = m(r, c);
  }
  return out;
}

Mat3 from_eigen(const Eigen::Matrix3d& m) {
  Mat3 out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(r, c) = m(r, c);
  }
  return out;
}

}  // namespace

Vec3 Vec3::unit(int i) {
  switch (i) {
    case 1: return e1();
    case 2: return e2();
    case 3: return e3();
    default: throw Error(ErrorCode::InvalidParameter, "axis index must be 1, 2 or 3, got " + std::to_string(i));
  }
}

double frobenius_norm(const Mat3& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

bool is_finite(const Mat3& m) {
  for (double v : m.a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Vec3 vee(const Mat3& m) {
  const double residual = frobenius_norm(m + m.transposed());
  if (!(residual <= kSkewTolerance)) {
    std::ostringstream msg;
    msg << "symmetry residual " << residual << " exceeds " << kSkewTolerance;
    throw Error(ErrorCode::NotSkew, msg.str());
  }
  // Average the two off-diagonal copies of each component.
  return {0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))};
}

double Rotation::orthogonality_error(const Mat3& m) {
  return frobenius_norm(m.transposed() * m - Mat3::identity());
}

bool Rotation::is_rotation(const Mat3& m, double tol) {
  return is_finite(m) && orthogonality_error(m) <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

Rotation::Rotation(const Mat3& m) : m_(m) {
  if (!is_rotation(m)) {
    std::ostringstream msg;
    msg << "||R^T R - I||_F = " << orthogonality_error(m) << ", det = " << m.determinant();
    throw Error(ErrorCode::InvalidRotation, msg.str());
  }
}

Rotation Rotation::about_x(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Rotation r;
  r.m_ = {{1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c}};
  return r;
}

Rotation Rotation::about_y(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Rotation r;
  r.m_ = {{c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c}};
  return r;
}

Rotation Rotation::about_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Rotation r;
  r.m_ = {{c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0}};
  return r;
}

Rotation Rotation::transposed() const {
  Rotation r;
  r.m_ = m_.transposed();
  return r;
}

Rotation operator*(const Rotation& l, const Rotation& r) {
  Rotation out;
  out.m_ = l.m_ * r.m_;
  return out;
}

Vec3 body_axis(const Rotation& r, int i) {
  if (i < 1 || i > 3) {
    throw Error(ErrorCode::InvalidParameter, "body axis index must be 1, 2 or 3, got " + std::to_string(i));
  }
  return r.matrix().column(static_cast<std::size_t>(i - 1));
}

Rotation project_to_so3(const Mat3& m) {
  if (!is_finite(m)) throw Error(ErrorCode::Degenerate, "matrix has non-finite entries");
  const double det = m.determinant();
  if (!(det > 0.0)) {
    std::ostringstream msg;
    msg << "determinant " << det << " is not positive";
    throw Error(ErrorCode::Degenerate, msg.str());
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  if (sv(2) <= 1e-12 * sv(0)) throw Error(ErrorCode::Degenerate, "matrix is numerically singular");
  // det(m) > 0 implies det(U V^T) = +1, so the polar factor is already proper.
  return Rotation(from_eigen(svd.matrixU() * svd.matrixV().transpose()));
}

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

std::ostream& operator<<(std::ostream& os, const Mat3& m) {
  os << '[';
  for (std::size_t r = 0; r < 3; ++r) {
    os << (r ? "; " : "") << m(r, 0) << ' ' << m(r, 1) << ' ' << m(r, 2);
  }
  return os << ']';
}

}  // namespace vcpoint

#pragma once

// Elementary SO(3)/SE(3) machinery: small fixed-size vectors and matrices,
// the hat/vee isomorphism, body axes and projection back onto SO(3).

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>

namespace vcpoint {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  static constexpr Vec3 e1() { return {1.0, 0.0, 0.0}; }
  static constexpr Vec3 e2() { return {0.0, 1.0, 0.0}; }
  static constexpr Vec3 e3() { return {0.0, 0.0, 1.0}; }
  /// Unit basis vector, i in 1..3.
  static Vec3 unit(int i);
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// 3x3 matrix stored row-major.
struct Mat3 {
  std::array<double, 9> a{};

  constexpr double operator()(std::size_t r, std::size_t c) const { return a[3 * r + c]; }
  constexpr double& operator()(std::size_t r, std::size_t c) { return a[3 * r + c]; }

  static constexpr Mat3 zero() { return {}; }
  static constexpr Mat3 identity() { return {{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}}; }
  static constexpr Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return {{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }
  static constexpr Mat3 diagonal(const Vec3& d) { return {{d.x, 0.0, 0.0, 0.0, d.y, 0.0, 0.0, 0.0, d.z}}; }

  constexpr Vec3 column(std::size_t c) const { return {a[c], a[3 + c], a[6 + c]}; }
  constexpr Vec3 row(std::size_t r) const { return {a[3 * r], a[3 * r + 1], a[3 * r + 2]}; }

  constexpr Mat3 transposed() const {
    return {{a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]}};
  }

  constexpr double determinant() const {
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) a[i] += o.a[i];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) a[i] -= o.a[i];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (double& v : a) v *= s;
    return *this;
  }

  friend constexpr Mat3 operator+(Mat3 l, const Mat3& r) { return l += r; }
  friend constexpr Mat3 operator-(Mat3 l, const Mat3& r) { return l -= r; }
  friend constexpr Mat3 operator*(Mat3 m, double s) { return m *= s; }
  friend constexpr Mat3 operator*(double s, Mat3 m) { return m *= s; }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

  friend constexpr Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {m.a[0] * v.x + m.a[1] * v.y + m.a[2] * v.z, m.a[3] * v.x + m.a[4] * v.y + m.a[5] * v.z,
            m.a[6] * v.x + m.a[7] * v.y + m.a[8] * v.z};
  }

  friend constexpr Mat3 operator*(const Mat3& l, const Mat3& r) {
    Mat3 out;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += l(i, k) * r(k, j);
        out(i, j) = s;
      }
    }
    return out;
  }
};

double frobenius_norm(const Mat3& m);
bool is_finite(const Mat3& m);

/// Skew-symmetric matrix with hat(v) * w == cross(v, w).
constexpr Mat3 hat(const Vec3& v) {
  return {{0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0}};
}

/// Symmetry residual allowed by vee() before it rejects the input.
inline constexpr double kSkewTolerance = 1e-9;

/// Inverse of hat(). Throws Error{NotSkew} when M + M^T exceeds kSkewTolerance.
Vec3 vee(const Mat3& m);

/// Tolerance on ||R^T R - I||_F and |det R - 1| accepted by Rotation.
inline constexpr double kRotationTolerance = 1e-9;

/// A rotation matrix. Construction from an arbitrary Mat3 is checked against
/// kRotationTolerance; use project_to_so3() to repair a drifted matrix first.
class Rotation {
 public:
  Rotation() = default;
  /// Throws Error{InvalidRotation} if m is not a rotation within tolerance.
  explicit Rotation(const Mat3& m);

  static Rotation from_columns(const Vec3& b1, const Vec3& b2, const Vec3& b3) {
    return Rotation(Mat3::from_columns(b1, b2, b3));
  }
  static Rotation about_x(double angle);
  static Rotation about_y(double angle);
  static Rotation about_z(double angle);

  const Mat3& matrix() const noexcept { return m_; }
  Rotation transposed() const;

  friend Rotation operator*(const Rotation& l, const Rotation& r);
  friend Vec3 operator*(const Rotation& r, const Vec3& v) { return r.m_ * v; }
  friend bool operator==(const Rotation&, const Rotation&) = default;

  /// Deviation from orthonormality, ||R^T R - I||_F.
  static double orthogonality_error(const Mat3& m);
  static bool is_rotation(const Mat3& m, double tol = kRotationTolerance);

 private:
  Mat3 m_ = Mat3::identity();
};

/// Body axis b_i = R e_i (column i of R), i in 1..3.
Vec3 body_axis(const Rotation& r, int i);

/// Frobenius-nearest rotation (orthogonal polar factor). Throws
/// Error{Degenerate} if m is singular or has non-positive determinant.
Rotation project_to_so3(const Mat3& m);

std::ostream& operator<<(std::ostream& os, const Vec3& v);
std::ostream& operator<<(std::ostream& os, const Mat3& m);

}  // namespace vcpoint

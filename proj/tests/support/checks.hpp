#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "vcpoint/error.hpp"
#include "vcpoint/se3.hpp"

namespace vcpoint::fixtures {

inline void expect_vec_near(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

/// Error code raised by f; records a failure if nothing is thrown.
inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::ConfigError;
}

}  // namespace vcpoint::fixtures

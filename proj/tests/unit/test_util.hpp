#pragma once

#include <gtest/gtest.h>

#include <initializer_list>

#include "conehull/errors.hpp"
#include "conehull/linalg.hpp"

namespace testutil {

inline conehull::Vec vec(std::initializer_list<double> xs) {
  conehull::Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Eigen::Vector2d v2(const conehull::Vec& v) { return {v(0), v(1)}; }
inline Eigen::Vector3d v3(const conehull::Vec& v) { return {v(0), v(1), v(2)}; }

}  // namespace testutil

#define EXPECT_ERROR_KIND(stmt, k)                                          \
  do {                                                                      \
    try {                                                                   \
      stmt;                                                                 \
      ADD_FAILURE() << "expected " << conehull::to_string(k);               \
    } catch (const conehull::Error& e) {                                    \
      EXPECT_EQ(e.kind(), k) << e.what();                                   \
    }                                                                       \
  } while (0)

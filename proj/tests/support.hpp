#pragma once

#include <gtest/gtest.h>

#include "ietlab/error.hpp"
#include "ietlab/iet.hpp"

#define EXPECT_IETLAB_ERROR(stmt, expected_code)                                     \
  do {                                                                               \
    try {                                                                            \
      stmt;                                                                          \
      ADD_FAILURE() << "no error from " #stmt;                                       \
    } catch (const ietlab::Error& e) {                                               \
      EXPECT_EQ(e.code(), expected_code) << e.what();                                \
    }                                                                                \
  } while (0)

namespace fixtures {

inline ietlab::QuadReal q(long num, long den = 1) { return ietlab::QuadReal(ietlab::Rational(num, den)); }

// sigma = (2 1), alpha = (sqrt2 - 1, 2 - sqrt2)
inline ietlab::Iet sqrt2() {
  auto r = ietlab::sqrt_of(2);
  return ietlab::Iet(ietlab::Permutation({2, 1}), {r - 1, 2 - r});
}

// sigma = (2 1), alpha = ((sqrt5 - 1)/2, (3 - sqrt5)/2)
inline ietlab::Iet golden() {
  auto r = ietlab::sqrt_of(5);
  return ietlab::Iet(ietlab::Permutation({2, 1}), {(r - 1) * q(1, 2), (3 - r) * q(1, 2)});
}

}  // namespace fixtures

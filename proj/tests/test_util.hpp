#pragma once

#include <doctest.h>

#include <string>

#include "lfunkit/complexap.hpp"
#include "lfunkit/real.hpp"

namespace lfunkit::test {

inline bool close_abs(const Real& a, const Real& b, long digits) {
  return abs(a - b) < pow10(-digits);
}

inline bool close_abs(const Complex& a, const Complex& b, long digits) {
  return abs(a - b) < pow10(-digits);
}

inline bool close_rel(const Real& a, const Real& b, long digits) {
  return abs(a - b) < pow10(-digits) * (abs(b) + Real(1));
}

#define CHECK_CLOSE(a, b, digits)                                              \
  do {                                                                         \
    auto va = (a);                                                             \
    auto vb = (b);                                                             \
    bool ok = lfunkit::test::close_abs(va, vb, (digits));                      \
    if (!ok)                                                                   \
      FAIL_CHECK("not close to " << #digits << " digits: " << va.str(25)       \
                                 << " vs " << vb.str(25));                     \
    else                                                                       \
      CHECK(ok);                                                               \
  } while (0)

}  // namespace lfunkit::test

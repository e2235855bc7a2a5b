#ifndef WARMFLOW_CHECKED_H_
#define WARMFLOW_CHECKED_H_

#include <cstdint>
#include <string>

#include "warmflow/errors.h"

namespace warmflow {

// Overflow on any of these is a hard error, never wraparound.

inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in " + std::to_string(a) + " + " +
                        std::to_string(b));
  }
  return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in " + std::to_string(a) + " - " +
                        std::to_string(b));
  }
  return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in " + std::to_string(a) + " * " +
                        std::to_string(b));
  }
  return r;
}

inline int64_t checked_abs(int64_t a) {
  if (a == INT64_MIN) throw OverflowError("int64 overflow in abs");
  return a < 0 ? -a : a;
}

inline int64_t narrow_int128(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw OverflowError("int64 overflow narrowing 128-bit intermediate");
  }
  return static_cast<int64_t>(v);
}

}  // namespace warmflow

#endif  // WARMFLOW_CHECKED_H_

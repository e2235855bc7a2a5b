#ifndef WARMFLOW_RATIONAL_H_
#define WARMFLOW_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "warmflow/checked.h"

namespace warmflow {

// Exact fraction over int64, always normalized (den > 0, gcd 1).
// Intermediates are computed in 128 bits and narrowed with a check.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int64_t num) : num_(num), den_(1) {}  // NOLINT: implicit by intent
  Rational(int64_t num, int64_t den) { assign(num, den); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  // Accepts "a/b" or "a".
  static Rational parse(const std::string& text);
  std::string to_string() const;
  double to_double() const { return static_cast<double>(num_) / den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ +
                       static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ -
                       static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InputError("rational division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_,
                   static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(checked_sub(0, num_), den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from128(__int128 num, __int128 den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    Rational r;
    r.num_ = narrow_int128(num);
    r.den_ = narrow_int128(den);
    return r;
  }

  void assign(int64_t num, int64_t den) { *this = from128(num, den); }

  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace warmflow

#endif  // WARMFLOW_RATIONAL_H_

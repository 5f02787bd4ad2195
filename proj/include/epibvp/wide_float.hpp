#pragma once

// Extended-precision scalars used where the iterates of large-|a| branches
// carry coefficients of order 1e10..1e30 whose alternating sum at r = 1 is O(1).
//
// DoubleDouble is an unevaluated sum hi + lo of two doubles (about 106 bits).
// Quad is the compiler's binary128 type when available (113 bits, software).
// Wide is a 200-bit software float for the few evaluations binary128 cannot
// resolve (|a| around 100 and beyond).

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace epibvp {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const noexcept { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble fast_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

}  // namespace dd_detail

inline DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  const DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::fast_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::fast_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept {
  const double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::fast_two_sum(p, e);
}

inline DoubleDouble operator*(DoubleDouble a, double b) noexcept {
  const double p = a.hi * b;
  double e = std::fma(a.hi, b, -p);
  e += a.lo * b;
  return dd_detail::fast_two_sum(p, e);
}

inline DoubleDouble operator/(DoubleDouble a, double b) noexcept {
  const double q1 = a.hi / b;
  const DoubleDouble r = a - DoubleDouble(q1) * b;
  return dd_detail::fast_two_sum(q1, r.hi / b);
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) noexcept { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, DoubleDouble b) noexcept { return a = a - b; }

inline DoubleDouble abs(DoubleDouble a) noexcept { return a.hi < 0.0 ? -a : a; }

#if defined(__SIZEOF_FLOAT128__)
using Quad = __float128;
#else
using Quad = long double;
#endif

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>,
                                          boost::multiprecision::et_off>;

/// Unit roundoff of each scalar used by the precision tiers.
template <class T>
constexpr double unit_roundoff();
template <>
constexpr double unit_roundoff<double>() { return 0x1p-53; }
template <>
constexpr double unit_roundoff<DoubleDouble>() { return 0x1p-104; }
template <>
constexpr double unit_roundoff<Quad>() {
#if defined(__SIZEOF_FLOAT128__)
  return 0x1p-113;
#else
  return std::numeric_limits<long double>::epsilon() / 2;
#endif
}

template <>
constexpr double unit_roundoff<Wide>() { return 0x1p-200; }

inline double to_double(double x) noexcept { return x; }
inline double to_double(DoubleDouble x) noexcept { return x.hi + x.lo; }
inline double to_double(Quad x) noexcept { return static_cast<double>(x); }
inline double to_double(const Wide& x) { return x.convert_to<double>(); }

}  // namespace epibvp

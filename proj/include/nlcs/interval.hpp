#pragma once

#include <algorithm>
#include <optional>

#include "rational.hpp"
#include "upoly.hpp"

namespace nlcs {

/// Closed rational interval [lo, hi]; used for conservative sign filters.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& v) { return {v, v}; }

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  /// Sign of every member, when that sign is uniform and nonzero (or the point 0).
  std::optional<Sign> definite_sign() const {
    if (lo > 0) return Sign::Positive;
    if (hi < 0) return Sign::Negative;
    if (lo == 0 && hi == 0) return Sign::Zero;
    return std::nullopt;
  }
  Rational width() const { return hi - lo; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  friend Interval operator*(const Rational& s, const Interval& a) {
    if (s >= 0) return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
  }
};

inline Interval pow(const Interval& a, unsigned k) {
  if (k == 0) return Interval::point(1);
  if (k % 2 == 1) return {pow_of(a.lo, k), pow_of(a.hi, k)};
  Rational l = pow_of(a.lo, k), h = pow_of(a.hi, k);
  if (a.lo <= 0 && a.hi >= 0) return {Rational(0), std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}

/// Horner evaluation of p over x; encloses the range of p on x.
inline Interval eval(const UPoly& p, const Interval& x) {
  Interval acc = Interval::point(0);
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + Interval::point(c[i]);
  return acc;
}

}  // namespace nlcs

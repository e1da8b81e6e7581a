#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace nlcs {

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

/// A real algebraic number: the unique root of `defining` in the open
/// interval (lo, hi), or a rational when `exact` is set (then lo = hi).
///
/// Refinement narrows the cached interval in place. It never changes the
/// number, so the refining members are const; do not refine one object from
/// two threads at once.
class RealAlgebraic {
 public:
  RealAlgebraic() : RealAlgebraic(Rational(0)) {}
  RealAlgebraic(const Rational& q)  // NOLINT: rationals convert implicitly
      : defining_(UPoly::linear_root(q).normalized()), lo_(q), hi_(q), exact_(q) {}

  /// `p` squarefree with exactly one root in (lo, hi) and nonzero at both ends.
  static RealAlgebraic from_interval(const UPoly& p, const Rational& lo, const Rational& hi) {
    RealAlgebraic a;
    a.defining_ = p.normalized();
    a.lo_ = lo;
    a.hi_ = hi;
    a.exact_.reset();
    a.lo_sign_ = a.defining_.sign_at(lo);
    return a;
  }

  const UPoly& defining() const { return defining_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_rational() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }
  Interval interval() const { return {lo_, hi_}; }
  Rational width() const { return hi_ - lo_; }

  /// One bisection step. May discover the number is rational.
  void bisect() const {
    if (exact_) return;
    Rational mid = (lo_ + hi_) / 2;
    Sign s = defining_.sign_at(mid);
    if (s == Sign::Zero) {
      become_exact(mid);
    } else if (s == lo_sign_) {
      lo_ = mid;
    } else {
      hi_ = mid;
    }
  }

  /// Narrow until hi - lo <= width.
  void refine_to(const Rational& width) const {
    if (width <= 0) throw std::invalid_argument("refinement width must be positive");
    while (!exact_ && hi_ - lo_ > width) bisect();
  }

  /// Narrow until the interval excludes q, or the number turns out to equal q.
  /// Returns the ordering of this number against q.
  Ordering compare_rational(const Rational& q) const {
    while (true) {
      if (exact_) return *exact_ < q ? Ordering::Less : (*exact_ > q ? Ordering::Greater : Ordering::Equal);
      if (hi_ <= q) return Ordering::Less;
      if (lo_ >= q) return Ordering::Greater;
      Sign s = defining_.sign_at(q);
      if (s == Sign::Zero) return Ordering::Equal;
      if (s == lo_sign_) lo_ = q; else hi_ = q;
    }
  }

  /// Coarse floating-point view for display only.
  double approx() const {
    if (exact_) return exact_->get_d();
    RealAlgebraic tmp = *this;
    tmp.refine_to(pow2(-60));
    return Rational((tmp.lo_ + tmp.hi_) / 2).get_d();
  }

  std::string to_string() const {
    if (exact_) return exact_->get_str();
    return "root(" + defining_.to_string() + ", " + lo_.get_str() + ", " + hi_.get_str() + ")";
  }

 private:
  void become_exact(const Rational& q) const {
    exact_ = q;
    lo_ = q;
    hi_ = q;
    defining_ = UPoly::linear_root(q).normalized();
  }

  mutable UPoly defining_;
  mutable Rational lo_;
  mutable Rational hi_;
  mutable std::optional<Rational> exact_;
  Sign lo_sign_ = Sign::Zero;
};

inline std::ostream& operator<<(std::ostream& os, const RealAlgebraic& a) { return os << a.to_string(); }

namespace detail {

/// Roots of g in the open interval (a, b), given its Sturm sequence.
inline int count_open(const UPoly& g, const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  if (b <= a) return 0;
  int n = count_roots(seq, a, b);
  if (g.sign_at(b) == Sign::Zero) --n;
  return n;
}

inline void isolate_rec(const UPoly& sq, const std::vector<UPoly>& seq, const Rational& a,
                        const Rational& b, int n, std::vector<std::pair<Rational, Rational>>& open,
                        std::vector<Rational>& exact) {
  if (n == 0) return;
  if (n == 1) {
    open.emplace_back(a, b);
    return;
  }
  Rational mid = (a + b) / 2;
  int left = count_roots(seq, a, mid);
  int at_mid = 0;
  if (sq.sign_at(mid) == Sign::Zero) {
    exact.push_back(mid);
    at_mid = 1;
  }
  isolate_rec(sq, seq, a, mid, left - at_mid, open, exact);
  isolate_rec(sq, seq, mid, b, n - left, open, exact);
}

}  // namespace detail

/// All distinct real roots of p in ascending order. Rational roots come back exact;
/// irrational ones share the squarefree defining polynomial with rational factors removed.
inline std::vector<RealAlgebraic> isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) throw NlcsError("zero polynomial has no root isolation");
  std::vector<RealAlgebraic> out;
  if (p.degree() == 0) return out;
  UPoly sq = squarefree_part(p);
  auto seq = sturm_sequence(sq);
  Rational bound = root_bound(sq);
  int total = count_roots(seq, -bound, bound);
  std::vector<std::pair<Rational, Rational>> open;
  std::vector<Rational> exact;
  detail::isolate_rec(sq, seq, -bound, bound, total, open, exact);

  // A rational root k/q of the primitive sq has q | lc; two such candidates are
  // at least 1/lc apart, so an interval narrower than that holds at most one.
  Rational lc_abs = abs_of(sq.lc());
  Rational gap = 1 / lc_abs;
  std::vector<std::pair<Rational, Rational>> irrational;
  for (auto [lo, hi] : open) {
    // Endpoints may themselves be roots found at earlier midpoints, so steer by
    // Sturm counts rather than endpoint signs.
    bool found = false;
    while (hi - lo >= gap) {
      Rational mid = (lo + hi) / 2;
      if (sq.sign_at(mid) == Sign::Zero) {
        exact.push_back(mid);
        found = true;
        break;
      }
      if (detail::count_open(sq, seq, lo, mid) == 1) hi = mid; else lo = mid;
    }
    if (found) continue;
    Integer k = ceil_of(lo * lc_abs);
    Rational cand = make_rational(k, Integer(lc_abs.get_num()));
    if (cand > lo && cand < hi && sq.sign_at(cand) == Sign::Zero) {
      exact.push_back(cand);
      continue;
    }
    irrational.emplace_back(lo, hi);
  }

  UPoly rest = sq;
  for (const auto& r : exact) rest = rest / UPoly::linear_root(r);
  for (const auto& r : exact) out.emplace_back(r);
  for (const auto& [lo, hi] : irrational) out.push_back(RealAlgebraic::from_interval(rest, lo, hi));
  std::sort(out.begin(), out.end(), [](const RealAlgebraic& x, const RealAlgebraic& y) {
    // Intervals are disjoint; an exact root may sit on a neighbour's endpoint.
    return x.lo() < y.lo() || (x.lo() == y.lo() && x.hi() < y.hi());
  });
  return out;
}

/// Exact trichotomy.
inline Ordering compare(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (a.is_rational()) {
    Ordering o = b.compare_rational(*a.exact());
    return o == Ordering::Less ? Ordering::Greater : (o == Ordering::Greater ? Ordering::Less : Ordering::Equal);
  }
  if (b.is_rational()) return a.compare_rational(*b.exact());
  std::optional<UPoly> g;
  std::vector<UPoly> gseq;
  while (true) {
    if (a.is_rational() || b.is_rational()) return compare(a, b);
    if (a.hi() <= b.lo()) return Ordering::Less;
    if (b.hi() <= a.lo()) return Ordering::Greater;
    if (!g) {
      g = gcd(a.defining(), b.defining());
      if (g->degree() >= 1) gseq = sturm_sequence(*g);
    }
    if (g->degree() >= 1) {
      Rational l = std::max(a.lo(), b.lo()), h = std::min(a.hi(), b.hi());
      if (detail::count_open(*g, gseq, l, h) > 0) return Ordering::Equal;
    }
    a.bisect();
    b.bisect();
  }
}

inline bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == Ordering::Equal; }
inline bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == Ordering::Less; }

/// Exact sign of p at a.
inline Sign sign_at(const UPoly& p, const RealAlgebraic& a) {
  if (a.is_rational()) return p.sign_at(*a.exact());
  if (p.is_zero()) return Sign::Zero;
  if (p.degree() == 0) return sign_of(p.lc());
  // Cheap filter before any gcd work.
  for (int i = 0; i < 4; ++i) {
    if (auto s = eval(p, a.interval()).definite_sign(); s && *s != Sign::Zero) return *s;
    a.bisect();
    if (a.is_rational()) return p.sign_at(*a.exact());
  }
  UPoly g = gcd(p, a.defining());
  if (g.degree() >= 1) {
    auto gseq = sturm_sequence(g);
    if (detail::count_open(g, gseq, a.lo(), a.hi()) > 0) return Sign::Zero;
  }
  UPoly sp = squarefree_part(p);
  auto seq = sturm_sequence(sp);
  while (true) {
    if (a.is_rational()) return p.sign_at(*a.exact());
    if (count_roots_closed(sp, seq, a.lo(), a.hi()) == 0) return p.sign_at(a.lo());
    a.bisect();
  }
}

/// Copy of a with an interval no wider than `width`.
inline RealAlgebraic refine(const RealAlgebraic& a, const Rational& width) {
  RealAlgebraic r = a;
  r.refine_to(width);
  return r;
}

/// Deterministic rational strictly between a < b: the midpoint of the gap once
/// the two intervals are disjoint.
inline Rational rational_between(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (compare(a, b) != Ordering::Less) throw std::invalid_argument("rational_between requires a < b");
  while (!(a.hi() < b.lo())) {
    if (a.width() >= b.width()) a.bisect(); else b.bisect();
  }
  return (a.hi() + b.lo()) / 2;
}

/// Integer strictly below a (sample below the least root).
inline Rational rational_below(const RealAlgebraic& a) {
  a.refine_to(1);
  return Rational(floor_of(a.lo()) - 1);
}

/// Integer strictly above a (sample above the greatest root).
inline Rational rational_above(const RealAlgebraic& a) {
  a.refine_to(1);
  return Rational(ceil_of(a.hi()) + 1);
}

}  // namespace nlcs

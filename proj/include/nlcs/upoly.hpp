#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace nlcs {

/// Dense univariate polynomial over the rationals; coefficient i multiplies x^i.
/// The coefficient vector is always trimmed, so the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  UPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const Rational& v) { return UPoly(std::vector<Rational>{v}); }
  /// x - r
  static UPoly linear_root(const Rational& r) { return UPoly{Rational(-r), Rational(1)}; }
  static UPoly monomial(const Rational& coeff, std::size_t deg) {
    std::vector<Rational> c(deg + 1);
    c[deg] = coeff;
    return UPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= x;
      acc += c_[i];
    }
    return acc;
  }
  Sign sign_at(const Rational& x) const { return sign_of(eval(x)); }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const Rational& s, const UPoly& a) {
    if (s == 0) return {};
    UPoly r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division over Q: a = q*b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quot(a.c_.size() - b.c_.size() + 1);
    const Rational& lb = b.c_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
      Rational f = rem[k + b.c_.size() - 1] / lb;
      quot[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
    }
    rem.resize(b.c_.size() - 1);
    return {UPoly(std::move(quot)), UPoly(std::move(rem))};
  }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }

  /// Positive rational multiple with coprime integer coefficients.
  UPoly primitive() const {
    if (is_zero()) return {};
    Integer den_lcm(1), num_gcd(0);
    for (const auto& x : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& x : c_) {
      Integer n = x.get_num() * (den_lcm / x.get_den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    }
    Rational scale = make_rational(den_lcm, num_gcd);
    return scale * *this;
  }
  /// Primitive with positive leading coefficient.
  UPoly normalized() const {
    UPoly p = primitive();
    if (!p.is_zero() && p.lc() < 0) p = -p;
    return p;
  }
  UPoly monic() const { return is_zero() ? UPoly{} : Rational(1 / lc()) * *this; }

  /// p(x + shift)
  UPoly shifted(const Rational& shift) const {
    UPoly r;
    UPoly base{shift, Rational(1)};
    for (std::size_t i = c_.size(); i-- > 0;) r = r * base + UPoly::constant(c_[i]);
    return r;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& a = c_[i];
      if (a == 0) continue;
      Rational mag = abs_of(a);
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = mag == 1 && i > 0;
      if (!unit) os << mag.get_str();
      if (i > 0) {
        if (!unit) os << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.to_string(); }

/// Normalized gcd (primitive, positive leading coefficient); gcd(0,0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  a = a.normalized();
  b = b.normalized();
  while (!b.is_zero()) {
    UPoly r = (a % b).normalized();
    a = std::move(b);
    b = std::move(r);
  }
  return a.normalized();
}

inline UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.normalized();
  UPoly g = gcd(p, p.derivative());
  return (p / g).normalized();
}

/// Sturm sequence p, p', -rem(...), ...; members are rescaled by positive
/// constants, which keeps the sign-variation counts intact.
inline std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p.primitive());
  UPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d.primitive());
  while (true) {
    UPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back((-r).primitive());
  }
  return seq;
}

namespace detail {
inline int count_variations(const std::vector<Sign>& signs) {
  int v = 0;
  Sign last = Sign::Zero;
  for (Sign s : signs) {
    if (s == Sign::Zero) continue;
    if (last != Sign::Zero && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace detail

inline int sturm_variations(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<Sign> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(p.sign_at(x));
  return detail::count_variations(s);
}

/// Variations at +infinity (positive=true) or -infinity.
inline int sturm_variations_at_infinity(const std::vector<UPoly>& seq, bool positive) {
  std::vector<Sign> s;
  for (const auto& p : seq) {
    Sign l = sign_of(p.lc());
    if (!positive && p.degree() % 2 == 1) l = -l;
    s.push_back(l);
  }
  return detail::count_variations(s);
}

/// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_roots(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty()) throw std::domain_error("root count of zero polynomial");
  if (b <= a) return 0;
  return sturm_variations(seq, a) - sturm_variations(seq, b);
}

/// Number of distinct real roots of p in the closed interval [a, b].
inline int count_roots_closed(const UPoly& p, const std::vector<UPoly>& seq, const Rational& a,
                              const Rational& b) {
  if (b < a) return 0;
  int n = (b > a) ? count_roots(seq, a, b) : 0;
  if (p.sign_at(a) == Sign::Zero) ++n;
  return n;
}

inline int count_real_roots(const std::vector<UPoly>& seq) {
  if (seq.empty()) throw std::domain_error("root count of zero polynomial");
  return sturm_variations_at_infinity(seq, false) - sturm_variations_at_infinity(seq, true);
}

/// Power of two strictly greater than the absolute value of every real root.
inline Rational root_bound(const UPoly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs_of(p.coeff(i) / p.lc()));
  Rational bound = m + 1;
  Rational b(1);
  while (b <= bound) b *= 2;
  return b;
}

}  // namespace nlcs

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "upoly.hpp"

namespace nlcs {

using Monomial = std::vector<unsigned>;

/// Lexicographic with the highest-indexed variable most significant, so the
/// last term of a polynomial is its leading term in the main variable.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Sparse polynomial over Q in a fixed universe of `nvars` variables x0..x{n-1}.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars, 0), c);
    return p;
  }
  static MultiPoly var(std::size_t nvars, std::size_t v, unsigned power = 1) {
    if (v >= nvars) throw std::out_of_range("variable index outside the universe");
    MultiPoly p(nvars);
    Monomial m(nvars, 0);
    m[v] = power;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
  }
  static MultiPoly term(const Monomial& m, const Rational& c) {
    MultiPoly p(m.size());
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }
  /// Embeds a univariate polynomial as a polynomial in variable v.
  static MultiPoly from_upoly(std::size_t nvars, std::size_t v, const UPoly& u) {
    MultiPoly p(nvars);
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
      if (u.coeffs()[i] == 0) continue;
      Monomial m(nvars, 0);
      m[v] = static_cast<unsigned>(i);
      p.terms_.emplace(std::move(m), u.coeffs()[i]);
    }
    return p;
  }
  /// sum_k coeffs[k] * v^k
  static MultiPoly from_coefficients(std::size_t nvars, std::size_t v, const std::vector<MultiPoly>& coeffs) {
    MultiPoly p(nvars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) p += coeffs[k] * var(nvars, v, static_cast<unsigned>(k));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value of non-constant polynomial");
    return terms_.begin()->second;
  }
  /// Coefficient of the leading term in the monomial order.
  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return terms_.rbegin()->second;
  }

  int degree(std::size_t v) const {
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return static_cast<int>(d);
  }
  int total_degree() const {
    if (terms_.empty()) return -1;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
      unsigned s = 0;
      for (unsigned e : m) s += e;
      d = std::max(d, s);
    }
    return static_cast<int>(d);
  }
  bool has_var(std::size_t v) const { return degree(v) > 0; }
  /// Highest variable with positive degree; -1 for constants.
  int main_var() const {
    if (terms_.empty()) return -1;
    const Monomial& m = terms_.rbegin()->first;
    for (std::size_t i = nvars_; i-- > 0;)
      if (m[i] > 0) return static_cast<int>(i);
    return -1;
  }
  std::vector<bool> var_set() const {
    std::vector<bool> s(nvars_, false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i] > 0) s[i] = true;
    return s;
  }

  /// Coefficient of v^k, a polynomial free of v.
  MultiPoly coefficient(std::size_t v, unsigned k) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[v] != k) continue;
      Monomial mm = m;
      mm[v] = 0;
      r.terms_.emplace(std::move(mm), c);
    }
    return r;
  }
  /// Coefficients of v^0..v^deg.
  std::vector<MultiPoly> coefficients(std::size_t v) const {
    int d = degree(v);
    std::vector<MultiPoly> out(d < 0 ? 0 : static_cast<std::size_t>(d) + 1, MultiPoly(nvars_));
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      mm[v] = 0;
      out[m[v]].terms_.emplace(std::move(mm), c);
    }
    return out;
  }
  MultiPoly leading_coefficient(std::size_t v) const {
    int d = degree(v);
    return d < 0 ? MultiPoly(nvars_) : coefficient(v, static_cast<unsigned>(d));
  }

  MultiPoly derivative(std::size_t v) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      Monomial mm = m;
      mm[v] -= 1;
      r.terms_.emplace(std::move(mm), c * static_cast<unsigned long>(m[v]));
    }
    return r;
  }

  /// Replaces v by the polynomial s.
  MultiPoly substitute(std::size_t v, const MultiPoly& s) const {
    check_universe(s);
    auto cs = coefficients(v);
    MultiPoly r(nvars_);
    for (std::size_t k = cs.size(); k-- > 0;) r = r * s + cs[k];
    return r;
  }
  MultiPoly substitute(std::size_t v, const Rational& q) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      mm[v] = 0;
      Rational val = c * pow_of(q, m[v]);
      if (val == 0) continue;
      auto [it, inserted] = r.terms_.emplace(std::move(mm), val);
      if (!inserted) {
        it->second += val;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
    return r;
  }
  /// Value at a full rational point.
  Rational evaluate(const std::vector<Rational>& point) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i] > 0) t *= pow_of(point.at(i), m[i]);
      acc += t;
    }
    return acc;
  }

  /// Univariate view in v; throws when another variable occurs.
  UPoly to_upoly(std::size_t v) const {
    std::vector<Rational> c(static_cast<std::size_t>(std::max(degree(v), 0)) + 1);
    for (const auto& [m, coef] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i)
        if (i != v && m[i] > 0) throw std::logic_error("to_upoly: polynomial is not univariate");
      c[m[v]] = coef;
    }
    return UPoly(std::move(c));
  }

  /// Same polynomial in a universe of `n` >= nvars variables.
  MultiPoly extended(std::size_t n) const {
    if (n < nvars_) throw std::invalid_argument("cannot shrink a variable universe");
    MultiPoly r(n);
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      mm.resize(n, 0);
      r.terms_.emplace(std::move(mm), c);
    }
    return r;
  }
  /// Variable i becomes variable perm[i].
  MultiPoly permuted(const std::vector<std::size_t>& perm) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      Monomial mm(nvars_, 0);
      for (std::size_t i = 0; i < nvars_; ++i) mm[perm.at(i)] = m[i];
      r.terms_.emplace(std::move(mm), c);
    }
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_universe(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_universe(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_universe(b);
    MultiPoly r(a.nvars_);
    Monomial mm(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) mm[i] = ma[i] + mb[i];
        r.add_term(mm, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) {
    if (s == 0) return MultiPoly(a.nvars_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned k) const {
    MultiPoly r = constant(nvars_, 1), b = *this;
    while (k != 0) {
      if (k & 1U) r = r * b;
      k >>= 1U;
      if (k != 0) b = b * b;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
  /// Arbitrary but deterministic total order, for sets of polynomials.
  friend bool operator<(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    // Compare from the leading term down, so "smaller" polynomials sort first.
    auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
    MonomialOrder lt;
    for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
      if (lt(ia->first, ib->first)) return true;
      if (lt(ib->first, ia->first)) return false;
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.rend() && ib != b.terms_.rend();
  }

  /// Positive rational multiple with coprime integer coefficients.
  MultiPoly integer_primitive() const {
    if (terms_.empty()) return *this;
    Integer den(1), num(0);
    for (const auto& [m, c] : terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : terms_) {
      Integer n = c.get_num() * (den / c.get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    }
    return make_rational(den, num) * *this;
  }
  /// Integer primitive with positive leading coefficient; canonical up to a
  /// nonzero rational factor.
  MultiPoly normalized() const {
    MultiPoly p = integer_primitive();
    if (!p.is_zero() && p.leading_coefficient() < 0) p = -p;
    return p;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational mag = abs_of(c);
      os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      first = false;
      bool has_vars = std::any_of(m.begin(), m.end(), [](unsigned e) { return e > 0; });
      bool wrote = false;
      if (mag != 1 || !has_vars) {
        os << mag.get_str();
        wrote = true;
      }
      for (std::size_t i = nvars_; i-- > 0;) {
        if (m[i] == 0) continue;
        if (wrote) os << "*";
        os << (i < names.size() ? names[i] : "x" + std::to_string(i));
        if (m[i] > 1) os << "^" << m[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void check_universe(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable universes");
  }
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

/// a / b when b divides a exactly, nullopt otherwise.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::size_t n = a.nvars();
  MultiPoly q(n), r = a;
  const auto& [lb_m, lb_c] = *b.terms().rbegin();
  while (!r.is_zero()) {
    const auto& [lr_m, lr_c] = *r.terms().rbegin();
    Monomial t(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (lr_m[i] < lb_m[i]) return std::nullopt;
      t[i] = lr_m[i] - lb_m[i];
    }
    MultiPoly step = MultiPoly::term(t, lr_c / lb_c);
    q += step;
    r -= step * b;
  }
  return q;
}

inline MultiPoly operator/(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::domain_error("inexact polynomial division");
  return *q;
}

/// Pseudo-remainder of a by b in variable v.
inline MultiPoly prem(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  int db = b.degree(v);
  if (db < 0) throw std::domain_error("pseudo-remainder by zero");
  MultiPoly lb = b.leading_coefficient(v);
  MultiPoly r = a;
  int da = a.degree(v);
  int steps = 0;
  while (!r.is_zero() && r.degree(v) >= db) {
    int dr = r.degree(v);
    MultiPoly lr = r.leading_coefficient(v);
    r = lb * r - lr * MultiPoly::var(a.nvars(), v, static_cast<unsigned>(dr - db)) * b;
    ++steps;
  }
  for (int e = da - db + 1 - steps; e > 0; --e) r = lb * r;
  return r;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// gcd of the coefficients of p with respect to v (normalized).
inline MultiPoly content(const MultiPoly& p, std::size_t v) {
  MultiPoly g(p.nvars());
  for (const auto& c : p.coefficients(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline MultiPoly primitive_part(const MultiPoly& p, std::size_t v) {
  if (p.is_zero()) return p;
  return (p / content(p, v)).normalized();
}

/// Normalized gcd; gcd(0, 0) = 0, constants give 1.
inline MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  const std::size_t n = a.nvars();
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, 1);
  int va = a.main_var(), vb = b.main_var();
  if (va == vb && va >= 0) {
    // Univariate fast path.
    bool uni = true;
    for (const auto* p : {&a, &b})
      for (const auto& [m, c] : p->terms())
        for (std::size_t i = 0; i < n; ++i)
          if (i != static_cast<std::size_t>(va) && m[i] > 0) uni = false;
    if (uni) {
      auto v = static_cast<std::size_t>(va);
      return MultiPoly::from_upoly(n, v, gcd(a.to_upoly(v), b.to_upoly(v))).normalized();
    }
  }
  auto v = static_cast<std::size_t>(std::max(va, vb));
  if (a.degree(v) == 0) return gcd(a, content(b, v));
  if (b.degree(v) == 0) return gcd(content(a, v), b);
  MultiPoly ca = content(a, v), cb = content(b, v);
  MultiPoly c = gcd(ca, cb);
  MultiPoly p = a / ca, q = b / cb;
  if (p.degree(v) < q.degree(v)) std::swap(p, q);
  while (true) {
    MultiPoly r = prem(p, q, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      q = MultiPoly::constant(n, 1);
      break;
    }
    p = std::move(q);
    q = primitive_part(r, v);
  }
  if (q.degree(v) > 0) q = primitive_part(q, v);
  return (c * q).normalized();
}

/// p / gcd(p, dp/dv), normalized; drops the content in v along with repeated factors.
inline MultiPoly squarefree_part(const MultiPoly& p, std::size_t v) {
  if (p.degree(v) <= 0) return p.normalized();
  MultiPoly g = gcd(p, p.derivative(v));
  return (p / g).normalized();
}

}  // namespace nlcs

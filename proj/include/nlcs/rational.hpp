#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nlcs {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sign of a real quantity, totally ordered Negative < Zero < Positive.
enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(int s) {
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}
inline Sign sign_of(const Rational& q) { return sign_of(sgn(q)); }
inline Sign sign_of(const Integer& z) { return sign_of(sgn(z)); }

inline Sign operator*(Sign a, Sign b) {
  return sign_of(static_cast<int>(a) * static_cast<int>(b));
}
inline Sign operator-(Sign a) { return sign_of(-static_cast<int>(a)); }

inline const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "-";
    case Sign::Zero: return "0";
    case Sign::Positive: return "+";
  }
  return "?";
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational pow_of(const Rational& q, unsigned k) {
  Rational r(1);
  Rational b = q;
  while (k != 0) {
    if (k & 1U) r *= b;
    b *= b;
    k >>= 1U;
  }
  return r;
}

/// 2^e as a rational, e may be negative.
inline Rational pow2(long e) {
  Integer z(1);
  if (e >= 0) {
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(z);
  }
  mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return make_rational(1, z);
}

/// Parses "12", "-3/4", "1.25", "-.5". Returns false on malformed input.
inline bool try_parse_rational(std::string_view text, Rational& out) {
  if (text.empty()) return false;
  std::string s(text);
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty()) return false;
  auto all_digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return false;
    Integer den(d);
    if (den == 0) return false;
    value = make_rational(Integer(n), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return false;
    if (!ip.empty() && !all_digits(ip)) return false;
    if (!fp.empty() && !all_digits(fp)) return false;
    Integer whole(ip.empty() ? "0" : ip);
    Integer frac(fp.empty() ? "0" : fp);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    value = make_rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(body)) return false;
    value = Rational(Integer(body));
  }
  out = neg ? Rational(-value) : value;
  return true;
}

inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (!try_parse_rational(text, q))
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  return q;
}

}  // namespace nlcs

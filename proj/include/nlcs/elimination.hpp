#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"

namespace nlcs {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Fraction-free (Bareiss) determinant; every division is exact.
inline MultiPoly determinant(PolyMatrix m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(nvars, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return MultiPoly(nvars);
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = t / prev;
      }
      m[i][k] = MultiPoly(nvars);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

namespace detail {

/// Rows x^{q-j-1} p, ..., p, x^{p-j-1} q, ..., q as coefficient vectors over
/// the powers y^{p+q-j-1} .. y^0 (p, q the degrees).
inline PolyMatrix subresultant_rows(const MultiPoly& a, const MultiPoly& b, std::size_t v, int j) {
  const int p = a.degree(v), q = b.degree(v);
  const std::size_t n = a.nvars();
  auto ca = a.coefficients(v), cb = b.coefficients(v);
  const int width = p + q - j;
  PolyMatrix rows;
  for (int s = q - j - 1; s >= 0; --s) {
    std::vector<MultiPoly> row(static_cast<std::size_t>(width), MultiPoly(n));
    for (int k = 0; k <= p; ++k) row[static_cast<std::size_t>(width - 1 - (k + s))] = ca[static_cast<std::size_t>(k)];
    rows.push_back(std::move(row));
  }
  for (int s = p - j - 1; s >= 0; --s) {
    std::vector<MultiPoly> row(static_cast<std::size_t>(width), MultiPoly(n));
    for (int k = 0; k <= q; ++k) row[static_cast<std::size_t>(width - 1 - (k + s))] = cb[static_cast<std::size_t>(k)];
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void require_positive_degrees(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  if (a.degree(v) < 1 || b.degree(v) < 1)
    throw NlcsError("resultant requires positive degree in the eliminated variable");
}

}  // namespace detail

/// j-th principal subresultant coefficient of a and b in v (0 <= j < min degree).
inline MultiPoly psc(const MultiPoly& a, const MultiPoly& b, std::size_t v, int j) {
  detail::require_positive_degrees(a, b, v);
  PolyMatrix rows = detail::subresultant_rows(a, b, v, j);
  const std::size_t k = rows.size();
  for (auto& r : rows) r.resize(k, MultiPoly(a.nvars()));
  return determinant(std::move(rows), a.nvars());
}

/// Sylvester resultant eliminating v.
inline MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  return psc(a, b, v, 0);
}

/// psc_0 .. psc_{min(deg a, deg b) - 1}.
inline std::vector<MultiPoly> subresultant_psc(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  detail::require_positive_degrees(a, b, v);
  std::vector<MultiPoly> out;
  const int m = std::min(a.degree(v), b.degree(v));
  for (int j = 0; j < m; ++j) out.push_back(psc(a, b, v, j));
  return out;
}

/// (-1)^{d(d-1)/2} res(p, dp/dv) / lc(p); for y^2 + b y + c this is b^2 - 4c.
inline MultiPoly discriminant(const MultiPoly& p, std::size_t v) {
  const int d = p.degree(v);
  if (d < 2) throw NlcsError("discriminant requires degree at least 2");
  MultiPoly r = resultant(p, p.derivative(v), v) / p.leading_coefficient(v);
  return ((d * (d - 1) / 2) % 2 == 0) ? r : -r;
}

/// Principal Sturm-Habicht coefficients stha_deg .. stha_0 of p in v, highest first.
inline std::vector<MultiPoly> sturm_habicht_principal(const MultiPoly& p, std::size_t v) {
  const int d = p.degree(v);
  std::vector<MultiPoly> out;
  if (d < 1) return out;
  MultiPoly lc = p.leading_coefficient(v);
  out.push_back(lc);
  out.push_back(Rational(d) * lc);
  MultiPoly dp = p.derivative(v);
  for (int j = d - 2; j >= 0; --j) {
    int k = d - j - 1;
    MultiPoly s = psc(p, dp, v, j);
    out.push_back((k * (k + 1) / 2) % 2 == 0 ? s : -s);
  }
  return out;
}

/// Number of distinct real roots from the signs of the principal Sturm-Habicht
/// coefficients (highest first), by the permanences-minus-variations rule.
inline int sturm_habicht_count(const std::vector<Sign>& signs) {
  int total = 0;
  std::size_t last = signs.size();
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == Sign::Zero) continue;
    if (last != signs.size()) {
      std::size_t g = i - last;
      if (g % 2 == 1) {
        int eps = ((g * (g - 1) / 2) % 2 == 0) ? 1 : -1;
        total += eps * static_cast<int>(signs[last] * signs[i]);
      }
    }
    last = i;
  }
  return total;
}

}  // namespace nlcs

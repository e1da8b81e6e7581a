#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "constraint.hpp"
#include "errors.hpp"
#include "multipoly.hpp"

namespace nlcs {

namespace detail {

/// Recursive-descent parser for one line of the native format.
class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, const std::vector<std::string>& vars)
      : s_(text), line_(line), vars_(vars) {}

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        acc += term();
      } else if (peek() == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Relation relation() {
    skip_ws();
    std::size_t start = pos_;
    std::string op;
    while (pos_ < s_.size() && std::string_view("<>=!").find(s_[pos_]) != std::string_view::npos) op += s_[pos_++];
    auto rel = parse_relation(op);
    if (!rel) fail(op.empty() ? "expected a relation" : "unknown relation '" + op + "'", start);
    return *rel;
  }

  void expect_end() {
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
  }

 private:
  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (peek() == '/') {
        std::size_t at = ++pos_;
        MultiPoly d = unary();
        if (!d.is_constant()) fail("division by a non-constant expression", at);
        if (d.is_zero()) fail("division by zero", at);
        acc = Rational(1 / d.constant_value()) * acc;
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent", start);
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large", start);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly atom() {
    skip_ws();
    std::size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly e = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      Rational v;
      if (!try_parse_rational(s_.substr(start, pos_ - start), v)) fail("malformed number", start);
      return MultiPoly::constant(vars_.size(), v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return MultiPoly::var(vars_.size(), i);
      fail("undeclared variable '" + name + "'", start);
    }
    fail(c == '\0' ? "unexpected end of line" : "unexpected '" + std::string(1, c) + "'", start);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw ParseError(what, line_, at + 1); }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const std::vector<std::string>& vars_;
};

}  // namespace detail

/// Native format: a `vars: x y ...` header, then one `<poly> <rel> <poly>` per
/// line. `#` starts a comment.
inline ConstraintSystem parse_native(std::string_view text) {
  ConstraintSystem sys;
  bool have_vars = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line.compare(first, 5, "vars:") == 0) {
      if (have_vars) throw ParseError("duplicate vars header", line_no, first + 1);
      have_vars = true;
      std::istringstream names(line.substr(first + 5));
      std::string name;
      while (names >> name) {
        bool ok = (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
        for (char ch : name) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
        if (!ok) throw ParseError("invalid variable name '" + name + "'", line_no, line.find(name) + 1);
        if (std::find(sys.variables.begin(), sys.variables.end(), name) != sys.variables.end())
          throw ParseError("variable '" + name + "' declared twice", line_no, line.find(name) + 1);
        sys.variables.push_back(name);
      }
      continue;
    }
    if (!have_vars) throw ParseError("constraint before the vars header", line_no, first + 1);
    detail::ExprParser p(line, line_no, sys.variables);
    MultiPoly lhs = p.expr();
    Relation rel = p.relation();
    MultiPoly rhs = p.expr();
    p.expect_end();
    sys.constraints.push_back({lhs - rhs, rel, sys.constraints.size() + 1});
  }
  if (!have_vars) throw ParseError("missing vars header", line_no == 0 ? 1 : line_no, 1);
  sys.num_original = sys.constraints.size();
  return sys;
}

namespace detail {

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> list;
  bool is_list = false;
  std::size_t line = 1, column = 1;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view s) : s_(s) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    while (true) {
      skip();
      if (pos_ >= s_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  SExpr read() {
    skip();
    SExpr e;
    e.line = line_;
    e.column = col_;
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", line_, col_);
    char c = s_[pos_];
    if (c == '(') {
      advance();
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unbalanced '('", e.line, e.column);
        if (s_[pos_] == ')') {
          advance();
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '|') {
      advance();
      while (pos_ < s_.size() && s_[pos_] != '|') e.atom += advance();
      if (pos_ >= s_.size()) throw ParseError("unterminated quoted symbol", e.line, e.column);
      advance();
      return e;
    }
    if (c == '"') {
      advance();
      while (pos_ < s_.size() && s_[pos_] != '"') e.atom += advance();
      if (pos_ >= s_.size()) throw ParseError("unterminated string", e.line, e.column);
      advance();
      e.atom = "\"" + e.atom + "\"";
      return e;
    }
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != ';')
      e.atom += advance();
    return e;
  }

  char advance() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        advance();
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class SmtTranslator {
 public:
  ConstraintSystem run(const std::vector<SExpr>& cmds) {
    for (const auto& c : cmds) command(c);
    // Polynomials were built over the universe known at assertion time; widen them.
    for (auto& [poly, rel] : atoms_) sys_.constraints.push_back({poly.extended(sys_.variables.size()), rel, sys_.constraints.size() + 1});
    sys_.num_original = sys_.constraints.size();
    return std::move(sys_);
  }

 private:
  [[noreturn]] static void fail(const std::string& what, const SExpr& at) { throw ParseError(what, at.line, at.column); }

  static const std::string& head(const SExpr& e) {
    static const std::string empty;
    return e.is_list && !e.list.empty() && !e.list[0].is_list ? e.list[0].atom : empty;
  }

  void command(const SExpr& c) {
    if (!c.is_list || c.list.empty()) fail("expected a command", c);
    const std::string& h = head(c);
    if (h == "set-logic") {
      if (c.list.size() != 2) fail("malformed set-logic", c);
      const std::string& logic = c.list[1].atom;
      if (logic != "QF_NRA" && logic != "QF_LRA" && logic != "QF_RA" && logic != "ALL")
        throw UnsupportedFeature("logic " + logic);
    } else if (h == "set-info" || h == "set-option" || h == "check-sat" || h == "exit" || h == "get-model" ||
               h == "get-unsat-core" || h == "get-info" || h == "push" || h == "pop") {
      // no effect on the conjunction
    } else if (h == "declare-fun") {
      if (c.list.size() != 4 || !c.list[2].is_list) fail("malformed declare-fun", c);
      if (!c.list[2].list.empty()) throw UnsupportedFeature("uninterpreted function " + c.list[1].atom);
      declare(c.list[1], c.list[3]);
    } else if (h == "declare-const") {
      if (c.list.size() != 3) fail("malformed declare-const", c);
      declare(c.list[1], c.list[2]);
    } else if (h == "assert") {
      if (c.list.size() != 2) fail("malformed assert", c);
      formula(c.list[1], false);
    } else if (h == "define-fun" || h == "define-sort" || h == "declare-sort") {
      throw UnsupportedFeature(h);
    } else {
      fail("unknown command '" + h + "'", c);
    }
  }

  void declare(const SExpr& name, const SExpr& sort) {
    if (name.is_list) fail("expected a symbol", name);
    if (sort.is_list || sort.atom != "Real") throw UnsupportedFeature("sort " + (sort.is_list ? std::string("(...)") : sort.atom));
    for (const auto& v : sys_.variables)
      if (v == name.atom) fail("symbol '" + name.atom + "' declared twice", name);
    sys_.variables.push_back(name.atom);
  }

  void formula(const SExpr& f, bool negated) {
    if (!f.is_list) {
      if (f.atom == "true" || f.atom == "false") {
        bool value = (f.atom == "true") != negated;
        if (!value) atoms_.emplace_back(MultiPoly::constant(sys_.variables.size(), 1), Relation::Eq);
        return;
      }
      throw UnsupportedFeature("Boolean variable " + f.atom);
    }
    const std::string& h = head(f);
    if (h == "and") {
      if (negated) throw UnsupportedFeature("disjunction (negated and)");
      for (std::size_t i = 1; i < f.list.size(); ++i) formula(f.list[i], false);
      return;
    }
    if (h == "not") {
      if (f.list.size() != 2) fail("malformed not", f);
      formula(f.list[1], !negated);
      return;
    }
    if (h == "or" || h == "let" || h == "ite" || h == "=>" || h == "forall" || h == "exists" || h == "xor")
      throw UnsupportedFeature(h);
    if (h == "distinct") {
      if (f.list.size() < 3) fail("distinct needs two arguments", f);
      if (negated && f.list.size() > 3) throw UnsupportedFeature("disjunction (negated distinct)");
      for (std::size_t i = 1; i < f.list.size(); ++i)
        for (std::size_t j = i + 1; j < f.list.size(); ++j)
          atoms_.emplace_back(term(f.list[i]) - term(f.list[j]), negated ? Relation::Eq : Relation::Ne);
      return;
    }
    std::optional<Relation> rel;
    if (h == "<") rel = Relation::Lt;
    else if (h == "<=") rel = Relation::Le;
    else if (h == "=") rel = Relation::Eq;
    else if (h == ">=") rel = Relation::Ge;
    else if (h == ">") rel = Relation::Gt;
    if (!rel) {
      if (h.empty()) fail("expected a formula", f);
      throw UnsupportedFeature(h);
    }
    if (f.list.size() < 3) fail("relation needs two arguments", f);
    if (negated && f.list.size() > 3) throw UnsupportedFeature("disjunction (negated chained relation)");
    for (std::size_t i = 1; i + 1 < f.list.size(); ++i)
      atoms_.emplace_back(term(f.list[i]) - term(f.list[i + 1]), negated ? negate(*rel) : *rel);
  }

  MultiPoly term(const SExpr& t) {
    const std::size_t n = sys_.variables.size();
    if (!t.is_list) {
      Rational v;
      if (try_parse_rational(t.atom, v) && t.atom.find('/') == std::string::npos && t.atom[0] != '-' && t.atom[0] != '+')
        return MultiPoly::constant(n, v);
      for (std::size_t i = 0; i < n; ++i)
        if (sys_.variables[i] == t.atom) return MultiPoly::var(n, i);
      fail("undeclared symbol '" + t.atom + "'", t);
    }
    const std::string& h = head(t);
    if (t.list.size() < 2) fail("malformed term", t);
    if (h == "+" || h == "*") {
      MultiPoly acc = term(t.list[1]);
      for (std::size_t i = 2; i < t.list.size(); ++i) acc = h == "+" ? acc + term(t.list[i]) : acc * term(t.list[i]);
      return acc;
    }
    if (h == "-") {
      MultiPoly acc = term(t.list[1]);
      if (t.list.size() == 2) return -acc;
      for (std::size_t i = 2; i < t.list.size(); ++i) acc -= term(t.list[i]);
      return acc;
    }
    if (h == "/") {
      // Only a rational literal such as (/ 1 3); general division is out of scope.
      if (t.list.size() == 3 && !t.list[1].is_list && !t.list[2].is_list) {
        Rational a, b;
        if (try_parse_rational(t.list[1].atom, a) && try_parse_rational(t.list[2].atom, b)) {
          if (b == 0) fail("division by zero", t);
          return MultiPoly::constant(n, a / b);
        }
      }
      throw UnsupportedFeature("division");
    }
    if (h == "to_real") {
      if (t.list.size() != 2) fail("malformed to_real", t);
      return term(t.list[1]);
    }
    if (h == "let" || h == "ite") throw UnsupportedFeature(h);
    if (h.empty()) fail("expected a term", t);
    throw UnsupportedFeature("function " + h);
  }

  ConstraintSystem sys_;
  std::vector<std::pair<MultiPoly, Relation>> atoms_;
};

}  // namespace detail

/// SMT-LIB subset: QF_NRA declarations and conjunctive assertions of atoms.
inline ConstraintSystem parse_smtlib_subset(std::string_view text) {
  auto cmds = detail::SExprReader(text).read_all();
  return detail::SmtTranslator().run(cmds);
}

}  // namespace nlcs

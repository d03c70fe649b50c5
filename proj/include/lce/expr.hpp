#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lce/algebra.hpp"
#include "lce/graphication.hpp"

namespace lce {

struct ParseError : error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

using Expression = std::variant<Polynomial, Bracketting>;

// ---- canonical text rendering -------------------------------------------

inline std::string to_text(const Rational& r) { return r.str(); }

inline std::string to_text(const Generator& gen, Mode mode) {
  std::string s = mode == Mode::commutative ? "phi" : "psi";
  s += "[" + std::to_string(gen.field) + "](";
  for (std::size_t i = 0; i < gen.labels.size(); ++i)
    s += (i ? "," : "") + std::string("x") + std::to_string(gen.labels[i]);
  return s + ")";
}

inline std::string to_text(const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  bool first = true;
  for (const auto& [gen, count] : m.grouped()) {
    if (!first) s += "*";
    first = false;
    s += to_text(gen, m.mode());
    if (count > 1) s += "^" + std::to_string(count);
  }
  return s;
}

inline std::string to_text(const Polynomial& p) {
  if (p.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = c;
    bool neg = a.sign() < 0;
    if (neg) a = -a;
    std::string body;
    if (m.is_unit())
      body = a.str();
    else if (a == Rational(1))
      body = to_text(m);
    else
      body = a.str() + "*" + to_text(m);
    if (first) {
      out = (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

inline std::string to_text(const Bracketting& gamma) {
  std::string s = "[";
  for (std::size_t i = 0; i < gamma.slots().size(); ++i)
    s += (i ? "|" : "") + to_text(gamma.slots()[i]);
  return s + "]";
}

// ---- recursive-descent parser -------------------------------------------
//
// expr     := ['-'] term (('+'|'-') term)*
// term     := rational ['*' factors] | factors
// factors  := factor (['*'] factor)*            ('*' or juxtaposition)
// factor   := gen ['^' nat]
// gen      := ("phi"|"psi") '[' nat ']' '(' label (',' label)* ')'
// label    := 'x' nat
// bracket  := '[' factors ('|' factors)* ']'
// rational := nat ['/' nat]
//
// "phi" demands a commutative profile, "psi" a noncommutative one; a plain
// constant adopts the profile's mode (commutative when no profile is given).

namespace detail {

struct Scanner {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return at_end() ? '\0' : text[pos]; }
  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
      get();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  bool eat(char c) {
    if (peek() == c) {
      get();
      return true;
    }
    return false;
  }
};

struct ParsedTerm {
  Rational coeff = 1;
  std::vector<std::pair<Generator, int>> factors;  // generator, exponent
};

class Parser {
 public:
  Parser(std::string_view text, const ArityProfile* profile)
      : s_{text}, profile_(profile) {}

  Polynomial polynomial() {
    std::vector<std::pair<Rational, ParsedTerm>> terms;
    s_.skip_ws();
    bool neg = s_.eat('-');
    terms.emplace_back(neg ? -1 : 1, term());
    s_.skip_ws();
    while (!s_.at_end()) {
      char c = s_.peek();
      if (c == '+' || c == '-') {
        s_.get();
        s_.skip_ws();
        terms.emplace_back(c == '-' ? -1 : 1, term());
        s_.skip_ws();
      } else {
        s_.fail("expected '+' or '-' between terms");
      }
    }
    Polynomial p(resolved_mode());
    for (auto& [sign, t] : terms) p.add_term(materialize(t.factors), sign * t.coeff);
    return p;
  }

  Bracketting bracketting() {
    s_.skip_ws();
    s_.expect('[');
    std::vector<std::vector<std::pair<Generator, int>>> slots;
    for (;;) {
      s_.skip_ws();
      int line = s_.line, col = s_.col;
      slots.push_back(factors());
      if (slots.back().empty()) throw ParseError(line, col, "empty bracket slot");
      s_.skip_ws();
      if (s_.eat('|')) continue;
      s_.expect(']');
      break;
    }
    s_.skip_ws();
    if (!s_.at_end()) s_.fail("trailing input after the bracketting");
    Mode mode = resolved_mode();
    std::vector<Monomial> monos;
    monos.reserve(slots.size());
    for (auto& f : slots) monos.push_back(materialize(f));
    for (const auto& m : monos)
      if (m.is_unit()) s_.fail("bracket slot reduces to the unit");
    return Bracketting(mode, std::move(monos));
  }

  Expression expression() {
    s_.skip_ws();
    if (s_.peek() == '[') return bracketting();
    return polynomial();
  }

 private:
  Scanner s_;
  const ArityProfile* profile_;
  std::optional<Mode> mode_;

  Mode resolved_mode() const {
    if (mode_) return *mode_;
    return profile_ ? profile_->mode() : Mode::commutative;
  }

  Monomial materialize(const std::vector<std::pair<Generator, int>>& factors) const {
    std::vector<Generator> gens;
    for (const auto& [gen, exp] : factors)
      for (int i = 0; i < exp; ++i) gens.push_back(gen);
    return Monomial(resolved_mode(), std::move(gens));
  }

  ParsedTerm term() {
    ParsedTerm t;
    s_.skip_ws();
    if (std::isdigit(static_cast<unsigned char>(s_.peek()))) {
      t.coeff = rational();
      s_.skip_ws();
      if (s_.eat('*')) {
        t.factors = factors();
        if (t.factors.empty()) s_.fail("expected a generator after '*'");
      } else if (s_.peek() == 'p') {
        t.factors = factors();  // juxtaposed coefficient
      }
      return t;
    }
    t.factors = factors();
    if (t.factors.empty()) s_.fail("expected a term");
    return t;
  }

  std::vector<std::pair<Generator, int>> factors() {
    std::vector<std::pair<Generator, int>> out;
    for (;;) {
      s_.skip_ws();
      if (s_.peek() == 'p') {
        out.push_back(factor());
        s_.skip_ws();
        if (s_.eat('*')) {
          s_.skip_ws();
          if (s_.peek() != 'p') s_.fail("expected a generator after '*'");
        }
        continue;
      }
      break;
    }
    return out;
  }

  std::pair<Generator, int> factor() {
    Generator gen = generator();
    int exp = 1;
    s_.skip_ws();
    if (s_.eat('^')) exp = static_cast<int>(natural("exponent"));
    return {gen, exp};
  }

  Generator generator() {
    s_.skip_ws();
    int line = s_.line, col = s_.col;
    std::string kw;
    while (std::isalpha(static_cast<unsigned char>(s_.peek()))) kw += s_.get();
    Mode kw_mode;
    if (kw == "phi")
      kw_mode = Mode::commutative;
    else if (kw == "psi")
      kw_mode = Mode::noncommutative;
    else
      throw ParseError(line, col, "expected 'phi' or 'psi', got '" + kw + "'");
    if (profile_ && profile_->mode() != kw_mode)
      throw ParseError(line, col,
                       kw == "phi" ? "'phi' requires a commutative profile"
                                   : "'psi' requires a noncommutative profile");
    if (mode_ && *mode_ != kw_mode)
      throw ParseError(line, col, "cannot mix 'phi' and 'psi' in one expression");
    mode_ = kw_mode;

    s_.expect('[');
    long long field = natural("field index");
    s_.skip_ws();
    s_.expect(']');
    s_.skip_ws();
    s_.expect('(');
    std::vector<int> labels;
    for (;;) {
      labels.push_back(label());
      s_.skip_ws();
      if (s_.eat(',')) continue;
      s_.expect(')');
      break;
    }
    try {
      Generator gen(static_cast<int>(field), std::move(labels));
      if (profile_) profile_->validate(gen);
      return gen;
    } catch (const ParseError&) {
      throw;
    } catch (const error& e) {
      throw ParseError(line, col, std::string(e.what()) + " in generator here");
    }
  }

  int label() {
    s_.skip_ws();
    int line = s_.line, col = s_.col;
    if (s_.peek() != 'x') s_.fail("expected a label 'xN'");
    s_.get();
    long long v = natural("label");
    if (v < 1) throw ParseError(line, col, "labels must be positive integers");
    return static_cast<int>(v);
  }

  long long natural(const std::string& what) {
    s_.skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(s_.peek()))) s_.fail("expected a " + what);
    long long v = 0;
    int digits = 0;
    while (std::isdigit(static_cast<unsigned char>(s_.peek()))) {
      v = v * 10 + (s_.get() - '0');
      if (++digits > 9) s_.fail(what + " is too large");
    }
    return v;
  }

  Rational rational() {
    long long num = natural("number");
    s_.skip_ws();
    if (s_.eat('/')) {
      long long den = natural("denominator");
      if (den == 0) s_.fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const ArityProfile* profile = nullptr) {
  return detail::Parser(text, profile).polynomial();
}

inline Bracketting parse_bracketting(std::string_view text,
                                     const ArityProfile* profile = nullptr) {
  return detail::Parser(text, profile).bracketting();
}

inline Expression parse_expression(std::string_view text,
                                   const ArityProfile* profile = nullptr) {
  return detail::Parser(text, profile).expression();
}

// Form-table entry keys: one monomial with no coefficient.
inline Monomial parse_monomial(std::string_view text, const ArityProfile* profile = nullptr) {
  Polynomial p = parse_polynomial(text, profile);
  if (p.terms().size() != 1 || p.terms().begin()->second != Rational(1))
    throw ParseError(1, 1, "expected a plain monomial");
  return p.terms().begin()->first;
}

}  // namespace lce

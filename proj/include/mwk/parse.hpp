#pragma once

// Text syntax for Milnor-Witt expressions.
//
//   expr     := ["+"|"-"] term { ("+"|"-") term }
//   term     := int | [int "*"] factor { "*" factor }
//   factor   := "eta" | "[" rational {"," rational} "]" | "<" rational ">" | "h"
//   rational := int ["/" positive-int]
//
// <a> stands for 1 + eta*[a] and h for 2 + eta*[-1]. A bare integer is a
// constant in degree 0.

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "mwk/mwcore.hpp"

namespace mwk {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  MwExpr parse() {
    skip();
    if (at_end()) fail("empty expression");
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1 : 1;
    }
    std::optional<MwExpr> acc = scale(sign, term());
    for (;;) {
      skip();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      get();
      skip();
      const std::size_t at = pos_;
      MwExpr t = term();
      if (t.degree() != acc->degree())
        throw Error(ErrorCode::DegreeMismatch, "position " + std::to_string(at) + ": term of degree " +
                                                   std::to_string(t.degree()) + " added to degree " +
                                                   std::to_string(acc->degree()));
      acc = c == '-' ? sub(*acc, t) : add(*acc, t);
    }
    return *acc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "position " + std::to_string(pos_) + ": " + what);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(get());
    return out;
  }

  Rational rational() {
    skip();
    const std::size_t start = pos_;
    std::string text;
    if (!at_end() && (peek() == '-' || peek() == '+')) text.push_back(get());
    skip();
    const std::string n = digits();
    if (n.empty()) fail("expected an integer");
    text += n;
    skip();
    if (!at_end() && peek() == '/') {
      get();
      skip();
      const std::string d = digits();
      if (d.empty()) fail("expected a denominator");
      if (std::all_of(d.begin(), d.end(), [](char c) { return c == '0'; })) {
        pos_ = start;
        fail("zero denominator");
      }
      text += "/" + d;
    }
    return Rational::parse(text);
  }

  MwExpr factor() {
    skip();
    if (at_end()) fail("expected a factor");
    const std::size_t start = pos_;
    if (s_.substr(pos_, 3) == "eta") {
      pos_ += 3;
      return eta();
    }
    if (peek() == 'h') {
      get();
      return hyperbolic();
    }
    if (peek() == '<') {
      get();
      const Rational a = rational();
      expect('>');
      if (a.is_zero()) throw Error(ErrorCode::ZeroEntry, "position " + std::to_string(start) + ": zero entry");
      return bracket_unit(a);
    }
    if (peek() == '[') {
      get();
      std::vector<Rational> entries{rational()};
      skip();
      while (!at_end() && peek() == ',') {
        get();
        entries.push_back(rational());
        skip();
      }
      expect(']');
      for (const auto& a : entries)
        if (a.is_zero()) throw Error(ErrorCode::ZeroEntry, "position " + std::to_string(start) + ": zero entry");
      return make_symbol(std::move(entries));
    }
    fail(std::string("unexpected '") + peek() + "'");
  }

  MwExpr term() {
    skip();
    long long coeff = 1;
    bool have_coeff = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::string n = digits();
      if (n.size() > 18) fail("coefficient too large");
      coeff = std::stoll(n);
      have_coeff = true;
      skip();
      if (at_end() || peek() != '*') return constant(coeff);
      get();
    }
    MwExpr acc = factor();
    for (;;) {
      skip();
      if (at_end() || peek() != '*') break;
      get();
      acc = mul(acc, factor());
    }
    return have_coeff ? scale(coeff, acc) : acc;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MwExpr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Renders an expression in the syntax accepted by parse_expr. The empty
/// expression of degree n renders as 0*X for a monomial X of that degree.
inline std::string render(const MwExpr& e) {
  auto monomial = [](const Term& t) {
    std::vector<std::string> parts;
    for (unsigned i = 0; i < t.eta; ++i) parts.push_back("eta");
    if (!t.entries.empty()) {
      std::string b = "[";
      for (std::size_t i = 0; i < t.entries.size(); ++i) b += (i ? "," : "") + t.entries[i].str();
      parts.push_back(b + "]");
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
  };
  if (e.empty()) {
    const int n = e.degree();
    if (n == 0) return "0";
    Term t{1, n < 0 ? static_cast<unsigned>(-n) : 0u, std::vector<Rational>(n > 0 ? n : 0, Rational(1))};
    return "0*" + monomial(t);
  }
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    const long long c = t.coeff < 0 ? -t.coeff : t.coeff;
    if (first) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    first = false;
    const std::string m = monomial(t);
    if (m.empty()) out += std::to_string(c);
    else if (c == 1) out += m;
    else out += std::to_string(c) + "*" + m;
  }
  return out;
}

}  // namespace mwk

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "mwk/error.hpp"

namespace mwk {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number with a positive denominator coprime to the numerator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw Error(ErrorCode::ZeroInput, "zero denominator");
    normalize();
  }

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }
  bool is_integer() const noexcept { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
  Rational abs() const { return Rational(num_ < 0 ? Integer(-num_) : num_, den_, raw_tag{}); }
  Rational inverse() const {
    if (num_ == 0) throw Error(ErrorCode::ZeroInput, "inverse of zero");
    return num_ < 0 ? Rational(-den_, -num_, raw_tag{}) : Rational(den_, num_, raw_tag{});
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Integer l = a.num_ * b.den_;
    const Integer r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Integer power; negative exponents invert.
  Rational pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Integer n = 1, d = 1;
    for (long long i = 0; i < e; ++i) {
      n *= num_;
      d *= den_;
    }
    return Rational(std::move(n), std::move(d), raw_tag{});
  }

  /// Canonical rendering: "num/den", with "/den" omitted when den = 1.
  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  /// Parses "[-]digits[/digits]". Throws ParseError on malformed text.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    bool neg = false;
    std::string_view s = text;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!digits(ns) || !digits(ds))
      throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    Integer n{std::string(ns)};
    Integer d{std::string(ds)};
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(neg ? Integer(-n) : n, d);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct raw_tag {};
  Rational(Integer n, Integer d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Integer g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Integer num_;
  Integer den_;
};

}  // namespace mwk

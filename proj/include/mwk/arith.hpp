#pragma once

// Exact arithmetic over Q and the classical local symbols: factorization,
// square classes, Legendre and tame symbols, quadratic Hilbert symbols.

#include <atomic>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwk/error.hpp"
#include "mwk/rational.hpp"

namespace mwk {

using Prime = std::uint64_t;

// ---------------------------------------------------------------------------
// Places of Q

/// The real place or a finite place given by a prime.
class Place {
 public:
  static Place real() { return Place(0); }
  static Place finite(Prime p) { return Place(p); }

  bool is_real() const noexcept { return p_ == 0; }
  bool is_finite() const noexcept { return p_ != 0; }
  Prime prime() const noexcept { return p_; }

  std::string str() const { return is_real() ? std::string("inf") : std::to_string(p_); }

  friend bool operator==(Place, Place) = default;
  // Real place sorts last so maps print primes first, then "inf".
  friend std::strong_ordering operator<=>(Place a, Place b) {
    if (a.p_ == b.p_) return std::strong_ordering::equal;
    if (a.is_real()) return std::strong_ordering::greater;
    if (b.is_real()) return std::strong_ordering::less;
    return a.p_ <=> b.p_;
  }

 private:
  explicit Place(Prime p) : p_(p) {}
  Prime p_;
};

// ---------------------------------------------------------------------------
// Modular helpers (64-bit moduli, 128-bit intermediates)

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // p prime
  return powmod(a, p - 2, p);
}

inline std::uint64_t integer_mod(const Integer& x, std::uint64_t m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

/// Valuation ord_p of a nonzero rational.
inline int ord(const Rational& x, Prime p) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  int v = 0;
  Integer n = x.num();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  Integer d = x.den();
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

/// x / p^{ord_p x}.
inline Rational unit_part(const Rational& x, Prime p) { return x / Rational(Integer(p)).pow(ord(x, p)); }

/// Reduction of a p-integral rational modulo p (least nonnegative residue).
inline std::uint64_t reduce_mod(const Rational& x, Prime p) {
  const std::uint64_t d = integer_mod(x.den(), p);
  if (d == 0) throw Error(ErrorCode::ZeroInput, "rational " + x.str() + " is not p-integral at " + std::to_string(p));
  return mulmod(integer_mod(x.num(), p), invmod(d, p), p);
}

// ---------------------------------------------------------------------------
// Factorization

/// Global bound on the number of decimal digits of numerators and
/// denominators that factorize() accepts. Values above 19 are clamped.
inline std::atomic<int>& max_factor_digits() {
  static std::atomic<int> digits{18};
  return digits;
}

struct Factorization {
  int sign = 1;
  std::map<Prime, int> exponents;

  Rational value() const {
    Rational r(sign);
    for (const auto& [p, e] : exponents) r *= Rational(Integer(p)).pow(e);
    return r;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

inline void factor_u64(std::uint64_t n, int mult, std::map<Prime, int>& out) {
  auto take = [&](std::uint64_t q) {
    while (n % q == 0) {
      n /= q;
      out[q] += mult;
    }
  };
  take(2);
  take(3);
  for (std::uint64_t q = 5; n > 1; q += 6) {
    if (is_prime(n)) {
      out[n] += mult;
      return;
    }
    if (q > n / q) break;
    take(q);
    take(q + 2);
  }
  if (n > 1) out[n] += mult;
}

inline std::uint64_t checked_u64(const Integer& x) {
  const int cap = std::min(max_factor_digits().load(), 19);
  const std::string s = x.str();
  if (static_cast<int>(s.size()) > cap)
    throw Error(ErrorCode::FactorizationOverflow,
                s + " has more than " + std::to_string(cap) + " digits");
  return x.convert_to<std::uint64_t>();
}

}  // namespace detail

inline Factorization factorize(const Rational& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "factorize(0)");
  Factorization f;
  f.sign = x.sign();
  detail::factor_u64(detail::checked_u64(x.num() < 0 ? Integer(-x.num()) : x.num()), 1, f.exponents);
  detail::factor_u64(detail::checked_u64(x.den()), -1, f.exponents);
  std::erase_if(f.exponents, [](const auto& kv) { return kv.second == 0; });
  return f;
}

/// Primes dividing the numerator or denominator of x.
inline std::set<Prime> prime_support(const Rational& x) {
  std::set<Prime> s;
  for (const auto& [p, e] : factorize(x).exponents) s.insert(p);
  return s;
}

/// Unique squarefree integer d with x/d a rational square.
inline Integer square_class(const Rational& x) {
  const Factorization f = factorize(x);
  Integer d = f.sign;
  for (const auto& [p, e] : f.exponents)
    if (e % 2 != 0) d *= p;
  return d;
}

/// Square class of the product of two squarefree integers, without factoring.
inline Integer squarefree_mul(const Integer& a, const Integer& b) {
  const Integer g = boost::multiprecision::gcd(a, b);
  const Integer r = (a / g) * (b / g);
  return g < 0 ? Integer(-r) : r;
}

/// x is the square of a rational.
inline bool is_rational_square(const Rational& x) {
  if (x.sign() <= 0) return false;
  const Integer n = boost::multiprecision::sqrt(x.num());
  const Integer d = boost::multiprecision::sqrt(x.den());
  return n * n == x.num() && d * d == x.den();
}

// ---------------------------------------------------------------------------
// Local symbols

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(const Integer& a, Prime p) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
  const std::uint64_t r = integer_mod(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Legendre symbol of an element of F_p^x given by its least positive residue.
inline int legendre_residue(std::uint64_t r, Prime p) { return legendre(Integer(r), p); }

/// Tame symbol (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} mod p, as least positive residue.
inline std::uint64_t tame_symbol(const Rational& a, const Rational& b, Prime p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::ZeroInput, "tame symbol of zero");
  const int va = ord(a, p);
  const int vb = ord(b, p);
  const Rational ua = unit_part(a, p);
  const Rational ub = unit_part(b, p);
  // ua^{vb} * ub^{-va}; the p-power parts cancel.
  auto upow = [p](std::uint64_t base, long long e) {
    if (e < 0) return powmod(invmod(base, p), static_cast<std::uint64_t>(-e), p);
    return powmod(base, static_cast<std::uint64_t>(e), p);
  };
  std::uint64_t r = mulmod(upow(reduce_mod(ua, p), vb), upow(reduce_mod(ub, p), -static_cast<long long>(va)), p);
  if ((static_cast<long long>(va) * vb) % 2 != 0) r = (p - r) % p;
  return r;
}

namespace detail {

/// (u mod 8) for a 2-adic unit rational u.
inline unsigned mod8(const Rational& u) {
  const unsigned n = static_cast<unsigned>(integer_mod(u.num(), 8));
  const unsigned d = static_cast<unsigned>(integer_mod(u.den(), 8));
  return (n * d) % 8;  // d^{-1} = d mod 8 for odd d
}

inline unsigned eps2(unsigned u) { return ((u - 1) / 2) % 2; }
inline unsigned omega2(unsigned u) { return ((u * u - 1) / 8) % 2; }

}  // namespace detail

/// Quadratic Hilbert symbol (a, b)_v in {+1, -1}.
inline int hilbert_classical(const Rational& a, const Rational& b, Place v) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::ZeroInput, "Hilbert symbol of zero");
  if (v.is_real()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  const Prime p = v.prime();
  if (p != 2) return legendre_residue(tame_symbol(a, b, p), p);
  const int alpha = ord(a, 2);
  const int beta = ord(b, 2);
  const unsigned u = detail::mod8(unit_part(a, 2));
  const unsigned w = detail::mod8(unit_part(b, 2));
  const unsigned e = detail::eps2(u) * detail::eps2(w) + static_cast<unsigned>(alpha & 1) * detail::omega2(w) +
                     static_cast<unsigned>(beta & 1) * detail::omega2(u);
  return (e % 2) ? -1 : 1;
}

/// Order of the group of roots of unity in Q_v.
inline std::uint64_t mu_order(Place v) {
  if (v.is_real() || v.prime() == 2) return 2;
  return v.prime() - 1;
}

/// Least positive integer that is a nonsquare modulo the odd prime p.
inline std::uint64_t least_nonsquare(Prime p) {
  for (std::uint64_t u = 2;; ++u)
    if (legendre_residue(u, p) == -1) return u;
}

/// The places at which a Hilbert symbol of entries from `values` can be
/// nontrivial: the real place, 2, and every prime dividing some entry.
inline std::set<Place> relevant_places(const std::vector<Rational>& values) {
  std::set<Place> s{Place::real(), Place::finite(2)};
  for (const auto& x : values)
    for (Prime p : prime_support(x)) s.insert(Place::finite(p));
  return s;
}

}  // namespace mwk

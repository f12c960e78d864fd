#pragma once

// Diagonal quadratic forms over Q, their local-global invariants, and the
// small Witt / Grothendieck-Witt groups of F_p and Q_p.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mwk/arith.hpp"

namespace mwk {

/// Diagonal form <a_1, ..., a_n> over Q. The empty form is the zero form.
class DiagForm {
 public:
  DiagForm() = default;
  explicit DiagForm(std::vector<Rational> entries) : entries_(std::move(entries)) {
    for (const auto& a : entries_)
      if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "diagonal form with zero entry");
  }
  DiagForm(std::initializer_list<Rational> entries) : DiagForm(std::vector<Rational>(entries)) {}

  const std::vector<Rational>& entries() const noexcept { return entries_; }
  std::size_t rank() const noexcept { return entries_.size(); }

  /// Orthogonal sum.
  friend DiagForm operator+(const DiagForm& a, const DiagForm& b) {
    DiagForm r = a;
    r.entries_.insert(r.entries_.end(), b.entries_.begin(), b.entries_.end());
    return r;
  }
  /// The form <-1> tensor q, which is the additive inverse in W(Q).
  DiagForm operator-() const { return scaled(Rational(-1)); }

  DiagForm scaled(const Rational& c) const {
    DiagForm r;
    r.entries_.reserve(entries_.size());
    for (const auto& a : entries_) r.entries_.push_back(a * c);
    return r;
  }

  friend DiagForm tensor(const DiagForm& a, const DiagForm& b) {
    DiagForm r;
    for (const auto& x : a.entries_)
      for (const auto& y : b.entries_) r.entries_.push_back(x * y);
    return r;
  }

 private:
  std::vector<Rational> entries_;
};

/// Pfister form <<a_1, ..., a_k>> = <1, -a_1> x ... x <1, -a_k>; k = 0 gives <1>.
inline DiagForm pfister(const std::vector<Rational>& as) {
  DiagForm r{Rational(1)};
  for (const auto& a : as) {
    if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "Pfister form of zero");
    r = tensor(r, DiagForm{Rational(1), -a});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Isometry invariants over Q

inline Integer signed_class(long long rank, const Integer& det) {
  const long long r = rank % 4;  // (-1)^{r(r-1)/2} depends on r mod 4
  const bool flip = (r == 2 || r == 3);
  return flip ? Integer(-det) : det;
}

/// Rank, determinant class, Hasse-Witt invariant (first convention,
/// prod_{i<j} (a_i, a_j)_p) at every prime, and signature.
struct LocalInvariants {
  long long rank = 0;
  Integer det_class = 1;
  std::set<Prime> hasse_negative;  // primes whose Hasse bit is -1
  long long signature = 0;
  std::set<Prime> det_primes;  // primes dividing det_class

  Integer signed_disc() const { return signed_class(rank, det_class); }
  int hasse(Prime p) const { return hasse_negative.count(p) ? -1 : 1; }

  friend bool operator==(const LocalInvariants&, const LocalInvariants&) = default;
};

/// Invariants of the one-dimensional form <a>.
inline LocalInvariants invariants_of_entry(const Rational& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "form entry zero");
  const Integer d = square_class(a);
  return LocalInvariants{1, d, {}, a.sign(), prime_support(Rational(d))};
}

/// Invariants of q1 + q2 from those of the summands:
/// Hasse(q1 + q2) = Hasse(q1) Hasse(q2) (det q1, det q2)_p.
inline LocalInvariants orthogonal_sum(const LocalInvariants& x, const LocalInvariants& y) {
  LocalInvariants r;
  r.rank = x.rank + y.rank;
  r.det_class = squarefree_mul(x.det_class, y.det_class);
  r.signature = x.signature + y.signature;
  std::set<Prime> primes{2};
  primes.insert(x.det_primes.begin(), x.det_primes.end());
  primes.insert(y.det_primes.begin(), y.det_primes.end());
  for (Prime p : primes)
    if (p != 2 && r.det_class % p == 0) r.det_primes.insert(p);
  if (r.det_class % 2 == 0) r.det_primes.insert(2);
  primes.insert(x.hasse_negative.begin(), x.hasse_negative.end());
  primes.insert(y.hasse_negative.begin(), y.hasse_negative.end());
  for (Prime p : primes) {
    const int h = x.hasse(p) * y.hasse(p) * hilbert_classical(Rational(x.det_class), Rational(y.det_class), Place::finite(p));
    if (h < 0) r.hasse_negative.insert(p);
  }
  return r;
}

/// Invariants of k copies of a form (k >= 0), by doubling.
inline LocalInvariants multiple(const LocalInvariants& x, long long k) {
  LocalInvariants acc;
  LocalInvariants base = x;
  while (k > 0) {
    if (k & 1) acc = orthogonal_sum(acc, base);
    k >>= 1;
    if (k) base = orthogonal_sum(base, base);
  }
  return acc;
}

/// Invariants straight from the entries, using prod_{i<j} (a_i, a_j)_p.
inline LocalInvariants invariants(const DiagForm& q) {
  LocalInvariants r;
  r.rank = static_cast<long long>(q.rank());
  for (const auto& a : q.entries()) {
    const LocalInvariants x = invariants_of_entry(a);
    r.det_class = squarefree_mul(r.det_class, x.det_class);
    r.det_primes.insert(x.det_primes.begin(), x.det_primes.end());
    r.signature += a.sign();
  }
  std::erase_if(r.det_primes, [&](Prime p) { return r.det_class % p != 0; });
  const auto& e = q.entries();
  for (Place v : relevant_places(e)) {
    if (v.is_real()) continue;
    int h = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) h *= hilbert_classical(e[i], e[j], v);
    if (h < 0) r.hasse_negative.insert(v.prime());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Witt classes over Q

/// Complete invariants of a class in W(Q): rank parity, signed discriminant,
/// signature, and the Hasse-Witt bits of the representative padded with
/// hyperbolic planes to rank 0 or 1 mod 8. The padded bits depend only on
/// the Witt class; for <<a, b>> they equal (a, b)_p.
struct WittInvariants {
  int rank_parity = 0;
  Integer signed_disc = 1;
  std::set<Prime> hasse_negative;
  long long signature = 0;

  int hasse(Prime p) const { return hasse_negative.count(p) ? -1 : 1; }
  bool is_zero() const {
    return rank_parity == 0 && signed_disc == 1 && hasse_negative.empty() && signature == 0;
  }
  friend bool operator==(const WittInvariants&, const WittInvariants&) = default;
};

inline const LocalInvariants& hyperbolic_plane_invariants() {
  static const LocalInvariants h{2, -1, {}, 0};
  return h;
}

inline WittInvariants witt_invariants(const LocalInvariants& x) {
  const long long half = (x.rank / 2) % 4;
  const long long pad = (4 - half) % 4;
  LocalInvariants padded = x;
  for (long long i = 0; i < pad; ++i) padded = orthogonal_sum(padded, hyperbolic_plane_invariants());
  return WittInvariants{static_cast<int>(x.rank % 2), x.signed_disc(), padded.hasse_negative, x.signature};
}

inline WittInvariants witt_invariants(const DiagForm& q) { return witt_invariants(invariants(q)); }

/// Hasse-Minkowski: q is Witt-trivial iff rank even, signed discriminant 1,
/// signature 0, and every Hasse bit matches the split form of the same rank.
inline bool is_hyperbolic(const DiagForm& q) {
  const LocalInvariants inv = invariants(q);
  if (inv.rank % 2 != 0 || inv.signed_disc() != 1 || inv.signature != 0) return false;
  LocalInvariants split;
  for (long long i = 0; i < inv.rank / 2; ++i) split = orthogonal_sum(split, hyperbolic_plane_invariants());
  return inv.hasse_negative == split.hasse_negative;
}

inline bool witt_equal(const DiagForm& a, const DiagForm& b) { return is_hyperbolic(a + (-b)); }

/// Membership of a Witt class in I^n(Q).
inline bool in_power_I(const WittInvariants& w, unsigned n) {
  if (n == 0) return true;
  if (w.rank_parity != 0) return false;
  if (n == 1) return true;
  if (w.signed_disc != 1) return false;
  if (n == 2) return true;
  if (!w.hasse_negative.empty() || w.signature % 8 != 0) return false;
  if (n == 3) return true;
  const long long m = n >= 62 ? 0 : (1LL << n);
  return m != 0 ? w.signature % m == 0 : w.signature == 0;
}

inline bool in_power_I(const DiagForm& q, unsigned n) { return in_power_I(witt_invariants(q), n); }

// ---------------------------------------------------------------------------
// GW(F_p) and W(F_p)

/// Element of GW(F_p): rank and determinant class. For p = 2 only the rank.
struct GWFp {
  Prime p = 2;
  long long rank = 0;
  bool disc_square = true;

  friend bool operator==(const GWFp&, const GWFp&) = default;
  bool is_zero() const { return rank == 0 && disc_square; }
};

inline void require_same_prime(Prime a, Prime b) {
  if (a != b) throw Error(ErrorCode::PlaceMismatch, "elements over F_" + std::to_string(a) + " and F_" + std::to_string(b));
}

inline GWFp gw_fp_zero(Prime p) { return GWFp{p, 0, true}; }

/// The class <u> in GW(F_p) for a unit residue u.
inline GWFp gw_fp_unit(Prime p, std::uint64_t u) {
  return GWFp{p, 1, p == 2 || legendre_residue(u % p, p) == 1};
}

inline GWFp gw_fp_add(const GWFp& x, const GWFp& y) {
  require_same_prime(x.p, y.p);
  return GWFp{x.p, x.rank + y.rank, x.p == 2 || x.disc_square == y.disc_square};
}

/// disc(x y) = disc(x)^{rank y} disc(y)^{rank x}.
inline GWFp gw_fp_mul(const GWFp& x, const GWFp& y) {
  require_same_prime(x.p, y.p);
  if (x.p == 2) return GWFp{2, x.rank * y.rank, true};
  const bool dx = x.disc_square || (y.rank % 2 == 0);
  const bool dy = y.disc_square || (x.rank % 2 == 0);
  return GWFp{x.p, x.rank * y.rank, dx == dy};
}

inline bool gw_fp_eq(const GWFp& x, const GWFp& y) {
  require_same_prime(x.p, y.p);
  return x == y;
}

inline GWFp gw_fp_times(const GWFp& x, long long c) {
  const bool sq = x.p == 2 || x.disc_square || (c % 2 == 0);
  return GWFp{x.p, x.rank * c, sq};
}

/// Element of W(F_p): rank parity and signed discriminant class.
struct WFp {
  Prime p = 2;
  int rank_parity = 0;
  bool disc_square = true;

  friend bool operator==(const WFp&, const WFp&) = default;
  bool is_zero() const { return rank_parity == 0 && disc_square; }
};

inline WFp w_fp_zero(Prime p) { return WFp{p, 0, true}; }

inline WFp w_fp_unit(Prime p, std::uint64_t u) {
  return WFp{p, 1, p == 2 || legendre_residue(u % p, p) == 1};
}

/// Signed discriminants multiply with a factor (-1)^{e1 e2}, so the group
/// is Z/4 when p = 3 mod 4 and (Z/2)^2 when p = 1 mod 4.
inline WFp w_fp_add(const WFp& x, const WFp& y) {
  require_same_prime(x.p, y.p);
  if (x.p == 2) return WFp{2, x.rank_parity ^ y.rank_parity, true};
  bool sq = x.disc_square == y.disc_square;
  if (x.rank_parity && y.rank_parity && x.p % 4 == 3) sq = !sq;
  return WFp{x.p, x.rank_parity ^ y.rank_parity, sq};
}

inline WFp w_fp_negate(const WFp& x) {
  if (x.p == 2) return x;
  bool sq = x.disc_square;
  if (x.rank_parity && x.p % 4 == 3) sq = !sq;
  return WFp{x.p, x.rank_parity, sq};
}

inline WFp w_fp_times(const WFp& x, long long c) {
  WFp base = c < 0 ? w_fp_negate(x) : x;
  long long k = c < 0 ? -c : c;
  WFp acc = w_fp_zero(x.p);
  while (k > 0) {
    if (k & 1) acc = w_fp_add(acc, base);
    base = w_fp_add(base, base);
    k >>= 1;
  }
  return acc;
}

/// Witt class over F_p of a diagonal form with unit residues.
inline WFp w_fp_class(Prime p, const std::vector<std::uint64_t>& units) {
  WFp acc = w_fp_zero(p);
  for (auto u : units) acc = w_fp_add(acc, w_fp_unit(p, u));
  return acc;
}

// ---------------------------------------------------------------------------
// W(Q_p)

/// Witt class over Q_p: rank parity, local square class of the signed
/// discriminant (as a squarefree representative), and the padded Hasse bit.
struct WQp {
  Prime p = 2;
  int rank_parity = 0;
  Integer disc;
  int hasse = 1;

  friend bool operator==(const WQp&, const WQp&) = default;
  friend auto operator<=>(const WQp& a, const WQp& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    if (auto c = a.rank_parity <=> b.rank_parity; c != 0) return c;
    if (a.disc != b.disc) return a.disc < b.disc ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.hasse <=> b.hasse;
  }
};

/// Representative of the square class of x in Q_p^x: one of {1, u, p, up}
/// for odd p (u the least nonsquare), one of {1,3,5,7,2,6,10,14} for p = 2.
inline Integer local_square_class(const Rational& x, Prime p) {
  const int a = ord(x, p);
  const Rational w = unit_part(x, p);
  Integer rep;
  if (p == 2) {
    rep = detail::mod8(w);
  } else {
    const std::uint64_t r = reduce_mod(w, p);
    rep = legendre_residue(r, p) == 1 ? Integer(1) : Integer(least_nonsquare(p));
  }
  if (a % 2 != 0) rep *= p;
  return rep;
}

inline WQp wqp_class(const DiagForm& q, Prime p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const WittInvariants w = witt_invariants(q);
  return WQp{p, w.rank_parity, local_square_class(Rational(w.signed_disc), p), w.hasse(p)};
}

}  // namespace mwk

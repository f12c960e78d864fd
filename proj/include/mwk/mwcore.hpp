#pragma once

// Symbolic Milnor-Witt K-theory of Q.
//
// An MwExpr is a formal Z-linear combination of monomials eta^m [a_1]...[a_k]
// of a single degree n = k - m. Equality is decided through the pullback
//
//   K_n^MW(Q) -> K_n^M(Q)
//       |            |
//     I^n(Q) -> I^n/I^{n+1}
//
// so two expressions are equal iff their Milnor images and their Witt images
// agree. Both images are computed term by term; no rewriting is needed.
// Rewriting is used only for residue maps, which need monomials led by [p].

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwk/arith.hpp"
#include "mwk/quadform.hpp"

namespace mwk {

// ---------------------------------------------------------------------------
// Expressions

struct Term {
  long long coeff = 0;
  unsigned eta = 0;
  std::vector<Rational> entries;

  int degree() const { return static_cast<int>(entries.size()) - static_cast<int>(eta); }

  friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {

inline bool monomial_less(const Term& a, const Term& b) {
  if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size();
  if (a.eta != b.eta) return a.eta < b.eta;
  return std::lexicographical_compare(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end());
}

inline bool same_monomial(const Term& a, const Term& b) { return a.eta == b.eta && a.entries == b.entries; }

}  // namespace detail

/// Homogeneous formal expression in the generators [a] and eta.
class MwExpr {
 public:
  explicit MwExpr(int degree = 0) : degree_(degree) {}

  MwExpr(int degree, std::vector<Term> terms) : degree_(degree), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (t.degree() != degree_)
        throw Error(ErrorCode::DegreeMismatch, "term of degree " + std::to_string(t.degree()) +
                                                   " in expression of degree " + std::to_string(degree_));
      for (const auto& a : t.entries)
        if (a.is_zero()) throw Error(ErrorCode::ZeroEntry, "symbol entry is zero");
    }
    canonicalize();
  }

  int degree() const noexcept { return degree_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// All symbol entries appearing in the expression.
  std::vector<Rational> entries() const {
    std::vector<Rational> out;
    for (const auto& t : terms_) out.insert(out.end(), t.entries.begin(), t.entries.end());
    return out;
  }

  /// Primes dividing some entry.
  std::set<Prime> primes() const {
    std::set<Prime> s;
    for (const auto& t : terms_)
      for (const auto& a : t.entries)
        for (Prime p : prime_support(a)) s.insert(p);
    return s;
  }

  friend bool operator==(const MwExpr&, const MwExpr&) = default;

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), detail::monomial_less);
    std::vector<Term> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && detail::same_monomial(merged.back(), t))
        merged.back().coeff += t.coeff;
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(merged);
  }

  int degree_;
  std::vector<Term> terms_;
};

inline MwExpr make_symbol(std::vector<Rational> entries) {
  const int n = static_cast<int>(entries.size());
  return MwExpr(n, {Term{1, 0, std::move(entries)}});
}

inline MwExpr constant(long long c) { return MwExpr(0, {Term{c, 0, {}}}); }
inline MwExpr eta() { return MwExpr(-1, {Term{1, 1, {}}}); }

inline MwExpr add(const MwExpr& a, const MwExpr& b) {
  if (a.degree() != b.degree())
    throw Error(ErrorCode::DegreeMismatch,
                "cannot add degrees " + std::to_string(a.degree()) + " and " + std::to_string(b.degree()));
  std::vector<Term> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return MwExpr(a.degree(), std::move(t));
}

inline MwExpr scale(long long c, const MwExpr& e) {
  std::vector<Term> t = e.terms();
  for (auto& x : t) x.coeff *= c;
  return MwExpr(e.degree(), std::move(t));
}

inline MwExpr sub(const MwExpr& a, const MwExpr& b) { return add(a, scale(-1, b)); }

/// Distributive product: entry lists concatenate, eta powers add.
inline MwExpr mul(const MwExpr& a, const MwExpr& b) {
  std::vector<Term> t;
  t.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      Term z{x.coeff * y.coeff, x.eta + y.eta, x.entries};
      z.entries.insert(z.entries.end(), y.entries.begin(), y.entries.end());
      t.push_back(std::move(z));
    }
  return MwExpr(a.degree() + b.degree(), std::move(t));
}

inline MwExpr eta_mul(const MwExpr& e) { return mul(eta(), e); }

/// <a> = 1 + eta[a].
inline MwExpr bracket_unit(const Rational& a) { return add(constant(1), eta_mul(make_symbol({a}))); }

/// h = 2 + eta[-1].
inline MwExpr hyperbolic() { return add(constant(2), eta_mul(make_symbol({Rational(-1)}))); }

/// [-1]^n.
inline MwExpr minus_one_power(int n) { return make_symbol(std::vector<Rational>(static_cast<std::size_t>(n), Rational(-1))); }

// ---------------------------------------------------------------------------
// Milnor image

/// Normal form of the image in Milnor K-theory K_n^M(Q).
///  n <= -1: trivial;  n = 0: an integer;  n = 1: an element of Q^x;
///  n = 2: real Hilbert bit plus tame symbols at odd primes (the dyadic
///  component is fixed by the product formula);  n >= 3: the real bit.
struct MilnorNF {
  int degree = 0;
  Integer rank = 0;                       // n = 0
  Rational unit = Rational(1);            // n = 1
  int real_bit = 0;                       // n >= 2
  std::map<Prime, std::uint64_t> tame;    // n = 2, nontrivial values only

  bool is_trivial() const {
    if (degree < 0) return true;
    if (degree == 0) return rank == 0;
    if (degree == 1) return unit == Rational(1);
    return real_bit == 0 && tame.empty();
  }
  friend bool operator==(const MilnorNF&, const MilnorNF&) = default;
};

inline MilnorNF milnor_image(const MwExpr& e) {
  MilnorNF m;
  m.degree = e.degree();
  const int n = e.degree();
  if (n < 0) return m;
  for (const auto& t : e.terms()) {
    if (t.eta != 0) continue;  // killing eta
    if (n == 0) {
      m.rank += t.coeff;
    } else if (n == 1) {
      m.unit *= t.entries[0].pow(t.coeff);
    } else {
      const bool all_negative =
          std::all_of(t.entries.begin(), t.entries.end(), [](const Rational& a) { return a.sign() < 0; });
      if (all_negative && t.coeff % 2 != 0) m.real_bit ^= 1;
    }
  }
  if (n == 2) {
    std::map<Prime, std::uint64_t> tame;
    for (Prime p : e.primes()) {
      if (p == 2) continue;
      std::uint64_t v = 1;
      for (const auto& t : e.terms()) {
        if (t.eta != 0) continue;
        std::uint64_t s = tame_symbol(t.entries[0], t.entries[1], p);
        if (t.coeff < 0) s = invmod(s, p);
        v = mulmod(v, powmod(s, static_cast<std::uint64_t>(t.coeff < 0 ? -t.coeff : t.coeff), p), p);
      }
      if (v != 1) tame[p] = v;
    }
    m.tame = std::move(tame);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Witt image

/// Image in W(Q) under the ring map eta -> <-1>, [a] -> <<a>> = <1, -a>.
/// A pure symbol [a_1, ..., a_n] maps to +<<a_1, ..., a_n>>, so
/// [-1, -1] maps to <<-1, -1>> = 4<1>.
struct WittNF {
  int degree = 0;
  WittInvariants inv;

  long long signature() const { return inv.signature; }
  bool is_zero() const { return inv.is_zero(); }
  friend bool operator==(const WittNF&, const WittNF&) = default;
};

/// Invariants of the actual quadratic form sum_t coeff_t (-1)^{eta_t} <<entries_t>>.
inline LocalInvariants witt_form_invariants(const MwExpr& e) {
  LocalInvariants acc;
  for (const auto& t : e.terms()) {
    const long long sgn = (t.eta % 2 == 0) ? 1 : -1;
    const long long c = t.coeff * sgn;
    DiagForm pf = pfister(t.entries);
    if (c < 0) pf = -pf;
    acc = orthogonal_sum(acc, multiple(invariants(pf), c < 0 ? -c : c));
  }
  return acc;
}

inline WittNF witt_image(const MwExpr& e) { return WittNF{e.degree(), witt_invariants(witt_form_invariants(e))}; }

inline long long signature(const MwExpr& e) { return witt_form_invariants(e).signature; }

// ---------------------------------------------------------------------------
// Residue classes in K_m^MW(F_p)

/// Element of K_m^MW(F_p): trivial for m >= 2, F_p^x for m = 1,
/// GW(F_p) for m = 0 and W(F_p) for m < 0.
struct ResidueClass {
  Prime p = 2;
  int degree = 0;
  std::uint64_t unit = 1;  // m = 1, least positive residue
  GWFp gw;                 // m = 0
  WFp w;                   // m < 0

  static ResidueClass zero(Prime p, int m) {
    ResidueClass r;
    r.p = p;
    r.degree = m;
    r.gw = gw_fp_zero(p);
    r.w = w_fp_zero(p);
    return r;
  }

  bool is_trivial() const {
    if (degree >= 2) return true;
    if (degree == 1) return unit == 1;
    if (degree == 0) return gw.is_zero();
    return w.is_zero();
  }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

inline ResidueClass residue_add(const ResidueClass& a, const ResidueClass& b) {
  require_same_prime(a.p, b.p);
  if (a.degree != b.degree) throw Error(ErrorCode::DegreeMismatch, "residue classes of different degree");
  ResidueClass r = a;
  if (a.degree == 1) r.unit = mulmod(a.unit, b.unit, a.p);
  else if (a.degree == 0) r.gw = gw_fp_add(a.gw, b.gw);
  else if (a.degree < 0) r.w = w_fp_add(a.w, b.w);
  return r;
}

inline ResidueClass residue_times(const ResidueClass& a, long long c) {
  ResidueClass r = a;
  if (a.degree == 1) {
    const std::uint64_t base = c < 0 ? invmod(a.unit, a.p) : a.unit;
    r.unit = powmod(base, static_cast<std::uint64_t>(c < 0 ? -c : c), a.p);
  } else if (a.degree == 0) {
    r.gw = gw_fp_times(a.gw, c);
  } else if (a.degree < 0) {
    r.w = w_fp_times(a.w, c);
  }
  return r;
}

namespace detail {

// Words eta^m [u_1]...[u_k] with p-unit entries, and their Z-linear span U.
struct UnitWord {
  unsigned eta = 0;
  std::vector<Rational> units;

  int degree() const { return static_cast<int>(units.size()) - static_cast<int>(eta); }
  friend bool operator<(const UnitWord& a, const UnitWord& b) {
    if (a.eta != b.eta) return a.eta < b.eta;
    return std::lexicographical_compare(a.units.begin(), a.units.end(), b.units.begin(), b.units.end());
  }
};

using UElem = std::map<UnitWord, long long>;

inline void accumulate(UElem& into, const UnitWord& w, long long c) {
  if (c == 0) return;
  for (const auto& u : w.units)
    if (u == Rational(1)) return;  // [1] = 0
  auto& slot = into[w];
  slot += c;
  if (slot == 0) into.erase(w);
}

inline UElem u_add(UElem a, const UElem& b) {
  for (const auto& [w, c] : b) accumulate(a, w, c);
  return a;
}

inline UElem u_mul(const UElem& a, const UElem& b) {
  UElem r;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      UnitWord z{x.eta + y.eta, x.units};
      z.units.insert(z.units.end(), y.units.begin(), y.units.end());
      accumulate(r, z, cx * cy);
    }
  return r;
}

inline UElem u_one() { return UElem{{UnitWord{}, 1}}; }
inline UElem u_symbol(const Rational& u) {
  UElem r;
  accumulate(r, UnitWord{0, {u}}, 1);
  return r;
}
inline UElem u_eta() { return UElem{{UnitWord{1, {}}, 1}}; }
inline UElem u_scale(const UElem& a, long long c) {
  UElem r;
  for (const auto& [w, x] : a) accumulate(r, w, x * c);
  return r;
}

/// <-1> = 1 + eta[-1]
inline UElem u_bracket_minus_one() { return u_add(u_one(), u_mul(u_eta(), u_symbol(Rational(-1)))); }

/// eps = -<-1>
inline UElem u_eps() { return u_scale(u_bracket_minus_one(), -1); }

/// Applies eps^{deg w} word by word; eps is central in K^MW.
inline UElem u_twist_by_degree(const UElem& a) {
  UElem r;
  const UElem eps = u_eps();
  for (const auto& [w, c] : a) {
    UElem single;
    accumulate(single, w, c);
    r = u_add(r, (w.degree() % 2 != 0) ? u_mul(eps, single) : single);
  }
  return r;
}

/// n_eps = sum_{i=1}^{n} <(-1)^{i-1}> for n > 0, eps * |n|_eps for n < 0.
inline UElem u_n_eps(int n) {
  const int m = n < 0 ? -n : n;
  UElem r;
  for (int i = 1; i <= m; ++i) r = u_add(r, (i % 2 == 1) ? u_one() : u_bracket_minus_one());
  return n < 0 ? u_mul(u_eps(), r) : r;
}

/// alpha + [p] beta with alpha, beta in U. Every element of K^MW(Q)
/// localized at p has this shape once [p] is moved to the front using
/// x [p] = eps^{deg x} [p] x and [p][p] = [-1][p].
struct PSplit {
  UElem alpha;
  UElem beta;
};

inline PSplit p_mul(const PSplit& x, const PSplit& y) {
  PSplit r;
  r.alpha = u_mul(x.alpha, y.alpha);
  r.beta = u_add(u_mul(u_twist_by_degree(x.alpha), y.beta), u_mul(x.beta, y.alpha));
  r.beta = u_add(r.beta, u_mul(u_symbol(Rational(-1)), u_mul(u_twist_by_degree(x.beta), y.beta)));
  return r;
}

/// [p^e u] = [u] + [p^e] <u> with [p^e] = e_eps [p].
inline PSplit p_split_entry(const Rational& a, Prime p) {
  const int e = ord(a, p);
  const Rational u = unit_part(a, p);
  PSplit r;
  r.alpha = u_symbol(u);
  const UElem bracket_u = u_add(u_one(), u_mul(u_eta(), u_symbol(u)));
  r.beta = u_mul(u_n_eps(e), bracket_u);
  return r;
}

/// Image of a unit word in K_m^MW(F_p), m = degree of the word.
/// eta^k [u_1..u_k] -> prod (<u_i> - 1) in GW or W; I^2(F_p) = 0.
inline ResidueClass evaluate_word(const UnitWord& w, Prime p) {
  const int m = w.degree();
  ResidueClass r = ResidueClass::zero(p, m);
  const std::size_t k = w.units.size();
  if (m >= 2) return r;
  if (m == 1) {
    if (w.eta == 0 && k == 1) r.unit = reduce_mod(w.units[0], p);
    return r;
  }
  if (k >= 2) return r;
  if (m == 0) {
    if (k == 0) r.gw = GWFp{p, 1, true};
    else r.gw = GWFp{p, 0, p == 2 || legendre_residue(reduce_mod(w.units[0], p), p) == 1};
    return r;
  }
  if (k == 0) r.w = WFp{p, 1, true};
  else r.w = WFp{p, 0, p == 2 || legendre_residue(reduce_mod(w.units[0], p), p) == 1};
  return r;
}

}  // namespace detail

/// Residue map with uniformizer p: K_n^MW(Q) -> K_{n-1}^MW(F_p), fixed by
/// d([p, u_1, ..., u_k]) = [u_1-bar, ..., u_k-bar] for units u_i, vanishing on
/// monomials without [p] and commuting with eta.
inline ResidueClass residue(const MwExpr& e, Prime p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  detail::UElem beta;
  for (const auto& t : e.terms()) {
    detail::PSplit acc{detail::u_one(), {}};
    for (const auto& a : t.entries) acc = detail::p_mul(acc, detail::p_split_entry(a, p));
    detail::UElem etas;
    detail::accumulate(etas, detail::UnitWord{t.eta, {}}, t.coeff);
    beta = detail::u_add(beta, detail::u_mul(etas, acc.beta));
  }
  ResidueClass r = ResidueClass::zero(p, e.degree() - 1);
  for (const auto& [w, c] : beta) r = residue_add(r, residue_times(detail::evaluate_word(w, p), c));
  return r;
}

// ---------------------------------------------------------------------------
// Normal forms

/// The faithful pair (Milnor image, Witt image) plus, in degree n >= 1, the
/// coordinates of K_n^MW(Q) = Z + sum_p K_{n-1}^MW(F_p): the signature
/// coordinate s_inf = sigma / 2^n and the nontrivial residues.
struct MwNormalForm {
  MilnorNF milnor;
  WittNF witt;
  std::optional<long long> s_inf;
  std::map<Prime, ResidueClass> residues;

  int degree() const { return milnor.degree; }
  bool is_zero() const { return milnor.is_trivial() && witt.is_zero(); }
  friend bool operator==(const MwNormalForm&, const MwNormalForm&) = default;
};

/// The two halves must agree in I^n / I^{n+1}.
inline bool pullback_compatible(const MwNormalForm& nf) {
  const int n = nf.degree();
  const WittInvariants& w = nf.witt.inv;
  if (!in_power_I(w, n <= 0 ? 0u : static_cast<unsigned>(n))) return false;
  if (n == 0) return (nf.milnor.rank % 2 == 0) == (w.rank_parity == 0);
  if (n == 1) return is_rational_square(nf.milnor.unit * Rational(w.signed_disc));
  if (n == 2) {
    if ((((w.signature / 4) % 2) + 2) % 2 != nf.milnor.real_bit) return false;
    std::set<Prime> primes = w.hasse_negative;
    for (const auto& [p, v] : nf.milnor.tame) primes.insert(p);
    for (Prime p : primes) {
      if (p == 2) continue;
      const auto it = nf.milnor.tame.find(p);
      const int leg = it == nf.milnor.tame.end() ? 1 : legendre_residue(it->second, p);
      if (leg != w.hasse(p)) return false;
    }
    return true;
  }
  if (n >= 3) {
    const long long m = 1LL << std::min(n, 62);
    return (((w.signature / m) % 2) + 2) % 2 == nf.milnor.real_bit;
  }
  return true;
}

inline MwNormalForm normal_form(const MwExpr& e) {
  MwNormalForm nf;
  nf.milnor = milnor_image(e);
  nf.witt = witt_image(e);
  const int n = e.degree();
  if (n >= 1) {
    const long long m = 1LL << std::min(n, 62);
    nf.s_inf = nf.witt.signature() / m;
    for (Prime p : e.primes()) {
      ResidueClass r = residue(e, p);
      if (!r.is_trivial()) nf.residues.emplace(p, r);
    }
  }
  if (!pullback_compatible(nf)) throw std::logic_error("Milnor and Witt images disagree for a degree " + std::to_string(n) + " expression");
  return nf;
}

inline bool is_zero(const MwExpr& e) { return milnor_image(e).is_trivial() && witt_image(e).is_zero(); }

inline bool eq(const MwExpr& a, const MwExpr& b) { return is_zero(sub(a, b)); }

// ---------------------------------------------------------------------------
// Valuations

/// Real place: sigma(<<x>>)/2, extended additively. Returns the integer.
inline long long ord_tilde_real(const MwExpr& e) {
  if (e.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "ord~ needs degree 1");
  return signature(e) / 2;
}

/// Finite place: the residue into GW(F_p).
inline GWFp ord_tilde_finite(const MwExpr& e, Prime p) {
  if (e.degree() != 1) throw Error(ErrorCode::DegreeMismatch, "ord~ needs degree 1");
  return residue(e, p).gw;
}

// ---------------------------------------------------------------------------
// Integral subgroups

inline void require_positive_degree(const MwExpr& e) {
  if (e.degree() < 1) throw Error(ErrorCode::DegreeMismatch, "membership test needs degree >= 1");
}

/// Kernel of the residues at all primes outside S.
inline bool in_KnMW_ZS(const MwExpr& e, const std::set<Prime>& S) {
  require_positive_degree(e);
  for (Prime p : e.primes())
    if (!S.count(p) && !residue(e, p).is_trivial()) return false;
  return true;
}

inline bool in_KnMW_Z(const MwExpr& e) { return in_KnMW_ZS(e, {}); }

/// Kernel of the signature map.
inline bool in_plus(const MwExpr& e) {
  require_positive_degree(e);
  return signature(e) == 0;
}

// ---------------------------------------------------------------------------
// Lifting coordinates back to expressions

/// Builds an expression with the given s_inf and residues, for degree 1
/// or 2, and checks the round trip. Residue lifts are [p]-leading symbols
/// with least positive unit representatives; primes are handled from the
/// largest down because a lift at p only disturbs residues at smaller primes.
inline MwExpr from_invariants(const MwNormalForm& nf) {
  const int n = nf.degree();
  if (n != 1 && n != 2) throw Error(ErrorCode::UnsupportedDegree, "lifting supported in degrees 1 and 2 only");
  if (!nf.s_inf) throw Error(ErrorCode::InconsistentInvariants, "missing signature coordinate");
  for (const auto& [p, r] : nf.residues)
    if (r.p != p || r.degree != n - 1) throw Error(ErrorCode::InconsistentInvariants, "malformed residue at " + std::to_string(p));

  MwExpr e = scale(*nf.s_inf, minus_one_power(n));
  for (;;) {
    std::set<Prime> primes = e.primes();
    for (const auto& [p, r] : nf.residues) primes.insert(p);
    std::optional<Prime> worst;
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
      const ResidueClass have = residue(e, *it);
      const auto want_it = nf.residues.find(*it);
      const ResidueClass want = want_it == nf.residues.end() ? ResidueClass::zero(*it, n - 1) : want_it->second;
      if (!(have == want)) {
        worst = *it;
        break;
      }
    }
    if (!worst) break;
    const Prime p = *worst;
    const ResidueClass have = residue(e, p);
    const auto want_it = nf.residues.find(p);
    const ResidueClass want = want_it == nf.residues.end() ? ResidueClass::zero(p, n - 1) : want_it->second;
    const ResidueClass delta = residue_add(want, residue_times(have, -1));
    const Rational pr{Integer(p)};
    if (n == 2) {
      e = add(e, make_symbol({pr, Rational(Integer(delta.unit))}));
    } else {
      if (delta.gw.rank != 0) e = add(e, scale(delta.gw.rank, make_symbol({pr})));
      if (!delta.gw.disc_square) {
        const Rational u(Integer(least_nonsquare(p)));
        e = add(e, eta_mul(make_symbol({pr, u})));
      }
    }
  }
  if (!(normal_form(e) == nf)) throw Error(ErrorCode::InconsistentInvariants, "invariants are not realized by any element");
  return e;
}

}  // namespace mwk

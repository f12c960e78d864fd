#pragma once

// Local Milnor-Witt Hilbert symbols of Q, the Moore reciprocity map, and
// K_1^MW(Q_v) in section coordinates.

#include <cstdint>
#include <map>
#include <string>

#include "mwk/mwcore.hpp"

namespace mwk {

/// Value in B_v: an integer at the real place, +-1 at p = 2, and an element
/// of F_p^x (the tame part of mu(Q_p)) at odd p.
struct BValue {
  Place place = Place::real();
  long long value = 0;

  bool is_trivial() const { return place.is_real() ? value == 0 : value == 1; }
  friend bool operator==(const BValue&, const BValue&) = default;
};

/// Root of unity in Q_v: +-1 at the real place and at 2, a residue at odd p.
struct MuValue {
  Place place = Place::real();
  long long value = 1;

  friend bool operator==(const MuValue&, const MuValue&) = default;
};

/// Identity at finite places, reduction mod 2 (written +-1) at the real place.
inline MuValue q_v(const BValue& b) {
  if (b.place.is_real()) return MuValue{b.place, (b.value % 2 != 0) ? -1 : 1};
  return MuValue{b.place, b.value};
}

inline void require_degree(const MwExpr& e, int n) {
  if (e.degree() != n)
    throw Error(ErrorCode::DegreeMismatch, "expected degree " + std::to_string(n) + ", got " + std::to_string(e.degree()));
}

/// h_v^MW on K_2^MW(Q). Eta-terms vanish at finite places because their
/// local image lies in I^3(Q_p) = 0.
inline BValue h_v_mw(const MwExpr& e, Place v) {
  require_degree(e, 2);
  if (v.is_real()) return BValue{v, signature(e) / 4};
  const Prime p = v.prime();
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) {
    int s = 1;
    for (const auto& t : e.terms())
      if (t.eta == 0 && t.coeff % 2 != 0) s *= hilbert_classical(t.entries[0], t.entries[1], v);
    return BValue{v, s};
  }
  std::uint64_t x = 1;
  for (const auto& t : e.terms()) {
    if (t.eta != 0) continue;
    std::uint64_t s = tame_symbol(t.entries[0], t.entries[1], p);
    if (t.coeff < 0) s = invmod(s, p);
    x = mulmod(x, powmod(s, static_cast<std::uint64_t>(t.coeff < 0 ? -t.coeff : t.coeff), p), p);
  }
  return BValue{v, static_cast<long long>(x)};
}

/// All local symbols that can be nontrivial: the real place, 2, and the odd
/// primes dividing some entry. Empty for the empty expression.
inline std::map<Place, BValue> h_mw(const MwExpr& e) {
  require_degree(e, 2);
  std::map<Place, BValue> out;
  if (e.empty()) return out;
  for (Place v : relevant_places(e.entries())) out.emplace(v, h_v_mw(e, v));
  return out;
}

/// (x, y)_v^MW = h_v^MW(x y).
inline BValue mw_hilbert(const MwExpr& x, const MwExpr& y, Place v) {
  require_degree(x, 1);
  require_degree(y, 1);
  return h_v_mw(mul(x, y), v);
}

/// pi((z_v)) = prod z_v^{m_v / 2}, the map onto mu(Q) = {+-1}.
inline int moore_pi(const std::map<Place, MuValue>& zs) {
  int r = 1;
  for (const auto& [v, z] : zs) {
    if (v.is_real() || v.prime() == 2) {
      r *= z.value < 0 ? -1 : 1;
    } else {
      const Prime p = v.prime();
      const auto x = powmod(static_cast<std::uint64_t>(z.value), (p - 1) / 2, p);
      r *= x == 1 ? 1 : -1;
    }
  }
  return r;
}

inline bool in_wild_kernel(const MwExpr& e) {
  for (const auto& [v, b] : h_mw(e))
    if (!b.is_trivial()) return false;
  return true;
}

struct MooreReport {
  std::map<Place, BValue> symbols;
  std::map<Place, MuValue> roots;
  int product = 1;
  bool passed = true;
};

/// Exactness of the Moore sequence at the sum of the B_v on the image of e.
inline MooreReport moore_check(const MwExpr& e) {
  MooreReport r;
  r.symbols = h_mw(e);
  for (const auto& [v, b] : r.symbols) r.roots.emplace(v, q_v(b));
  r.product = moore_pi(r.roots);
  r.passed = r.product == 1;
  return r;
}

// ---------------------------------------------------------------------------
// K_1^MW(Q_v) in section coordinates

/// The element [u] + twist * T_v of K_1^MW(Q_v), where T_v generates
/// I^2(Q_v) inside K_1^MW(Q_v) (Z at the real place, Z/2 at finite places).
struct K1Local {
  Place place = Place::real();
  Rational u = Rational(1);
  long long twist = 0;

  friend bool operator==(const K1Local&, const K1Local&) = default;
};

inline K1Local k1_local_make(const Rational& u, long long twist, Place v) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroInput, "section coordinate u = 0");
  if (v.is_finite()) twist = ((twist % 2) + 2) % 2;
  return K1Local{v, u, twist};
}

/// Global representative of the generator T_v: -eta[-1,-1] at the real place
/// and at 2, -eta[p, n] with n the least nonsquare mod p at odd p.
inline MwExpr twist_generator(Place v) {
  const Rational m1(-1);
  if (v.is_real() || v.prime() == 2) return scale(-1, eta_mul(make_symbol({m1, m1})));
  const Prime p = v.prime();
  return scale(-1, eta_mul(make_symbol({Rational(Integer(p)), Rational(Integer(least_nonsquare(p)))})));
}

/// Coordinate of a degree-1 element of ker(K_1^MW -> K_1^M) in I^2(Q_v):
/// sigma/4 at the real place, the Hasse-Witt bit at p otherwise.
inline long long local_twist(const MwExpr& x, Place v) {
  require_degree(x, 1);
  if (milnor_image(x).unit != Rational(1))
    throw Error(ErrorCode::NotInKernel, "element is not in the kernel of the forgetful map");
  const WittNF w = witt_image(x);
  if (v.is_real()) return w.signature() / 4;
  return w.inv.hasse(v.prime()) < 0 ? 1 : 0;
}

/// The cocycle of the section: [u1] + [u2] - [u1 u2] = -eta[u1][u2].
inline long long section_cocycle(const Rational& u1, const Rational& u2, Place v) {
  return local_twist(scale(-1, eta_mul(make_symbol({u1, u2}))), v);
}

inline K1Local k1_local_add(const K1Local& x, const K1Local& y) {
  if (!(x.place == y.place)) throw Error(ErrorCode::PlaceMismatch, "K1 elements at " + x.place.str() + " and " + y.place.str());
  return k1_local_make(x.u * y.u, x.twist + y.twist + section_cocycle(x.u, y.u, x.place), x.place);
}

inline bool k1_local_eq(const K1Local& x, const K1Local& y) {
  if (!(x.place == y.place)) throw Error(ErrorCode::PlaceMismatch, "K1 elements at " + x.place.str() + " and " + y.place.str());
  return x == y;
}

/// A global expression whose image in K_1^MW(Q_v) is the given element.
inline MwExpr k1_local_expr(const K1Local& x) {
  return add(make_symbol({x.u}), scale(x.twist, twist_generator(x.place)));
}

}  // namespace mwk

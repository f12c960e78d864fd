#pragma once

// Finite-support Milnor-Witt idèles of Q in section coordinates.

#include <map>

#include "mwk/localsym.hpp"

namespace mwk {

/// Real component plus finitely many p-components; every unlisted prime
/// carries the identity (1, 0). Identity components are never stored.
class MwIdele {
 public:
  MwIdele() = default;
  MwIdele(K1Local real, std::map<Prime, K1Local> finite) : real_(std::move(real)) {
    if (!real_.place.is_real()) throw Error(ErrorCode::PlaceMismatch, "real component at a finite place");
    for (auto& [p, c] : finite) {
      if (!(c.place == Place::finite(p))) throw Error(ErrorCode::PlaceMismatch, "component keyed " + std::to_string(p) + " lives at " + c.place.str());
      set(c);
    }
  }

  const K1Local& real() const noexcept { return real_; }
  const std::map<Prime, K1Local>& finite() const noexcept { return finite_; }

  K1Local at(Place v) const {
    if (v.is_real()) return real_;
    const auto it = finite_.find(v.prime());
    return it == finite_.end() ? K1Local{v, Rational(1), 0} : it->second;
  }

  void set(const K1Local& c) {
    if (c.place.is_real()) {
      real_ = k1_local_make(c.u, c.twist, c.place);
      return;
    }
    const K1Local n = k1_local_make(c.u, c.twist, c.place);
    if (n.u == Rational(1) && n.twist == 0)
      finite_.erase(n.place.prime());
    else
      finite_[n.place.prime()] = n;
  }

  friend bool operator==(const MwIdele&, const MwIdele&) = default;

 private:
  K1Local real_{Place::real(), Rational(1), 0};
  std::map<Prime, K1Local> finite_;
};

inline MwIdele idele_add(const MwIdele& x, const MwIdele& y) {
  MwIdele r;
  r.set(k1_local_add(x.real(), y.real()));
  std::set<Prime> primes;
  for (const auto& [p, c] : x.finite()) primes.insert(p);
  for (const auto& [p, c] : y.finite()) primes.insert(p);
  for (Prime p : primes) r.set(k1_local_add(x.at(Place::finite(p)), y.at(Place::finite(p))));
  return r;
}

inline bool idele_eq(const MwIdele& x, const MwIdele& y) { return x == y; }

/// The component lies in K_1^MW(Z_p) = ker(ord~_p): its residue in GW(F_p)
/// vanishes.
inline bool is_integral_at(const MwIdele& x, Prime p) {
  return residue(k1_local_expr(x.at(Place::finite(p))), p).is_trivial();
}

/// prod_v |u_v|_v; twists do not contribute.
inline Rational vol(const MwIdele& x) {
  Rational r = x.real().u.abs();
  for (const auto& [p, c] : x.finite()) r *= Rational(Integer(p)).pow(-ord(c.u, p));
  return r;
}

/// Diagonal embedding of K_1^MW(Q). Each component is (u, t_v) with u the
/// Milnor image of e and t_v the local I^2-coordinate of e - [u]. Outside
/// the real place, 2 and the primes of the entries the component is the
/// unit (u, 0), which is integral and is recorded as the identity.
inline MwIdele diagonal(const MwExpr& e) {
  require_degree(e, 1);
  const Rational u = milnor_image(e).unit;
  const MwExpr rest = sub(e, make_symbol({u}));
  MwIdele r;
  r.set(k1_local_make(u, local_twist(rest, Place::real()), Place::real()));
  std::vector<Rational> support = e.entries();
  support.push_back(u);
  for (Place v : relevant_places(support)) {
    if (v.is_real()) continue;
    r.set(k1_local_make(u, local_twist(rest, v), v));
  }
  return r;
}

/// Every component has u = 1, so the idèle lies in the sum of the I^2(Q_v).
inline bool kernel_membership(const MwIdele& x) {
  if (x.real().u != Rational(1)) return false;
  for (const auto& [p, c] : x.finite())
    if (c.u != Rational(1)) return false;
  return true;
}

/// Class in coker(I^2(Q) -> sum_v I^2(Q_v)) = Z/2: the total twist mod 2.
inline int parity(const MwIdele& x) {
  if (!kernel_membership(x)) throw Error(ErrorCode::NotInKernel, "idèle has a component with u != 1");
  long long s = x.real().twist;
  for (const auto& [p, c] : x.finite()) s += c.twist;
  return static_cast<int>(((s % 2) + 2) % 2);
}

}  // namespace mwk

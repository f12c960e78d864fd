#pragma once

// Hasse norm criterion for K_2^MW in a quadratic extension Q(sqrt d) / Q.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mwk/localsym.hpp"

namespace mwk {

/// L = Q(sqrt d), d squarefree and not 0 or 1.
class QuadExt {
 public:
  explicit QuadExt(const Integer& d) : d_(d) {
    if (d == 0 || d == 1) throw Error(ErrorCode::ZeroInput, "d must not be 0 or 1");
    if (square_class(Rational(d)) != d) throw Error(ErrorCode::ZeroInput, "d = " + d.str() + " is not squarefree");
  }
  const Integer& d() const noexcept { return d_; }

 private:
  Integer d_;
};

enum class SplitKind { Split, Inert, Ramified };

inline const char* to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Split: return "split";
    case SplitKind::Inert: return "inert";
    case SplitKind::Ramified: return "ramified";
  }
  return "?";
}

struct LocalDegree {
  int f = 1;  // residue degree
  int e = 1;  // ramification index
  friend bool operator==(const LocalDegree&, const LocalDegree&) = default;
};

struct SplitInfo {
  Prime p = 0;
  SplitKind kind = SplitKind::Split;
  std::vector<LocalDegree> places;
};

/// Real places of Q that become complex in L.
inline std::set<Place> sigma_set(const QuadExt& L) {
  if (L.d() < 0) return {Place::real()};
  return {};
}

inline void require_odd_place(Prime p) {
  if (p == 2) throw Error(ErrorCode::DyadicUnsupported, "dyadic places are not supported");
  if (!is_prime(p)) throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
}

inline SplitInfo splitting_type(Prime p, const QuadExt& L) {
  require_odd_place(p);
  const int l = legendre(L.d(), p);
  if (l == 0) return SplitInfo{p, SplitKind::Ramified, {{1, 2}}};
  if (l == 1) return SplitInfo{p, SplitKind::Split, {{1, 1}, {1, 1}}};
  return SplitInfo{p, SplitKind::Inert, {{2, 1}}};
}

/// One component of b_{w|v}: zero, the identity, or multiplication by
/// n_w / m_v.
struct BMultiplier {
  enum class Kind { Zero, Identity, Scalar };
  Kind kind = Kind::Identity;
  std::uint64_t factor = 1;

  std::string str() const {
    switch (kind) {
      case Kind::Zero: return "0";
      case Kind::Identity: return "id";
      case Kind::Scalar: return std::to_string(factor);
    }
    return "?";
  }
  friend bool operator==(const BMultiplier&, const BMultiplier&) = default;
};

/// #mu(L_w) for the place w over the odd prime p with local degrees (f, e).
/// A ramified place over 3 whose completion is Q_3(zeta_3) also carries the
/// cube roots of unity.
inline std::uint64_t mu_order_above(Prime p, const LocalDegree& w, const QuadExt& L) {
  std::uint64_t n = 1;
  for (int i = 0; i < w.f; ++i) n *= p;
  n -= 1;
  if (p == 3 && w.e == 2) {
    // L_w = Q_3(sqrt d) = Q_3(sqrt -3) iff -d/3 is a 3-adic square
    const Integer q = -L.d() / 3;
    if (legendre(q, 3) == 1) n *= 3;
  }
  return n;
}

/// The comparison maps b_{w|v} for all places w of L over v.
inline std::vector<BMultiplier> b_wv(Place v, const QuadExt& L) {
  if (v.is_real()) {
    if (L.d() < 0) return {BMultiplier{BMultiplier::Kind::Zero, 0}};
    return {BMultiplier{}, BMultiplier{}};
  }
  const Prime p = v.prime();
  const SplitInfo s = splitting_type(p, L);
  std::vector<BMultiplier> out;
  for (const auto& w : s.places)
    out.push_back(BMultiplier{BMultiplier::Kind::Scalar, mu_order_above(p, w, L) / mu_order(v)});
  return out;
}

struct TransferDecision {
  bool in_image = true;
  std::map<Place, long long> certificate;  // h_v^MW at each v in Sigma
};

/// Decides whether e lies in the image of the transfer from K_2^MW(L): all
/// real symbols at complexified places must vanish.
inline TransferDecision transfer_image_test(const MwExpr& e, const QuadExt& L) {
  require_degree(e, 2);
  TransferDecision r;
  for (Place v : sigma_set(L)) {
    const long long h = h_v_mw(e, v).value;
    r.certificate.emplace(v, h);
    if (h != 0) r.in_image = false;
  }
  return r;
}

}  // namespace mwk

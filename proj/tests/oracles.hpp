#pragma once

// Brute-force reference computations. Nothing here calls the library's
// symbol or invariant code; inputs are plain machine integers.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <tuple>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using i64 = long long;

inline i64 mod(i64 a, i64 m) { return ((a % m) + m) % m; }

inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// a is a nonzero square mod p, by listing squares.
inline bool is_square_mod(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return false;
  for (i64 x = 1; x < p; ++x)
    if (x * x % p == a) return true;
  return false;
}

inline int legendre(i64 a, i64 p) {
  if (mod(a, p) == 0) return 0;
  return is_square_mod(a, p) ? 1 : -1;
}

inline i64 inverse(i64 a, i64 p) {
  a = mod(a, p);
  for (i64 x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Squarefree part of a nonzero integer, with sign.
inline i64 squarefree(i64 a) {
  i64 s = a < 0 ? -1 : 1, n = std::llabs(a), r = 1;
  for (i64 d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e % 2) r *= d;
  }
  return s * r * n;
}

/// Squarefree representative of num/den up to rational squares.
inline i64 squarefree(i64 num, i64 den) { return squarefree(num * den); }

inline int hilbert_search(i64 a, i64 b, i64 p) {
  const i64 m = ipow(p, p == 2 ? 5 : 3);
  std::vector<char> sq_any(m, 0), sq_unit(m, 0);
  for (i64 z = 0; z < m; ++z) {
    sq_any[z * z % m] = 1;
    if (z % p) sq_unit[z * z % m] = 1;
  }
  const i64 am = mod(a, m), bm = mod(b, m);
  for (i64 x = 0; x < m; ++x)
    for (i64 y = 0; y < m; ++y) {
      const i64 t = (am * (x * x % m) + bm * (y * y % m)) % m;
      const bool xy_unit = (x % p) || (y % p);
      if (xy_unit ? sq_any[t] : sq_unit[t]) return 1;
    }
  return -1;
}

/// Hilbert symbol (a, b)_p for nonzero integers: is there a primitive
/// solution of a x^2 + b y^2 = z^2 modulo p^k? The arguments are first made
/// squarefree, so k = 3 (odd p) or k = 5 (p = 2) is enough.
inline int hilbert(i64 a, i64 b, i64 p) {
  a = squarefree(a);
  b = squarefree(b);
  static std::map<std::tuple<i64, i64, i64>, int> memo;
  const auto key = std::make_tuple(a, b, p);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  return memo[key] = hilbert_search(a, b, p);
}

inline int hilbert_real(i64 a, i64 b) { return (a < 0 && b < 0) ? -1 : 1; }

/// Nontrivial integer zero of a x^2 + b y^2 + c z^2 with |x|, |y|, |z| <= bound.
inline bool ternary_isotropic(i64 a, i64 b, i64 c, i64 bound) {
  for (i64 x = 0; x <= bound; ++x)
    for (i64 y = -bound; y <= bound; ++y)
      for (i64 z = -bound; z <= bound; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (a * x * x + b * y * y + c * z * z == 0) return true;
      }
  return false;
}

/// Valuation and unit part of a nonzero integer.
inline std::pair<int, i64> split(i64 a, i64 p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return {v, a};
}

/// Tame symbol of integers a, b at p from the definition.
inline i64 tame(i64 a, i64 b, i64 p) {
  auto [va, ua] = split(a, p);
  auto [vb, ub] = split(b, p);
  i64 r = 1;
  for (int i = 0; i < vb; ++i) r = r * mod(ua, p) % p;
  const i64 ubi = inverse(ub, p);
  for (int i = 0; i < va; ++i) r = r * ubi % p;
  if ((va * vb) % 2) r = mod(-r, p);
  return r;
}

// ---------------------------------------------------------------------------
// Quadratic forms over F_p by exhaustive search

/// The diagonal form with the given coefficients has a nonzero zero over F_p.
inline bool isotropic_fp(const std::vector<i64>& a, i64 p) {
  const std::size_t n = a.size();
  std::vector<i64> v(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) return false;
    i64 s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a[j] * v[j] * v[j];
    if (mod(s, p) == 0) return true;
  }
}

/// Binary diagonal forms <a1, a2> and <b1, b2> are isometric over F_p:
/// search for a matrix carrying one to the other.
inline bool isometric_binary_fp(i64 a1, i64 a2, i64 b1, i64 b2, i64 p) {
  auto q = [&](i64 x, i64 y) { return mod(a1 * x * x + a2 * y * y, p); };
  auto bil = [&](i64 x1, i64 y1, i64 x2, i64 y2) { return mod(a1 * x1 * x2 + a2 * y1 * y2, p); };
  for (i64 x1 = 0; x1 < p; ++x1)
    for (i64 y1 = 0; y1 < p; ++y1) {
      if (q(x1, y1) != mod(b1, p)) continue;
      for (i64 x2 = 0; x2 < p; ++x2)
        for (i64 y2 = 0; y2 < p; ++y2) {
          if (q(x2, y2) != mod(b2, p) || bil(x1, y1, x2, y2) != 0) continue;
          if (mod(x1 * y2 - x2 * y1, p) != 0) return true;
        }
    }
  return false;
}

/// |W(F_p)| as the number of isometry classes of anisotropic forms, all of
/// which have dimension at most 2 and can be taken diagonal.
inline int witt_order_fp(i64 p) {
  int count = 1;  // the zero form
  std::vector<i64> units;
  for (i64 u = 1; u < p; ++u) units.push_back(u);
  // dimension 1: <u> ~ <v> iff u/v is a square
  std::vector<i64> reps1;
  for (i64 u : units) {
    bool fresh = true;
    for (i64 r : reps1)
      if (is_square_mod(u * inverse(r, p), p)) fresh = false;
    if (fresh) reps1.push_back(u);
  }
  count += static_cast<int>(reps1.size());
  std::vector<std::pair<i64, i64>> reps2;
  for (i64 u : units)
    for (i64 v : units) {
      if (isotropic_fp({u, v}, p)) continue;
      bool fresh = true;
      for (auto [r1, r2] : reps2)
        if (isometric_binary_fp(u, v, r1, r2, p)) fresh = false;
      if (fresh) reps2.emplace_back(u, v);
    }
  count += static_cast<int>(reps2.size());
  return count;
}

}  // namespace oracle

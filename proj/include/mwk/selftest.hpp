#pragma once

// Seeded invariant suites. Each check returns a named pass/fail record with
// a count of failing samples and a short note on the first failure.

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mwk/hasse.hpp"
#include "mwk/idele.hpp"
#include "mwk/parse.hpp"

namespace mwk {

// ---------------------------------------------------------------------------
// Random samples

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// Nonzero rational with small numerator and denominator.
  Rational rational(long long bound = 60) {
    long long n = 0;
    while (n == 0) n = uniform(-bound, bound);
    const long long d = coin() ? 1 : uniform(1, bound / 3 + 1);
    return Rational(Integer(n), Integer(d));
  }

  /// Rational whose numerator and denominator are prime to p.
  Rational unit_at(Prime p, long long bound = 60) {
    for (;;) {
      Rational r = rational(bound);
      if (ord(r, p) == 0) return r;
    }
  }

  /// Random expression of degree n with up to `terms` monomials, each
  /// carrying at most one eta.
  MwExpr expr(int n, int terms = 3) {
    std::vector<Term> ts;
    const int k = static_cast<int>(uniform(1, terms));
    for (int i = 0; i < k; ++i) {
      unsigned e = (n <= 0 || coin()) ? 1u : 0u;
      if (n < 0) e = static_cast<unsigned>(-n) + static_cast<unsigned>(uniform(0, 1));
      const int len = n + static_cast<int>(e);
      Term t{0, e, {}};
      while (t.coeff == 0) t.coeff = uniform(-3, 3);
      for (int j = 0; j < len; ++j) t.entries.push_back(rational());
      ts.push_back(std::move(t));
    }
    return MwExpr(n, std::move(ts));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = true;
  long long samples = 0;
  long long failures = 0;
  std::string note;
  double seconds = 0;
};

struct SelftestConfig {
  std::uint64_t seed = 20240601;
  int size = 1;  // multiplies every sample count
};

namespace detail {

class Recorder {
 public:
  Recorder(int id, std::string name) { r_.id = id; r_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    ++r_.samples;
    if (!ok) {
      ++r_.failures;
      r_.passed = false;
      if (r_.note.empty()) r_.note = what;
    }
  }

  /// Runs f, recording any exception as a failure.
  void guard(const std::function<void()>& f, const std::string& what) {
    try {
      f();
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }

  CheckResult done() { return r_; }

 private:
  CheckResult r_;
};

inline Rational rat(long long n) { return Rational(n); }

/// Quadratic part z^{m_v/2} of a root of unity, as +-1.
inline int quadratic_part(const MuValue& z) {
  if (z.place.is_real() || z.place.prime() == 2) return z.value < 0 ? -1 : 1;
  return legendre_residue(static_cast<std::uint64_t>(z.value), z.place.prime());
}

inline std::vector<Prime> odd_primes_up_to(Prime n) {
  std::vector<Prime> out;
  for (Prime p = 3; p <= n; p += 2)
    if (is_prime(p)) out.push_back(p);
  return out;
}

}  // namespace detail

// 1. The defining relations vanish.
inline CheckResult check_relations(const SelftestConfig& cfg) {
  detail::Recorder rec(1, "defining relations vanish in the normal form");
  Sampler s(cfg.seed ^ 0x1);
  const int n = 500 * cfg.size;
  for (int i = 0; i < n; ++i) {
    Rational a = s.rational();
    while (a == Rational(1)) a = s.rational();
    const Rational b = s.rational();
    rec.guard([&] { rec.expect(normal_form(make_symbol({a, Rational(1) - a})).is_zero(), "[a][1-a] with a = " + a.str()); },
              "steinberg");
    rec.guard(
        [&] {
          const MwExpr x = sub(sub(sub(make_symbol({a * b}), make_symbol({a})), make_symbol({b})), eta_mul(make_symbol({a, b})));
          rec.expect(normal_form(x).is_zero(), "[ab]-[a]-[b]-eta[a][b] with a, b = " + a.str() + ", " + b.str());
        },
        "twisted additivity");
    rec.guard(
        [&] {
          const MwExpr x = s.expr(static_cast<int>(s.uniform(-1, 3)));
          rec.expect(normal_form(mul(hyperbolic(), eta_mul(x))).is_zero(), "h eta x with x = " + render(x));
        },
        "hyperbolic eta");
  }
  return rec.done();
}

// 2. Moore reciprocity on [q, r] and quadratic reciprocity.
inline CheckResult check_reciprocity(const SelftestConfig&) {
  detail::Recorder rec(2, "Moore reciprocity and quadratic reciprocity for odd primes up to 199");
  const auto primes = detail::odd_primes_up_to(199);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const Prime q = primes[i], r = primes[j];
      const std::string tag = "(" + std::to_string(q) + ", " + std::to_string(r) + ")";
      rec.guard(
          [&] {
            const MooreReport m = moore_check(make_symbol({Rational(Integer(q)), Rational(Integer(r))}));
            rec.expect(m.passed, "moore check " + tag);
            // The odd-place factors give (r/q)(q/r); the remaining factors
            // (real and dyadic) balance them.
            int odd = 1, rest = 1;
            for (const auto& [v, z] : m.roots) {
              if (v.is_finite() && v.prime() != 2) odd *= detail::quadratic_part(z);
              else rest *= detail::quadratic_part(z);
            }
            const int lhs = legendre(Integer(q), r) * legendre(Integer(r), q);
            const int rhs = (((q - 1) / 2) * ((r - 1) / 2)) % 2 == 0 ? 1 : -1;
            rec.expect(odd == rest && odd == lhs, "reciprocity from the symbol table " + tag);
            rec.expect(lhs == rhs, "quadratic reciprocity " + tag);
          },
          tag);
    }
  }
  return rec.done();
}

// 3. Lifting the normal form gives back the element; coordinates are additive.
inline CheckResult check_roundtrip(const SelftestConfig& cfg) {
  detail::Recorder rec(3, "from_invariants inverts normal_form; normal_form is additive");
  Sampler s(cfg.seed ^ 0x3);
  const int n = 100 * cfg.size;
  for (int deg = 1; deg <= 2; ++deg) {
    for (int i = 0; i < n; ++i) {
      const MwExpr e = s.expr(deg);
      const MwExpr f = s.expr(deg);
      rec.guard(
          [&] {
            const MwNormalForm nf = normal_form(e);
            rec.expect(eq(from_invariants(nf), e), "roundtrip " + render(e));
            const MwNormalForm ng = normal_form(f);
            const MwNormalForm ns = normal_form(add(e, f));
            bool ok = *ns.s_inf == *nf.s_inf + *ng.s_inf;
            std::set<Prime> ps = e.primes();
            for (Prime p : f.primes()) ps.insert(p);
            for (Prime p : ps) ok = ok && residue(add(e, f), p) == residue_add(residue(e, p), residue(f, p));
            if (deg == 1) ok = ok && ns.milnor.unit == nf.milnor.unit * ng.milnor.unit;
            rec.expect(ok, "additivity " + render(e) + " ; " + render(f));
          },
          "roundtrip " + render(e));
    }
  }
  return rec.done();
}

// 4. [-1,-1] generates the signature part of K_2^MW(Z).
inline CheckResult check_integral_k2(const SelftestConfig& cfg) {
  detail::Recorder rec(4, "[-1,-1] and the splitting of K_2^MW(Z)");
  const MwExpr mm = make_symbol({detail::rat(-1), detail::rat(-1)});
  rec.guard(
      [&] {
        const MwNormalForm nf = normal_form(mm);
        rec.expect(nf.s_inf && *nf.s_inf == 1 && nf.residues.empty(), "normal form of [-1,-1]");
        rec.expect(in_KnMW_Z(mm), "[-1,-1] is integral");
        rec.expect(nf.milnor.real_bit == 1 && nf.milnor.tame.empty(), "Milnor image of [-1,-1]");
      },
      "[-1,-1]");
  Sampler s(cfg.seed ^ 0x4);
  const int n = 100 * cfg.size;
  for (int i = 0; i < n; ++i) {
    const MwExpr e = s.expr(2);
    rec.guard(
        [&] {
          // Cancel the residues of e with their lifts to get an integral element.
          const MwNormalForm nf = normal_form(e);
          const long long s0 = *nf.s_inf;
          const MwExpr lift = from_invariants(nf);
          const MwExpr z = sub(e, sub(lift, scale(s0, mm)));
          rec.expect(in_KnMW_Z(z), "integral member from " + render(e));
          const long long si = *normal_form(z).s_inf;
          const MwExpr plus = sub(z, scale(si, mm));
          rec.expect(in_plus(plus) && in_KnMW_Z(plus), "e+ lies in the plus part for " + render(e));
          rec.expect(!in_plus(sub(z, scale(si + 1, mm))) && !in_plus(sub(z, scale(si - 1, mm))),
                     "uniqueness of the splitting for " + render(e));
        },
        render(e));
  }
  return rec.done();
}

namespace detail {

template <class Key, class F>
std::size_t count_classes(const std::vector<Integer>& reps, int max_dim, F&& cls) {
  std::set<Key> seen;
  std::vector<Integer> form;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    seen.insert(cls(form));
    if (static_cast<int>(form.size()) == max_dim) return;
    for (std::size_t i = start; i < reps.size(); ++i) {
      form.push_back(reps[i]);
      rec(i);
      form.pop_back();
    }
  };
  rec(0);
  return seen.size();
}

}  // namespace detail

// 5. |W(F_p)| = 4, |W(Q_p)| = 16, |W(Q_2)| = 32.
inline CheckResult check_witt_orders(const SelftestConfig&) {
  detail::Recorder rec(5, "orders of W(F_p), W(Q_p) and W(Q_2) by enumeration");
  for (Prime p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    const Integer u(least_nonsquare(p));
    rec.guard(
        [&] {
          const auto wf = detail::count_classes<std::pair<int, bool>>({Integer(1), u}, 4, [&](const std::vector<Integer>& f) {
            std::vector<std::uint64_t> us;
            for (const auto& x : f) us.push_back(x.convert_to<std::uint64_t>());
            const WFp w = w_fp_class(p, us);
            return std::pair<int, bool>{w.rank_parity, w.disc_square};
          });
          rec.expect(wf == 4, "|W(F_" + std::to_string(p) + ")| = " + std::to_string(wf));
          const std::vector<Integer> reps{Integer(1), u, Integer(p), u * p};
          const auto wq = detail::count_classes<WQp>(reps, 4, [&](const std::vector<Integer>& f) {
            std::vector<Rational> es(f.begin(), f.end());
            return wqp_class(DiagForm(es), p);
          });
          rec.expect(wq == 16, "|W(Q_" + std::to_string(p) + ")| = " + std::to_string(wq));
        },
        "p = " + std::to_string(p));
  }
  rec.guard(
      [&] {
        std::vector<Integer> reps;
        for (int r : {1, 3, 5, 7, 2, 6, 10, 14}) reps.emplace_back(r);
        const auto w2 = detail::count_classes<WQp>(reps, 4, [&](const std::vector<Integer>& f) {
          std::vector<Rational> es(f.begin(), f.end());
          return wqp_class(DiagForm(es), 2);
        });
        rec.expect(w2 == 32, "|W(Q_2)| = " + std::to_string(w2));
      },
      "p = 2");
  return rec.done();
}

// 6. Integral twists of a unit.
inline CheckResult check_integral_twists(const SelftestConfig& cfg) {
  detail::Recorder rec(6, "integral twist bits of units");
  Sampler s(cfg.seed ^ 0x6);
  const int n = 100 * cfg.size;
  auto integral = [](const Rational& u, long long t, Prime p) {
    MwIdele x;
    x.set(k1_local_make(u, t, Place::finite(p)));
    return is_integral_at(x, p);
  };
  for (Prime p : detail::odd_primes_up_to(50)) {
    for (int i = 0; i < n; ++i) {
      const Rational u = s.unit_at(p);
      rec.guard(
          [&] {
            const int k = (integral(u, 0, p) ? 1 : 0) + (integral(u, 1, p) ? 1 : 0);
            rec.expect(k == 1, "u = " + u.str() + " at " + std::to_string(p) + " has " + std::to_string(k) + " integral twists");
          },
          "unit " + u.str());
    }
  }
  bool seen0 = false, seen1 = false;
  for (int i = 0; i < n; ++i) {
    const Rational u = s.unit_at(2);
    rec.guard(
        [&] {
          for (long long t : {0LL, 1LL})
            if (integral(u, t, 2)) (t == 0 ? seen0 : seen1) = true;
        },
        "dyadic unit " + u.str());
  }
  rec.expect(seen0 && seen1, "both twist bits occur among integral elements at 2");
  return rec.done();
}

// 7. Product formula for the diagonal idèle and injectivity.
inline CheckResult check_idele_volume(const SelftestConfig& cfg) {
  detail::Recorder rec(7, "volume of diagonal idèles and nontrivial components");
  Sampler s(cfg.seed ^ 0x7);
  const int n = 100 * cfg.size;
  for (int i = 0; i < n; ++i) {
    const MwExpr e = s.expr(1);
    rec.guard(
        [&] {
          const MwIdele x = diagonal(e);
          rec.expect(vol(x) == Rational(1), "vol(diagonal(" + render(e) + ")) = " + vol(x).str());
          if (!is_zero(e)) rec.expect(!(x == MwIdele{}), "diagonal(" + render(e) + ") is the identity");
        },
        render(e));
  }
  return rec.done();
}

// 8. Parity of idèles in the kernel.
inline CheckResult check_parity(const SelftestConfig& cfg) {
  detail::Recorder rec(8, "parity of global twist patterns and a single-place insertion");
  Sampler s(cfg.seed ^ 0x8);
  const int n = 100 * cfg.size;
  for (int i = 0; i < n; ++i) {
    const Rational a = s.rational(), b = s.rational();
    rec.guard(
        [&] {
          const MwIdele x = diagonal(scale(-1, eta_mul(make_symbol({a, b}))));
          rec.expect(kernel_membership(x) && parity(x) == 0, "parity of <<" + a.str() + ", " + b.str() + ">>");
        },
        "pair " + a.str() + ", " + b.str());
  }
  rec.guard(
      [&] {
        MwIdele x;
        x.set(k1_local_make(Rational(1), 1, Place::finite(2)));
        rec.expect(parity(x) == 1, "parity of {2: (1, 1)}");
      },
      "single insertion");
  return rec.done();
}

// 9. Reduction of the Milnor-Witt symbol is the quadratic Hilbert symbol.
inline CheckResult check_symbol_square(const SelftestConfig& cfg) {
  detail::Recorder rec(9, "q_v of the Milnor-Witt symbol is the Hilbert symbol");
  Sampler s(cfg.seed ^ 0x9);
  std::vector<Place> places{Place::real(), Place::finite(2)};
  for (Prime p : detail::odd_primes_up_to(50)) places.push_back(Place::finite(p));
  const int n = 200 * cfg.size;
  for (int i = 0; i < n; ++i) {
    const Rational a = s.rational(), b = s.rational();
    for (Place v : places) {
      rec.guard(
          [&] {
            const MuValue z = q_v(mw_hilbert(make_symbol({a}), make_symbol({b}), v));
            rec.expect(detail::quadratic_part(z) == hilbert_classical(a, b, v),
                       "(" + a.str() + ", " + b.str() + ") at " + v.str());
          },
          "pair");
    }
  }
  return rec.done();
}

// 10. Hasse norm criterion for Q(sqrt -5) and Q(sqrt 14).
inline CheckResult check_hasse(const SelftestConfig& cfg) {
  detail::Recorder rec(10, "transfer image criterion for Q(sqrt -5) and Q(sqrt 14)");
  const QuadExt L1(Integer(-5)), L2(Integer(14));
  const MwExpr mm = make_symbol({detail::rat(-1), detail::rat(-1)});
  rec.guard(
      [&] {
        const auto d = transfer_image_test(mm, L1);
        rec.expect(!d.in_image && d.certificate == std::map<Place, long long>{{Place::real(), 1}}, "[-1,-1] for d = -5");
        rec.expect(transfer_image_test(make_symbol({detail::rat(2), detail::rat(3)}), L1).in_image, "[2,3] for d = -5");
      },
      "fixed cases");
  Sampler s(cfg.seed ^ 0xA);
  const int n = 50 * cfg.size;
  for (int i = 0; i < n; ++i) {
    const MwExpr e = s.expr(2);
    rec.guard([&] { rec.expect(transfer_image_test(e, L2).in_image, "d = 14 rejects " + render(e)); }, render(e));
  }
  auto accepted = [&] {
    const MwExpr e = s.expr(2);
    return sub(e, scale(h_v_mw(e, Place::real()).value, mm));
  };
  for (int i = 0; i < n; ++i) {
    rec.guard(
        [&] {
          const MwExpr x = accepted(), y = accepted();
          rec.expect(transfer_image_test(x, L1).in_image && transfer_image_test(y, L1).in_image &&
                         transfer_image_test(add(x, y), L1).in_image,
                     "closure under addition " + render(x) + " ; " + render(y));
        },
        "closure");
  }
  return rec.done();
}

inline std::vector<std::function<CheckResult(const SelftestConfig&)>> all_checks() {
  return {check_relations,   check_reciprocity,   check_roundtrip,  check_integral_k2,   check_witt_orders,
          check_integral_twists, check_idele_volume, check_parity, check_symbol_square, check_hasse};
}

inline CheckResult run_timed(const std::function<CheckResult(const SelftestConfig&)>& f, const SelftestConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r = f(cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace mwk

#include <gtest/gtest.h>

#include "mwk/parse.hpp"
#include "mwk/selftest.hpp"
#include "oracles.hpp"

using namespace mwk;

namespace {

Rational R(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }
MwExpr S(std::initializer_list<long long> xs) {
  std::vector<Rational> v;
  for (long long x : xs) v.push_back(R(x));
  return make_symbol(v);
}
MwExpr E(const char* s) { return parse_expr(s); }

}  // namespace

TEST(Expr, Construction) {
  const MwExpr a = S({2, 3});
  EXPECT_EQ(a.degree(), 2);
  EXPECT_EQ(a.terms().size(), 1u);
  EXPECT_EQ(eta_mul(S({2})).degree(), 0);
  EXPECT_EQ(mul(bracket_unit(R(2)), S({3})), add(S({3}), eta_mul(S({2, 3}))));
  EXPECT_THROW(add(S({2}), S({3, 5})), Error);
  EXPECT_THROW(make_symbol({R(0)}), Error);
  EXPECT_TRUE(add(S({2}), scale(-1, S({2}))).empty());
}

TEST(Milnor, Examples) {
  EXPECT_EQ(milnor_image(eta_mul(S({2, 3}))).unit, R(1));
  EXPECT_EQ(milnor_image(add(S({2}), S({3}))).unit, R(6));
  const MilnorNF m = milnor_image(S({-1, -1}));
  EXPECT_EQ(m.real_bit, 1);
  EXPECT_TRUE(m.tame.empty());
}

TEST(Witt, Examples) {
  const WittNF w = witt_image(S({-1, -1}));
  EXPECT_EQ(w.signature(), 4);
  EXPECT_EQ(w.inv, witt_invariants(DiagForm{R(1), R(1), R(1), R(1)}));
  EXPECT_TRUE(witt_image(mul(hyperbolic(), eta_mul(S({5})))).is_zero());
  const WittNF x = witt_image(eta_mul(S({2, 3})));
  EXPECT_EQ(x.signature(), 0);
  EXPECT_EQ(x.inv.hasse_negative, (std::set<Prime>{2, 3}));
}

TEST(NormalForm, Examples) {
  EXPECT_TRUE(normal_form(make_symbol({R(7, 3), R(1) - R(7, 3)})).is_zero());
  const MwNormalForm nf = normal_form(S({-1, -1}));
  ASSERT_TRUE(nf.s_inf.has_value());
  EXPECT_EQ(*nf.s_inf, 1);
  EXPECT_TRUE(nf.residues.empty());
  EXPECT_TRUE(normal_form(E("[6] - [2] - [3] - eta*[2,3]")).is_zero());
}

TEST(Residue, Examples) {
  const ResidueClass r = residue(S({5, 2}), 5);
  EXPECT_EQ(r.degree, 1);
  EXPECT_EQ(r.unit, 2u);
  EXPECT_TRUE(residue(S({2, 3}), 5).is_trivial());
  const ResidueClass d = residue(S({2}), 2);
  EXPECT_EQ(d.degree, 0);
  EXPECT_EQ(d.gw.rank, 1);
}

TEST(OrdTilde, Examples) {
  EXPECT_EQ(ord_tilde_real(S({3})), 0);
  EXPECT_EQ(ord_tilde_real(S({-1})), 1);
  // [2 * 5^2] = [2] + (1 + <-1>) [5]<2>: residue <2> + <-2>, the hyperbolic plane.
  const GWFp g = ord_tilde_finite(S({50}), 5);
  EXPECT_EQ(g.rank, 2);
  EXPECT_EQ(g, gw_fp_add(gw_fp_unit(5, 2), gw_fp_unit(5, 3)));
  EXPECT_EQ(g, gw_fp_add(gw_fp_unit(5, 1), gw_fp_unit(5, 4)));
  EXPECT_TRUE(g.disc_square);
}

TEST(FromInvariants, Examples) {
  MwNormalForm a = normal_form(S({-1, -1}));
  EXPECT_EQ(from_invariants(a), S({-1, -1}));
  const MwExpr b = from_invariants(normal_form(S({5, 2})));
  EXPECT_EQ(b, S({5, 2}));
  const MwExpr z = from_invariants(normal_form(MwExpr(2)));
  EXPECT_TRUE(z.empty());
  MwNormalForm bad = normal_form(S({5, 2}));
  bad.s_inf = 3;
  EXPECT_THROW(from_invariants(bad), Error);
  EXPECT_THROW(from_invariants(normal_form(S({2, 3, 5}))), Error);
}

TEST(Membership, Examples) {
  EXPECT_TRUE(in_KnMW_Z(S({-1, -1})));
  EXPECT_FALSE(in_KnMW_Z(S({5, 2})));
  EXPECT_TRUE(in_KnMW_ZS(S({5, 2}), {5}));
  EXPECT_FALSE(in_plus(S({-1, -1})));
  EXPECT_TRUE(in_plus(S({2, 3})));
  EXPECT_THROW(in_plus(constant(1)), Error);
}

TEST(Identities, MorelCalculus) {
  Sampler s(31);
  for (int i = 0; i < 300; ++i) {
    const Rational a = s.rational(), b = s.rational();
    const MwExpr A = make_symbol({a}), B = make_symbol({b});
    // [a][a] = [-1][a] = [a][-1]
    EXPECT_TRUE(eq(mul(A, A), mul(S({-1}), A)));
    EXPECT_TRUE(eq(mul(A, A), mul(A, S({-1}))));
    // [1/a] = -<a>[a]
    EXPECT_TRUE(eq(make_symbol({a.inverse()}), scale(-1, mul(bracket_unit(a), A))));
    // [a][b] = -<-1>[b][a]
    EXPECT_TRUE(eq(mul(A, B), scale(-1, mul(bracket_unit(R(-1)), mul(B, A)))));
    // eta commutes with [a]
    EXPECT_TRUE(eq(mul(eta(), A), mul(A, eta())));
    // <a><b> = <ab>
    EXPECT_TRUE(eq(mul(bracket_unit(a), bracket_unit(b)), bracket_unit(a * b)));
  }
}

TEST(Relations, VanishUnderNormalFormAndResidues) {
  Sampler s(32);
  for (int i = 0; i < 300; ++i) {
    Rational a = s.rational();
    while (a == Rational(1)) a = s.rational();
    const Rational b = s.rational();
    const std::vector<MwExpr> rels{
        make_symbol({a, Rational(1) - a}),
        sub(sub(sub(make_symbol({a * b}), make_symbol({a})), make_symbol({b})), eta_mul(make_symbol({a, b}))),
        sub(eta_mul(make_symbol({a})), mul(make_symbol({a}), eta())),
        mul(hyperbolic(), eta_mul(s.expr(static_cast<int>(s.uniform(-1, 2))))),
        mul(s.expr(1), make_symbol({a, Rational(1) - a})),
    };
    for (const auto& r : rels) {
      EXPECT_TRUE(normal_form(r).is_zero()) << render(r);
      for (Prime p : r.primes()) EXPECT_TRUE(residue(r, p).is_trivial()) << render(r) << " at " << p;
    }
  }
}

TEST(NormalForm, CompatibilityHoldsEverywhere) {
  Sampler s(33);
  for (int n = -2; n <= 3; ++n)
    for (int i = 0; i < 100; ++i) {
      const MwExpr e = s.expr(n);
      EXPECT_NO_THROW(normal_form(e)) << render(e);
    }
}

TEST(NormalForm, Homomorphism) {
  Sampler s(34);
  for (int n = 0; n <= 3; ++n)
    for (int i = 0; i < 100; ++i) {
      const MwExpr e = s.expr(n), f = s.expr(n);
      const MwNormalForm a = normal_form(e), b = normal_form(f), c = normal_form(add(e, f));
      EXPECT_EQ(c.witt.inv, witt_invariants(orthogonal_sum(witt_form_invariants(e), witt_form_invariants(f))));
      if (n == 0) EXPECT_EQ(c.milnor.rank, a.milnor.rank + b.milnor.rank);
      if (n == 1) EXPECT_EQ(c.milnor.unit, a.milnor.unit * b.milnor.unit);
      if (n >= 2) EXPECT_EQ(c.milnor.real_bit, a.milnor.real_bit ^ b.milnor.real_bit);
      if (n >= 1) EXPECT_EQ(*c.s_inf, *a.s_inf + *b.s_inf);
    }
}

TEST(Residue, NaturalityWithMilnorResidues) {
  Sampler s(35);
  for (int i = 0; i < 200; ++i) {
    const MwExpr e1 = s.expr(1);
    const Rational u = milnor_image(e1).unit;
    for (Prime p : e1.primes()) {
      // rank of the residue is the valuation of the Milnor image
      EXPECT_EQ(residue(e1, p).gw.rank, ord(u, p)) << render(e1);
    }
    const MwExpr e2 = s.expr(2);
    const MilnorNF m = milnor_image(e2);
    for (Prime p : e2.primes()) {
      if (p == 2) continue;
      // with uniformizer p, the residue of {p, u} is u and the tame symbol is u^{-1}
      const auto it = m.tame.find(p);
      const std::uint64_t t = it == m.tame.end() ? 1 : it->second;
      EXPECT_EQ(mulmod(residue(e2, p).unit, t, p), 1u) << render(e2);
      EXPECT_EQ(residue(e2, p).unit, static_cast<std::uint64_t>(oracle::inverse(static_cast<long long>(t), p)));
    }
  }
}

TEST(Residue, DefinitionOnLeadingPrime) {
  // residue([p, u_2, ..., u_n]) = [u_2, ..., u_n] and residue(eta [p, u]) = eta [u]
  for (Prime p : {3ULL, 5ULL, 7ULL, 11ULL}) {
    for (long long u = 1; u < static_cast<long long>(p); ++u) {
      const Rational P{Integer(p)};
      EXPECT_EQ(residue(make_symbol({P, R(u)}), p).unit, static_cast<std::uint64_t>(u));
      const ResidueClass r = residue(eta_mul(make_symbol({P, R(u)})), p);
      // eta [u] in W(F_p) is <u> - 1: rank 0 in W, signed disc -u
      EXPECT_EQ(r.degree, 0);
      EXPECT_EQ(r.gw, gw_fp_add(gw_fp_unit(p, u), gw_fp_times(gw_fp_unit(p, 1), -1)));
      EXPECT_EQ(residue(make_symbol({P}), p).gw, gw_fp_unit(p, 1));
    }
  }
}

TEST(Decomposition, SignatureCoordinateSplitsOff) {
  Sampler s(36);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 100; ++i) {
      const MwExpr e = s.expr(n);
      const MwNormalForm nf = normal_form(e);
      EXPECT_EQ(signature(sub(e, scale(*nf.s_inf, minus_one_power(n)))), 0) << render(e);
    }
}

TEST(IntegralK2, MilnorImageInK2Z) {
  const MwExpr mm = S({-1, -1});
  EXPECT_EQ(milnor_image(mm).real_bit, 1);
  EXPECT_EQ(milnor_image(scale(2, mm)).real_bit, 0);
  EXPECT_TRUE(milnor_image(scale(2, mm)).is_trivial());
  Sampler s(37);
  for (int i = 0; i < 100; ++i) {
    const MwExpr e = s.expr(2);
    const MwNormalForm nf = normal_form(e);
    const MwExpr z = sub(e, sub(from_invariants(nf), scale(*nf.s_inf, mm)));
    ASSERT_TRUE(in_KnMW_Z(z));
    const MilnorNF m = milnor_image(z);
    EXPECT_TRUE(m.tame.empty());  // lands in K_2(Z) = {0, {-1,-1}}
    const long long si = *normal_form(z).s_inf;
    EXPECT_TRUE(in_plus(sub(z, scale(si, mm))));
  }
}

TEST(FromInvariants, RoundTrip) {
  Sampler s(38);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 150; ++i) {
      const MwExpr e = s.expr(n);
      EXPECT_TRUE(eq(from_invariants(normal_form(e)), e)) << render(e);
    }
}

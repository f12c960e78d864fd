#include <gtest/gtest.h>

#include "mwk/hasse.hpp"
#include "mwk/parse.hpp"
#include "mwk/selftest.hpp"
#include "oracles.hpp"

using namespace mwk;

namespace {

Rational R(long long n) { return Rational(n); }
MwExpr S(std::initializer_list<long long> xs) {
  std::vector<Rational> v;
  for (long long x : xs) v.push_back(R(x));
  return make_symbol(v);
}
QuadExt L(long long d) { return QuadExt(Integer(d)); }
const Place inf = Place::real();

std::vector<std::string> strs(const std::vector<BMultiplier>& v) {
  std::vector<std::string> out;
  for (const auto& m : v) out.push_back(m.str());
  return out;
}

}  // namespace

TEST(QuadExt, Validation) {
  EXPECT_THROW(L(0), Error);
  EXPECT_THROW(L(1), Error);
  EXPECT_THROW(L(12), Error);
  EXPECT_NO_THROW(L(-1));
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma_set(L(-5)), std::set<Place>{inf});
  EXPECT_TRUE(sigma_set(L(14)).empty());
  EXPECT_EQ(sigma_set(L(-1)), std::set<Place>{inf});
}

TEST(Splitting, Examples) {
  EXPECT_EQ(splitting_type(5, L(-1)).kind, SplitKind::Split);
  EXPECT_EQ(splitting_type(3, L(-1)).kind, SplitKind::Inert);
  EXPECT_EQ(splitting_type(5, L(5)).kind, SplitKind::Ramified);
  try {
    splitting_type(2, L(-1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DyadicUnsupported);
  }
}

TEST(Splitting, LocalDegreesSumToTwoAndMatchRootCount) {
  for (long long d = -30; d <= 30; ++d) {
    if (d == 0 || d == 1 || oracle::squarefree(d) != d) continue;
    for (long long p = 3; p < 50; p += 2) {
      if (!oracle::is_prime(p)) continue;
      const SplitInfo s = splitting_type(p, L(d));
      int total = 0;
      for (const auto& w : s.places) total += w.e * w.f;
      EXPECT_EQ(total, 2);
      // x^2 = d mod p: two roots (split), none (inert), one (ramified)
      int roots = 0;
      for (long long x = 0; x < p; ++x) roots += oracle::mod(x * x - d, p) == 0;
      const SplitKind k = roots == 2 ? SplitKind::Split : roots == 0 ? SplitKind::Inert : SplitKind::Ramified;
      EXPECT_EQ(s.kind, k) << "p = " << p << ", d = " << d;
    }
  }
}

TEST(Bwv, Examples) {
  EXPECT_EQ(strs(b_wv(inf, L(-5))), (std::vector<std::string>{"0"}));
  EXPECT_EQ(strs(b_wv(inf, L(14))), (std::vector<std::string>{"id", "id"}));
  EXPECT_EQ(strs(b_wv(Place::finite(5), L(-1))), (std::vector<std::string>{"1", "1"}));
  EXPECT_EQ(strs(b_wv(Place::finite(3), L(-1))), (std::vector<std::string>{"4"}));
  EXPECT_EQ(strs(b_wv(Place::finite(5), L(5))), (std::vector<std::string>{"1"}));
  // Q_3(sqrt -3) contains the cube roots of unity: #mu = 6 against 2
  EXPECT_EQ(strs(b_wv(Place::finite(3), L(-3))), (std::vector<std::string>{"3"}));
  EXPECT_EQ(strs(b_wv(Place::finite(3), L(3))), (std::vector<std::string>{"1"}));
  EXPECT_THROW(b_wv(Place::finite(2), L(-1)), Error);
}

TEST(Bwv, RootsOfUnityCountsInResidueFields) {
  // n_w for unramified places is #F_{p^f}^x; count units of F_p[t]/(t^2 - d)
  // directly for inert primes and compare.
  for (long long d = -30; d <= 30; ++d) {
    if (d == 0 || d == 1 || oracle::squarefree(d) != d) continue;
    for (long long p = 3; p < 50; p += 2) {
      if (!oracle::is_prime(p)) continue;
      const auto b = b_wv(Place::finite(p), L(d));
      for (const auto& m : b) {
        EXPECT_EQ(m.kind, BMultiplier::Kind::Scalar);
        EXPECT_GE(m.factor, 1u);
      }
      if (splitting_type(p, L(d)).kind == SplitKind::Inert) {
        long long units = 0;
        for (long long x = 0; x < p; ++x)
          for (long long y = 0; y < p; ++y) units += oracle::mod(x * x - d * y * y, p) != 0;
        ASSERT_EQ(units % (p - 1), 0);
        EXPECT_EQ(static_cast<long long>(b[0].factor), units / (p - 1));
      }
    }
  }
}

TEST(Transfer, Examples) {
  const TransferDecision a = transfer_image_test(S({-1, -1}), L(-5));
  EXPECT_FALSE(a.in_image);
  EXPECT_EQ(a.certificate, (std::map<Place, long long>{{inf, 1}}));
  const TransferDecision b = transfer_image_test(S({2, 3}), L(-5));
  EXPECT_TRUE(b.in_image);
  EXPECT_EQ(b.certificate, (std::map<Place, long long>{{inf, 0}}));
  const TransferDecision c = transfer_image_test(S({-1, -1}), L(14));
  EXPECT_TRUE(c.in_image);
  EXPECT_TRUE(c.certificate.empty());
  EXPECT_THROW(transfer_image_test(S({2}), L(-5)), Error);
}

TEST(Transfer, Properties) {
  Sampler s(61);
  for (int i = 0; i < 200; ++i) {
    const MwExpr e = s.expr(2), f = s.expr(2);
    EXPECT_TRUE(transfer_image_test(e, L(14)).in_image);
    EXPECT_TRUE(transfer_image_test(e, L(2)).in_image);
    for (long long d : {-5LL, -1LL, -3LL}) {
      const bool acc = transfer_image_test(e, L(d)).in_image;
      EXPECT_EQ(acc, h_v_mw(e, inf).value == 0);
      EXPECT_EQ(acc, signature(e) == 0);
      if (acc && transfer_image_test(f, L(d)).in_image) EXPECT_TRUE(transfer_image_test(add(e, f), L(d)).in_image);
      EXPECT_TRUE(transfer_image_test(scale(0, e), L(d)).in_image);
    }
  }
}

TEST(Transfer, RealPlaceCompatibilityForRealFields) {
  // With d > 0 every real place of Q splits into two real places and the
  // local transfer is the identity, so both symbols agree with the one over Q.
  Sampler s(62);
  for (int i = 0; i < 100; ++i) {
    const MwExpr e = s.expr(2);
    for (const auto& m : b_wv(inf, L(14))) {
      ASSERT_EQ(m.kind, BMultiplier::Kind::Identity);
      EXPECT_EQ(h_v_mw(e, inf).value, h_v_mw(e, inf).value);
    }
  }
}

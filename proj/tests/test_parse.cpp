#include <gtest/gtest.h>

#include "mwk/json_io.hpp"
#include "mwk/parse.hpp"
#include "mwk/selftest.hpp"

#include <optional>

using namespace mwk;

namespace {

Rational R(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

std::optional<ErrorCode> code_of(const char* s) {
  try {
    parse_expr(s);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string message_of(const char* s) {
  try {
    parse_expr(s);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(parse_expr("[-1,-1]"), make_symbol({R(-1), R(-1)}));
  EXPECT_EQ(parse_expr("eta*[2,3]"), eta_mul(make_symbol({R(2), R(3)})));
  EXPECT_EQ(parse_expr("3*[5/7]"), scale(3, make_symbol({R(5, 7)})));
  EXPECT_EQ(parse_expr("<2>"), bracket_unit(R(2)));
  EXPECT_EQ(parse_expr("h"), hyperbolic());
  EXPECT_EQ(parse_expr("eta").degree(), -1);
  EXPECT_EQ(parse_expr("2"), constant(2));
  EXPECT_EQ(parse_expr("-[2] + [3]"), sub(make_symbol({R(3)}), make_symbol({R(2)})));
  EXPECT_EQ(parse_expr("  [ 2 , 3 ]  -  eta * [2,3,5] "),
            sub(make_symbol({R(2), R(3)}), eta_mul(make_symbol({R(2), R(3), R(5)}))));
  EXPECT_EQ(parse_expr("<2>*[3]"), mul(bracket_unit(R(2)), make_symbol({R(3)})));
  EXPECT_TRUE(parse_expr("[2] - [2]").empty());
  EXPECT_EQ(parse_expr("[2] - [2]").degree(), 1);
}

TEST(Parse, Errors) {
  EXPECT_EQ(code_of(""), ErrorCode::ParseError);
  EXPECT_EQ(code_of("[2,"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("[2] +"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("foo"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("[1/0]"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("[2] [3]"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("[0]"), ErrorCode::ZeroEntry);
  EXPECT_EQ(code_of("[2,0/5]"), ErrorCode::ZeroEntry);
  EXPECT_EQ(code_of("[2] + [2,3]"), ErrorCode::DegreeMismatch);
  EXPECT_EQ(code_of("eta + [2]"), ErrorCode::DegreeMismatch);
  EXPECT_NE(message_of("[2] + [2,3]").find("position 6"), std::string::npos);
  EXPECT_NE(message_of("[2] ? [3]").find("position 4"), std::string::npos);
}

TEST(Render, Examples) {
  EXPECT_EQ(render(parse_expr("[-1,-1]")), "[-1,-1]");
  EXPECT_EQ(render(parse_expr("-2*eta*[2,3]")), "-2*eta*[2,3]");
  EXPECT_EQ(render(constant(0)), "0");
  EXPECT_EQ(render(parse_expr("[2] - [2]")), "0*[1]");
  EXPECT_EQ(render(parse_expr("eta - eta")), "0*eta");
}

TEST(Render, RoundTrip) {
  Sampler s(71);
  for (int n = -2; n <= 3; ++n)
    for (int i = 0; i < 100; ++i) {
      const MwExpr e = s.expr(n, 4);
      const MwExpr back = parse_expr(render(e));
      EXPECT_EQ(back, e) << render(e);
      EXPECT_EQ(back.degree(), e.degree());
    }
}

TEST(Json, DeterministicSortedOutput) {
  Sampler s(72);
  for (int i = 0; i < 50; ++i) {
    const MwExpr e = s.expr(2);
    const std::string a = to_json(normal_form(e)).dump();
    const std::string b = to_json(normal_form(parse_expr(render(e)))).dump();
    EXPECT_EQ(a, b);
  }
  const Json j = to_json(normal_form(parse_expr("[-1,-1]")));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(j.at("degree"), 2);
  EXPECT_EQ(j.at("s_inf"), 1);
  EXPECT_EQ(j.at("zero"), false);
  EXPECT_EQ(to_json(R(-3, 4)), "-3/4");
}

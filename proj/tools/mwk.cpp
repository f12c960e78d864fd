// mwk: command-line front end. Every subcommand prints JSON on stdout.
// Exit codes: 0 ok, 2 input/parse errors, 3 domain errors, 4 failed checks.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mwk/json_io.hpp"
#include "mwk/selftest.hpp"

namespace {

using mwk::Json;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kDomainError = 3;
constexpr int kCheckFailed = 4;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

mwk::Place parse_place(const std::string& s) {
  if (s == "inf") return mwk::Place::real();
  if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw mwk::Error(mwk::ErrorCode::ParseError, "bad place '" + s + "'");
  const auto p = std::stoull(s);
  if (!mwk::is_prime(p)) throw mwk::Error(mwk::ErrorCode::NotPrime, s + " is not prime");
  return mwk::Place::finite(p);
}

mwk::Prime parse_prime(const std::string& s) {
  const mwk::Place v = parse_place(s);
  if (v.is_real()) throw mwk::Error(mwk::ErrorCode::ParseError, "expected a prime, got 'inf'");
  return v.prime();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mwk::Error(mwk::ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw mwk::Error(mwk::ErrorCode::ParseError, path + ": " + e.what());
  }
}

int exit_code_for(mwk::ErrorCode c) {
  switch (c) {
    case mwk::ErrorCode::ParseError:
    case mwk::ErrorCode::DegreeMismatch:
    case mwk::ErrorCode::ZeroEntry:
      return kInputError;
    default:
      return kDomainError;
  }
}

// A leading space keeps expressions such as "-[2]" or "-eta*[3]" from being
// read as options; the expression parser skips it.
std::vector<std::string> shield_expressions(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string s = argv[i];
    if (s.size() > 1 && s[0] == '-' && s[1] != '-' && !std::isdigit(static_cast<unsigned char>(s[1])) &&
        s.find_first_of("[<*+ ") != std::string::npos)
      s.insert(0, " ");
    out.push_back(std::move(s));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor-Witt K-theory of Q"};
  app.require_subcommand(1);
  int max_digits = mwk::max_factor_digits().load();
  app.add_option("--max-factor-digits", max_digits, "largest numerator/denominator size (digits) to factor")
      ->check(CLI::Range(1, 19));

  std::string expr, prime, place, group, a, b, d, sub_kind;
  std::vector<std::string> files;
  bool mw = false;
  std::uint64_t seed = mwk::SelftestConfig{}.seed;
  int size = 1;

  auto* nf = app.add_subcommand("nf", "normal form");
  nf->add_option("expr", expr)->required();

  auto* res = app.add_subcommand("residue", "residue at a prime");
  res->add_option("--prime", prime)->required();
  res->add_option("expr", expr)->required();

  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol of two rationals");
  hil->add_flag("--mw", mw, "Milnor-Witt symbol in B_v");
  hil->add_option("--place", place)->required();
  hil->add_option("a", a)->required();
  hil->add_option("b", b)->required();

  auto* hmw = app.add_subcommand("hmw", "all local Milnor-Witt symbols of a degree-2 expression");
  hmw->add_option("expr", expr)->required();

  auto* rec = app.add_subcommand("reciprocity", "Moore reciprocity table for [a, b]");
  rec->add_option("a", a)->required();
  rec->add_option("b", b)->required();

  auto* mem = app.add_subcommand("membership", "subgroup membership");
  mem->add_option("--group", group, "Z, ZS=p,q,..., plus or wild")->required();
  mem->add_option("expr", expr)->required();

  auto* ide = app.add_subcommand("idele", "idèle operations");
  ide->add_option("op", sub_kind, "vol, diag, parity or add")->required()->check(CLI::IsMember({"vol", "diag", "parity", "add"}));
  ide->add_option("--file", files, "idèle JSON input");
  ide->add_option("expr", expr, "degree-1 expression (diag)");

  auto* has = app.add_subcommand("hasse", "transfer image criterion for Q(sqrt d)");
  has->add_option("--d", d)->required();
  has->add_option("expr", expr)->required();

  auto* st = app.add_subcommand("selftest", "seeded invariant suites");
  st->add_option("--seed", seed);
  st->add_option("--size", size)->check(CLI::Range(1, 100));

  try {
    auto args = shield_expressions(argc, argv);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  mwk::max_factor_digits().store(max_digits);

  try {
    if (*nf) {
      emit(mwk::to_json(mwk::normal_form(mwk::parse_expr(expr))));
    } else if (*res) {
      emit(mwk::to_json(mwk::residue(mwk::parse_expr(expr), parse_prime(prime))));
    } else if (*hil) {
      const mwk::Place v = parse_place(place);
      const mwk::Rational x = mwk::Rational::parse(a), y = mwk::Rational::parse(b);
      if (x.is_zero() || y.is_zero()) throw mwk::Error(mwk::ErrorCode::ZeroEntry, "zero argument");
      const long long value = mw ? mwk::mw_hilbert(mwk::make_symbol({x}), mwk::make_symbol({y}), v).value
                                 : mwk::hilbert_classical(x, y, v);
      emit(Json{{"place", v.str()}, {"mw", mw}, {"value", value}});
    } else if (*hmw) {
      emit(mwk::to_json(mwk::h_mw(mwk::parse_expr(expr))));
    } else if (*rec) {
      const mwk::Rational x = mwk::Rational::parse(a), y = mwk::Rational::parse(b);
      if (x.is_zero() || y.is_zero()) throw mwk::Error(mwk::ErrorCode::ZeroEntry, "zero argument");
      const mwk::MooreReport r = mwk::moore_check(mwk::make_symbol({x, y}));
      emit(mwk::to_json(r));
      return r.passed ? kOk : kCheckFailed;
    } else if (*mem) {
      const mwk::MwExpr e = mwk::parse_expr(expr);
      bool member = false;
      if (group == "Z") {
        member = mwk::in_KnMW_Z(e);
      } else if (group.rfind("ZS=", 0) == 0) {
        std::set<mwk::Prime> S;
        std::stringstream ss(group.substr(3));
        for (std::string item; std::getline(ss, item, ',');) S.insert(parse_prime(item));
        member = mwk::in_KnMW_ZS(e, S);
      } else if (group == "plus") {
        member = mwk::in_plus(e);
      } else if (group == "wild") {
        member = mwk::in_wild_kernel(e);
      } else {
        throw mwk::Error(mwk::ErrorCode::ParseError, "unknown group '" + group + "'");
      }
      emit(Json{{"group", group}, {"member", member}});
    } else if (*ide) {
      auto need = [&](std::size_t n) {
        if (files.size() != n)
          throw mwk::Error(mwk::ErrorCode::ParseError, "idele " + sub_kind + " needs " + std::to_string(n) + " --file input(s)");
      };
      if (sub_kind == "diag") {
        if (expr.empty()) throw mwk::Error(mwk::ErrorCode::ParseError, "idele diag needs an expression");
        emit(mwk::to_json(mwk::diagonal(mwk::parse_expr(expr))));
      } else if (sub_kind == "vol") {
        need(1);
        emit(Json{{"vol", mwk::vol(mwk::idele_from_json(read_json_file(files[0]))).str()}});
      } else if (sub_kind == "parity") {
        need(1);
        emit(Json{{"parity", mwk::parity(mwk::idele_from_json(read_json_file(files[0])))}});
      } else {
        need(2);
        emit(mwk::to_json(mwk::idele_add(mwk::idele_from_json(read_json_file(files[0])),
                                         mwk::idele_from_json(read_json_file(files[1])))));
      }
    } else if (*has) {
      const mwk::Rational dv = mwk::Rational::parse(d);
      if (!dv.is_integer()) throw mwk::Error(mwk::ErrorCode::ParseError, "d must be an integer");
      emit(mwk::to_json(mwk::transfer_image_test(mwk::parse_expr(expr), mwk::QuadExt(dv.num()))));
    } else if (*st) {
      const mwk::SelftestConfig cfg{seed, size};
      Json checks = Json::array();
      bool ok = true;
      for (const auto& check : mwk::all_checks()) {
        const mwk::CheckResult r = check(cfg);
        ok = ok && r.passed;
        checks.push_back(Json{{"id", r.id},
                              {"name", r.name},
                              {"passed", r.passed},
                              {"samples", r.samples},
                              {"failures", r.failures},
                              {"note", r.note}});
      }
      emit(Json{{"seed", seed}, {"size", size}, {"checks", checks}, {"passed", ok}});
      return ok ? kOk : kCheckFailed;
    }
  } catch (const mwk::Error& e) {
    std::cerr << Json{{"error", mwk::to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.code());
  }
  return kOk;
}

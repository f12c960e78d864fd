#pragma once

// JSON encodings. Rationals and big integers are strings; object keys are
// sorted, so output is deterministic.

#include <json.hpp>

#include "mwk/hasse.hpp"
#include "mwk/idele.hpp"
#include "mwk/parse.hpp"

namespace mwk {

using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const GWFp& g) { return Json{{"rank", g.rank}, {"disc_square", g.disc_square}}; }
inline Json to_json(const WFp& w) { return Json{{"rank_parity", w.rank_parity}, {"disc_square", w.disc_square}}; }

inline Json to_json(const MilnorNF& m) {
  Json j{{"degree", m.degree}};
  if (m.degree == 0) j["rank"] = m.rank.str();
  if (m.degree == 1) j["unit"] = m.unit.str();
  if (m.degree >= 2) j["real_bit"] = m.real_bit;
  if (m.degree == 2) {
    Json t = Json::object();
    for (const auto& [p, v] : m.tame) t[std::to_string(p)] = v;
    j["tame"] = t;
  }
  return j;
}

inline Json to_json(const WittNF& w) {
  Json h = Json::array();
  for (Prime p : w.inv.hasse_negative) h.push_back(p);
  return Json{{"rank_parity", w.inv.rank_parity},
              {"signed_disc", w.inv.signed_disc.str()},
              {"hasse_negative", h},
              {"signature", w.inv.signature}};
}

inline Json to_json(const ResidueClass& r) {
  Json j{{"prime", r.p}, {"degree", r.degree}, {"trivial", r.is_trivial()}};
  if (r.degree == 1) j["unit"] = r.unit;
  if (r.degree == 0) j["gw"] = to_json(r.gw);
  if (r.degree < 0) j["w"] = to_json(r.w);
  return j;
}

inline Json to_json(const MwNormalForm& nf) {
  Json res = Json::object();
  for (const auto& [p, r] : nf.residues) res[std::to_string(p)] = to_json(r);
  return Json{{"degree", nf.degree()},
              {"milnor", to_json(nf.milnor)},
              {"witt", to_json(nf.witt)},
              {"s_inf", nf.s_inf ? Json(*nf.s_inf) : Json(nullptr)},
              {"residues", res},
              {"zero", nf.is_zero()}};
}

inline Json to_json(const BValue& b) { return b.value; }

inline Json to_json(const std::map<Place, BValue>& m) {
  Json j = Json::object();
  for (const auto& [v, b] : m) j[v.str()] = b.value;
  return j;
}

inline Json to_json(const MooreReport& r) {
  Json table = Json::object();
  for (const auto& [v, b] : r.symbols)
    table[v.str()] = Json{{"h", b.value}, {"q", r.roots.at(v).value}};
  return Json{{"places", table}, {"product", r.product}, {"passed", r.passed}};
}

inline Json to_json(const TransferDecision& d) {
  Json c = Json::object();
  for (const auto& [v, h] : d.certificate) c[v.str()] = h;
  return Json{{"in_transfer_image", d.in_image}, {"certificate", c}};
}

// ---------------------------------------------------------------------------
// Idèles:
//   {"real": {"u": "p/q", "k": int}, "finite": {"<p>": {"u": "p/q", "eps": 0|1}}}

inline Json to_json(const MwIdele& x) {
  Json fin = Json::object();
  for (const auto& [p, c] : x.finite()) fin[std::to_string(p)] = Json{{"u", c.u.str()}, {"eps", c.twist}};
  return Json{{"real", Json{{"u", x.real().u.str()}, {"k", x.real().twist}}}, {"finite", fin}};
}

namespace detail {

inline Rational json_rational(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorCode::ParseError, "expected a rational, got " + j.dump());
}

inline long long json_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorCode::ParseError, std::string("expected an integer for ") + what);
  return j.get<long long>();
}

}  // namespace detail

inline MwIdele idele_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "idèle must be a JSON object");
  MwIdele x;
  if (j.contains("real")) {
    const Json& r = j.at("real");
    if (!r.is_object() || !r.contains("u")) throw Error(ErrorCode::ParseError, "real component needs \"u\"");
    x.set(k1_local_make(detail::json_rational(r.at("u")), r.contains("k") ? detail::json_int(r.at("k"), "k") : 0,
                        Place::real()));
  }
  if (j.contains("finite")) {
    const Json& f = j.at("finite");
    if (!f.is_object()) throw Error(ErrorCode::ParseError, "\"finite\" must be an object");
    for (const auto& [key, c] : f.items()) {
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
          key.size() > 19)
        throw Error(ErrorCode::ParseError, "bad prime key \"" + key + "\"");
      const Prime p = std::stoull(key);
      if (!is_prime(p)) throw Error(ErrorCode::NotPrime, key + " is not prime");
      if (!c.is_object() || !c.contains("u")) throw Error(ErrorCode::ParseError, "component " + key + " needs \"u\"");
      x.set(k1_local_make(detail::json_rational(c.at("u")), c.contains("eps") ? detail::json_int(c.at("eps"), "eps") : 0,
                          Place::finite(p)));
    }
  }
  return x;
}

}  // namespace mwk

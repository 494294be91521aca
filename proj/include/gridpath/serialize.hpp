#pragma once

// JSON forms of the library's value types. Polynomials serialize as
//   {"terms": [{"q": int, "t": int, "c": "decimal-string"}, ...]}
// in canonical order (ascending t, then ascending q); coefficients travel
// as decimal strings so downstream consumers never truncate them.

#include <json.hpp>

#include <string>

#include "gridpath/biject.hpp"
#include "gridpath/identities.hpp"
#include "gridpath/qpoly.hpp"
#include "gridpath/scramble.hpp"

namespace gridpath {

using Json = nlohmann::ordered_json;

inline Json to_json(const BiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(Json{{"q", e.q}, {"t", e.t}, {"c", c.str()}});
  }
  return Json{{"terms", std::move(terms)}};
}

inline Json to_json(const UniPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(Json{{"q", e}, {"t", 0}, {"c", c.str()}});
  }
  return Json{{"terms", std::move(terms)}};
}

inline BiPoly bipoly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw std::invalid_argument("polynomial JSON: expected {\"terms\": [...]}");
  }
  BiPoly out;
  for (const Json& term : j["terms"]) {
    if (!term.contains("q") || !term.contains("t") || !term.contains("c")) {
      throw std::invalid_argument("polynomial JSON: term needs q, t, c");
    }
    out.add_term(term["q"].get<int>(), term["t"].get<int>(),
                 Coeff(term["c"].get<std::string>()));
  }
  return out;
}

inline UniPoly unipoly_from_json(const Json& j) {
  BiPoly p = bipoly_from_json(j);
  UniPoly out;
  for (const auto& [e, c] : p.terms()) {
    if (e.t != 0) {
      throw std::invalid_argument("polynomial JSON: expected a t-free polynomial");
    }
    out.add_term(e.q, c);
  }
  return out;
}

inline Json to_json(const Scrambler& o) {
  return Json{{"H", o.horizontal()}, {"V", o.vertical()}};
}

inline Scrambler scrambler_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("H") || !j.contains("V")) {
    throw std::invalid_argument("scrambler JSON: expected {\"H\": [...], \"V\": [...]}");
  }
  return Scrambler(j["H"].get<std::vector<int>>(),
                   j["V"].get<std::vector<int>>());
}

inline Json to_json(const Witness& w) {
  Json out = Json::object();
  if (w.m >= 0) out["m"] = w.m;
  if (w.n >= 0) out["n"] = w.n;
  if (w.scrambler) out["scrambler"] = to_json(*w.scrambler);
  if (!w.detail.empty()) out["detail"] = w.detail;
  out["lhs"] = to_json(w.lhs);
  out["rhs"] = to_json(w.rhs);
  if (!w.note.empty()) out["note"] = w.note;
  return out;
}

inline Json to_json(const VerificationReport& r) {
  Json mismatches = Json::array();
  for (const Witness& w : r.mismatches) mismatches.push_back(to_json(w));
  return Json{{"identity", r.identity},
              {"range", r.range},
              {"cases", r.cases},
              {"pass", r.pass()},
              {"mismatches", std::move(mismatches)},
              {"elapsed_ms", r.elapsed_ms}};
}

inline Json to_json(const BijectionTrace& t) {
  return Json{{"lemma", t.lemma},
              {"source", Json{{"word", t.source_word},
                              {"scrambler", to_json(t.source_scrambler)}}},
              {"target", Json{{"word", t.target_word},
                              {"scrambler", to_json(t.target_scrambler)}}},
              {"class", Json{{"u", t.u},
                             {"a", t.a},
                             {"b", t.b},
                             {"v", t.v},
                             {"floating", std::string(1, t.floating)},
                             {"size", t.class_size}}},
              {"type", t.type},
              {"source_index", t.source_index},
              {"target_index", t.target_index},
              {"delta", Json{{"cindex", t.dcindex}, {"corners", t.dcorners}}}};
}

inline Json to_json(const ChainResult& c) {
  Json steps = Json::array();
  for (const BijectionTrace& t : c.steps) steps.push_back(to_json(t));
  return Json{{"word", c.word.steps()},
              {"scrambler", to_json(c.scrambler)},
              {"delta", Json{{"cindex", c.dcindex}, {"corners", c.dcorners}}},
              {"steps", std::move(steps)}};
}

inline Json to_json(const ProbeReport& p) {
  return Json{
      {"m", p.m},
      {"n", p.n},
      {"scrambler", to_json(p.scrambler)},
      {"corners_always_m", p.corners_always_m},
      {"offset_constant", p.offset_constant},
      {"offset", p.offset},
      {"offset_derived", p.offset_derived},
      {"offset_printed", p.offset_printed},
      {"gf", Json{{"area_corners", to_json(p.gf_area_corners)},
                  {"area_square", to_json(p.gf_area_square)},
                  {"shifted_scrambled", to_json(p.gf_shifted_scrambled)}}},
      {"targets", Json{{"plain", to_json(p.target_plain)},
                       {"weighted", to_json(p.target_weighted)}}},
      {"matches",
       Json{{"area_corners", Json{{"plain", p.area_corners_matches_plain},
                                  {"weighted", p.area_corners_matches_weighted}}},
            {"area_square", Json{{"plain", p.area_square_matches_plain},
                                 {"weighted", p.area_square_matches_weighted}}},
            {"shifted_scrambled",
             Json{{"plain", p.shifted_matches_plain},
                  {"weighted", p.shifted_matches_weighted}}}}}};
}

}  // namespace gridpath

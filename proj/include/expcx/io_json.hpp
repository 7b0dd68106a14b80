#ifndef EXPCX_IO_JSON_HPP
#define EXPCX_IO_JSON_HPP

// JSON forms of polynomials, sequences and complexity results.
//
//   polynomial: {"p": 5, "terms": [[c, i, j], ...]}   terms in monomial order
//   sequence:   {"p": 5, "symbols": [0, 1, 3, 2, 4]}
//   result:     {"n", "kind", "value", "status", "upper_bound", "witness",
//                "witness_text"}
//   profile:    {"sequence": <sequence>, "entries": [<result>, ...]}

#include <string>
#include <vector>

#include "expcx/bivariate.hpp"
#include "expcx/complexity.hpp"
#include "expcx/sequence.hpp"
#include "json.hpp"

namespace expcx {

using Json = nlohmann::ordered_json;

inline Json poly_to_json(const BivariatePoly& h) {
  Json terms = Json::array();
  for (const auto& [m, c] : h.terms()) terms.push_back({c, m.x_exp, m.y_exp});
  return {{"p", h.field().modulus()}, {"terms", terms}};
}

inline BivariatePoly poly_from_json(const Json& j) {
  try {
    const PrimeField field(j.at("p").get<std::uint64_t>());
    BivariatePoly h(field);
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 3) throw Error(Errc::parse_error, "term must be [c, i, j]");
      h.add_term(t[1].get<unsigned>(), t[2].get<unsigned>(), field.reduce(t[0].get<std::int64_t>()));
    }
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("polynomial JSON: ") + e.what());
  }
}

inline Json sequence_to_json(const SequencePrefix& s) {
  return {{"p", s.field().modulus()}, {"symbols", std::vector<Residue>(s.symbols().begin(), s.symbols().end())}};
}

inline SequencePrefix sequence_from_json(const Json& j) {
  try {
    return {PrimeField(j.at("p").get<std::uint64_t>()), j.at("symbols").get<std::vector<Residue>>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("sequence JSON: ") + e.what());
  }
}

inline Json result_to_json(const ComplexityResult& r) {
  Json j;
  j["n"] = r.n;
  j["kind"] = to_string(r.kind);
  j["value"] = r.value;
  j["status"] = to_string(r.status);
  j["upper_bound"] = r.upper_bound ? Json(*r.upper_bound) : Json(nullptr);
  j["witness"] = r.witness ? poly_to_json(*r.witness) : Json(nullptr);
  j["witness_text"] = r.witness ? Json(to_string(*r.witness)) : Json(nullptr);
  return j;
}

inline ComplexityResult result_from_json(const Json& j) {
  try {
    ComplexityResult r;
    r.n = j.at("n").get<std::size_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "ExpansionComplexity") {
      r.kind = ComplexityKind::expansion;
    } else if (kind == "IExpansionComplexity") {
      r.kind = ComplexityKind::i_expansion;
    } else {
      throw Error(Errc::parse_error, "unknown kind " + kind);
    }
    r.value = j.at("value").get<unsigned>();
    const auto status = j.at("status").get<std::string>();
    if (status == "Exact") {
      r.status = ComplexityStatus::exact;
    } else if (status == "LowerBound") {
      r.status = ComplexityStatus::lower_bound;
    } else {
      throw Error(Errc::parse_error, "unknown status " + status);
    }
    if (j.contains("upper_bound") && !j["upper_bound"].is_null()) r.upper_bound = j["upper_bound"].get<unsigned>();
    if (j.contains("witness") && !j["witness"].is_null()) r.witness = poly_from_json(j["witness"]);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("result JSON: ") + e.what());
  }
}

inline Json profile_to_json(const ComplexityProfile& p) {
  Json entries = Json::array();
  for (const auto& e : p.entries) entries.push_back(result_to_json(e));
  return {{"sequence", sequence_to_json(p.sequence)}, {"entries", entries}};
}

inline ComplexityProfile profile_from_json(const Json& j) {
  ComplexityProfile p{sequence_from_json(j.at("sequence")), {}};
  for (const auto& e : j.at("entries")) p.entries.push_back(result_from_json(e));
  return p;
}

}  // namespace expcx

#endif  // EXPCX_IO_JSON_HPP

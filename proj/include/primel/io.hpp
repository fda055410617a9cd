#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

#include "primel/scheme.hpp"

namespace primel {

using json = nlohmann::ordered_json;

/// Either kind of catalog coordinate ring: full Hopf data, or algebra+counit
/// when the group law is not part of the presentation (Oort-Tate, Raynaud).
using group_object = std::variant<hopf_algebra, augmented_algebra>;

inline const augmented_algebra& augmented_of(const group_object& g) {
  if (std::holds_alternative<hopf_algebra>(g)) return std::get<hopf_algebra>(g).augmented();
  return std::get<augmented_algebra>(g);
}

inline json ring_to_json(const ring& r) {
  switch (r.kind()) {
    case ring_kind::integers: return json{{"kind", "integers"}};
    case ring_kind::rationals: return json{{"kind", "rationals"}};
    case ring_kind::int_mod:
      return json{{"kind", "int_mod"}, {"modulus", r.modulus().get_str()}};
  }
  fail(errc::internal, "bad ring kind");
}

inline ring ring_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "z") return ring::integers();
    if (s == "q") return ring::rationals();
    if (s.rfind("zmod:", 0) == 0) {
      mpz_class n;
      if (mpz_set_str(n.get_mpz_t(), s.substr(5).c_str(), 10) != 0)
        fail(errc::parse_error, "bad modulus in ring '" + s + "'");
      return ring::int_mod(n);
    }
    fail(errc::parse_error, "unknown ring '" + s + "'");
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "integers") return ring::integers();
  if (kind == "rationals") return ring::rationals();
  if (kind == "int_mod") {
    mpz_class n;
    if (mpz_set_str(n.get_mpz_t(), j.at("modulus").get<std::string>().c_str(), 10) != 0)
      fail(errc::parse_error, "bad modulus string");
    return ring::int_mod(n);
  }
  fail(errc::parse_error, "unknown ring kind '" + kind + "'");
}

inline json vec_to_json(const ring& r, const vec& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(r.to_string(e));
  return out;
}

inline vec vec_from_json(const ring& r, const json& j) {
  vec out;
  for (const auto& e : j) out.push_back(r.parse(e.get<std::string>()));
  return out;
}

inline json matrix_to_json(const matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    rows.push_back(vec_to_json(m.base_ring(), m.row(i)));
  return rows;
}

inline matrix matrix_from_json(const ring& r, const json& j) {
  std::vector<vec> rows;
  std::size_t cols = 0;
  for (const auto& row : j) {
    rows.push_back(vec_from_json(r, row));
    cols = rows.back().size();
  }
  return matrix::from_rows(r, cols, rows);
}

inline json algebra_to_json(const finite_algebra& a) {
  const ring& r = a.base_ring();
  json j;
  j["ring"] = ring_to_json(r);
  j["rank"] = a.rank();
  j["labels"] = a.labels();
  j["unit"] = vec_to_json(r, a.unit());
  json mult = json::array();
  for (const auto& t : a.mult_terms())
    mult.push_back(json::array({t.i, t.j, t.k, r.to_string(t.c)}));
  j["mult"] = mult;
  return j;
}

inline finite_algebra algebra_from_json(const json& j) {
  ring r = ring_from_json(j.at("ring"));
  std::size_t rank = j.at("rank").get<std::size_t>();
  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  vec unit = vec_from_json(r, j.at("unit"));
  std::vector<mult_term> terms;
  for (const auto& t : j.at("mult"))
    terms.push_back({t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(),
                     t.at(2).get<std::size_t>(), r.parse(t.at(3).get<std::string>())});
  return finite_algebra::make(std::move(r), rank, std::move(labels), terms, std::move(unit));
}

inline json group_to_json(const group_object& g) {
  const augmented_algebra& aug = augmented_of(g);
  json j = algebra_to_json(aug.algebra());
  j["counit"] = vec_to_json(aug.base_ring(), aug.counit());
  if (std::holds_alternative<hopf_algebra>(g)) {
    const hopf_algebra& h = std::get<hopf_algebra>(g);
    json comult = json::array();
    for (const auto& t : h.comult_terms())
      comult.push_back(json::array({t.i, t.j, t.k, h.base_ring().to_string(t.c)}));
    j["comult"] = comult;
    if (h.antipode()) j["antipode"] = matrix_to_json(*h.antipode());
  }
  return j;
}

inline group_object group_from_json(const json& j) {
  finite_algebra alg = algebra_from_json(j);
  ring r = alg.base_ring();
  if (!j.contains("counit")) fail(errc::parse_error, "group object needs a counit");
  augmented_algebra aug = augmented_algebra::make(std::move(alg), vec_from_json(r, j.at("counit")));
  if (!j.contains("comult")) return aug;
  std::vector<comult_term> comult;
  for (const auto& t : j.at("comult"))
    comult.push_back({t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>(),
                      t.at(2).get<std::size_t>(), r.parse(t.at(3).get<std::string>())});
  std::optional<matrix> antipode;
  if (j.contains("antipode")) antipode = matrix_from_json(r, j.at("antipode"));
  return hopf_algebra::make(std::move(aug), comult, std::move(antipode));
}

/// Points file: an array of {"target_ring": ..., "values": [...]}.
struct point_input {
  ring target;
  vec values;
};

inline std::vector<point_input> points_from_json(const json& j) {
  if (!j.is_array()) fail(errc::parse_error, "points file must hold an array");
  std::vector<point_input> out;
  for (const auto& p : j) {
    ring target = ring_from_json(p.at("target_ring"));
    vec values = vec_from_json(target, p.at("values"));
    out.push_back({std::move(target), std::move(values)});
  }
  return out;
}

/// Serialized subscheme report: the cut-out ideal in the source coordinates
/// and the quotient presentation it leaves behind.
inline json report_to_json(const finite_algebra& source, const quotient_scheme_report& rep) {
  const ring& r = source.base_ring();
  json j;
  j["ring"] = ring_to_json(r);
  j["source_rank"] = source.rank();
  json ideal;
  json gens = json::array();
  json display = json::array();
  for (std::size_t i = 0; i < rep.ideal_carrier.generator_count(); ++i) {
    gens.push_back(vec_to_json(r, rep.ideal_carrier.generators().row(i)));
    display.push_back(source.format_element(rep.ideal_carrier.generators().row(i)));
  }
  ideal["generators"] = gens;
  ideal["display"] = display;
  json cut = json::array();
  for (const auto& g : rep.cut_generators) cut.push_back(source.format_element(g));
  ideal["cut_out_by"] = cut;
  if (rep.ideal_generator) ideal["generator"] = source.format_element(*rep.ideal_generator);
  ideal["is_rank_one_summand"] = rep.ideal_is_summand;
  j["ideal"] = ideal;
  j["rank"] = rep.rank;
  j["is_free"] = rep.is_free;
  j["quotient"] = algebra_to_json(rep.quotient);
  j["projection"] = matrix_to_json(rep.projection);
  return j;
}

}  // namespace primel

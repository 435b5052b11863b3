#pragma once

// JSON documents exchanged by the CLI.
//
//   coefficients: {"terms": [{"n": -1, "re": 0.5, "im": 0.0}, ...]}
//   element:      coefficients + {"weight": "<spec>", "norm": x, "tail": {...}}
//
// Infinite rates are written as null.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "beurling/algebra.hpp"
#include "beurling/error.hpp"
#include "beurling/levy.hpp"
#include "beurling/series.hpp"
#include "beurling/weights.hpp"
#include "beurling/wiener.hpp"

namespace beurling::io {

using nlohmann::json;

inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline json coefficients_to_json(const LaurentPolynomial& a) {
  json terms = json::array();
  for (const auto& [n, c] : a.terms()) terms.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  return {{"terms", terms}};
}

inline LaurentPolynomial coefficients_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
    throw ArgumentError("coefficient JSON needs a \"terms\" array");
  std::vector<std::pair<std::int64_t, cplx>> terms;
  std::set<std::int64_t> seen;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("n") || !t["n"].is_number_integer())
      throw ArgumentError("each term needs an integer \"n\"");
    if (!t.contains("re") || !t["re"].is_number()) throw ArgumentError("each term needs a numeric \"re\"");
    if (t.contains("im") && !t["im"].is_number()) throw ArgumentError("\"im\" must be numeric");
    const auto n = t["n"].get<std::int64_t>();
    if (!seen.insert(n).second) throw ArgumentError("duplicate coefficient index " + std::to_string(n));
    terms.emplace_back(n, cplx(t["re"].get<double>(), t.value("im", 0.0)));
  }
  return LaurentPolynomial::from_terms(std::move(terms));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError("'" + path + "': " + e.what());
  }
}

inline LaurentPolynomial load_coefficients(const std::string& path) {
  return coefficients_from_json(read_json_file(path));
}

inline json tail_to_json(const TailModel& t) {
  if (t.kind == TailModel::Kind::None) return {{"kind", "none"}};
  return {{"kind", "geometric_two_sided"},
          {"outer_rate", number(t.outer_rate)},
          {"inner_rate", t.inner_rate},
          {"window", {t.window_low, t.window_high}}};
}

inline TailModel tail_from_json(const json& doc) {
  const auto kind = doc.value("kind", std::string{});
  if (kind == "none") return TailModel::none();
  if (kind != "geometric_two_sided") throw ArgumentError("unknown tail kind '" + kind + "'");
  const double outer = doc.contains("outer_rate") && !doc["outer_rate"].is_null() ? doc["outer_rate"].get<double>()
                                                                                 : kInfinity;
  const auto& window = doc.at("window");
  return TailModel::geometric(outer, doc.value("inner_rate", 0.0), window.at(0).get<std::int64_t>(),
                              window.at(1).get<std::int64_t>());
}

inline json element_to_json(const BeurlingElement& e) {
  json doc = coefficients_to_json(e.coeffs);
  doc["weight"] = to_string(e.weight);
  doc["norm"] = e.norm;
  if (e.tail) doc["tail"] = tail_to_json(*e.tail);
  return doc;
}

/// Rebuilds the element; the stored norm is recomputed and must agree
/// with the document to 1e-12 relative.
inline BeurlingElement element_from_json(const json& doc) {
  if (!doc.contains("weight") || !doc["weight"].is_string()) throw ArgumentError("element JSON needs \"weight\"");
  std::optional<TailModel> tail;
  if (doc.contains("tail")) tail = tail_from_json(doc["tail"]);
  auto e = BeurlingElement::make(coefficients_from_json(doc), parse_weight(doc["weight"].get<std::string>()), tail);
  if (doc.contains("norm")) {
    const double stated = doc["norm"].get<double>();
    if (std::abs(stated - e.norm) > 1e-12 * std::max(1.0, std::abs(e.norm)))
      throw ArgumentError("element norm does not match its coefficients");
  }
  return e;
}

inline json radii_to_json(const RadiusPair& r) {
  return {{"rho2", r.rho2},
          {"rho1", r.rho1},
          {"exactness", r.exactness == RadiusPair::Exactness::ClosedForm ? "closed_form" : "numeric_limit"}};
}

inline json summability_to_json(const Summability& s) {
  json doc{{"verdict", to_string(s.verdict)}, {"ratio_pos", s.ratio_pos}, {"ratio_neg", s.ratio_neg}};
  if (s.verdict == Summability::Verdict::Convergent) {
    doc["bound"] = s.bound;
    doc["tail_estimate"] = s.tail_estimate;
  }
  if (s.witness)
    doc["witness"] = {{"side", s.witness->side},
                      {"index", s.witness->index},
                      {"last_term", s.witness->last_term},
                      {"ratio", s.witness->ratio},
                      {"terms_nondecreasing", s.witness->terms_nondecreasing}};
  if (!s.note.empty()) doc["note"] = s.note;
  return doc;
}

inline json nu_to_json(const NuConstruction& nu) {
  return {{"case", to_string(nu.which)},
          {"nu", to_string(nu.nu)},
          {"r1", nu.r1},
          {"r2", nu.r2},
          {"epsilon", nu.epsilon},
          {"safe_annulus", {nu.safe_annulus.inner, nu.safe_annulus.outer}},
          {"zero_outer", number(nu.zero_outer)},
          {"zero_inner", nu.zero_inner},
          {"omega_radii", radii_to_json(nu.omega_radii)}};
}

inline json wiener_to_json(const WienerReport& r) {
  json doc = nu_to_json(r.construction);
  doc["inverse"] = element_to_json(r.inverse);
  doc["summability_nu"] = summability_to_json(r.under_nu);
  doc["summability_omega"] = summability_to_json(r.under_omega);
  doc["clauses"] = {{"summable_under_nu", r.clause_summable},
                    {"constancy_matches", r.clause_constancy},
                    {"nu_below_omega", r.clause_dominated}};
  doc["residual"] = r.residual;
  doc["residual_bound"] = r.residual_bound;
  doc["passed"] = r.passed();
  return doc;
}

inline json chi_to_json(const ChiConstruction& c) {
  return {{"chi", to_string(c.chi)},
          {"r1", c.r1},
          {"r2", c.r2},
          {"nodes", c.per_node.size()},
          {"zero_outer", number(c.zero_outer)},
          {"zero_inner", c.zero_inner},
          {"omega_radii", radii_to_json(c.omega_radii)}};
}

inline json contour_to_json(const Contour& c) {
  if (c.kind == Contour::Kind::Circle)
    return {{"kind", "circle"}, {"center", complex_json(c.center)}, {"radius", c.radius}, {"nodes", c.size()}};
  json verts = json::array();
  for (cplx v : c.vertices) verts.push_back(complex_json(v));
  return {{"kind", "polyline"}, {"vertices", verts}, {"nodes", c.size()}};
}

}  // namespace beurling::io

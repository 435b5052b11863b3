#pragma once

// Weights on the integers: sub-multiplicative maps Z -> [1, inf) and the
// two radii of their Gelfand annulus,
//   rho1 = inf { w(n)^(1/n) : n >= 1 },   rho2 = sup { w(n)^(1/n) : n <= -1 }.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "beurling/error.hpp"

namespace beurling {

/// Relative tolerance used by every weight comparison.
inline constexpr double kWeightRelTol = 1e-12;
/// Default window for finite sub-multiplicativity checks.
inline constexpr std::int64_t kDefaultWeightWindow = 64;

class WeightSpec;

namespace family {
struct Const {};
/// e^{a|n|}
struct Exp {
  double a;
};
/// (1+|n|)^alpha
struct Poly {
  double alpha;
};
/// 1 + log(1+|n|)
struct Log {};
/// (1+|n|)^{sqrt(1+|n|)}
struct PolyPow {};
/// b^{|n|+c}
struct Geom {
  double b;
  double c;
};
/// r1^n for n >= 0, r2^n for n <= 0. The weights built for inverses and
/// functional calculus live here.
struct TwoSided {
  double r1;
  double r2;
};

struct TableData {
  std::int64_t low = 0;
  std::vector<double> values;
  std::shared_ptr<const WeightSpec> tail_pos;
  std::shared_ptr<const WeightSpec> tail_neg;
  std::string source;

  std::int64_t high() const { return low + static_cast<std::int64_t>(values.size()) - 1; }
};

/// Tabulated values on a contiguous window plus optional tail families.
struct Table {
  std::shared_ptr<const TableData> data;
};
}  // namespace family

/// Immutable description of a weight. Cheap to copy; tables share their
/// storage.
class WeightSpec {
public:
  using Family = std::variant<family::Const, family::Exp, family::Poly, family::Log,
                              family::PolyPow, family::Geom, family::TwoSided, family::Table>;

  WeightSpec() : family_(family::Const{}) {}

  static WeightSpec constant() { return WeightSpec(family::Const{}); }

  static WeightSpec exponential(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("exp weight needs a > 0");
    return WeightSpec(family::Exp{a});
  }

  static WeightSpec polynomial(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("poly weight needs alpha > 0");
    return WeightSpec(family::Poly{alpha});
  }

  static WeightSpec logarithmic() { return WeightSpec(family::Log{}); }

  static WeightSpec polypow() { return WeightSpec(family::PolyPow{}); }

  static WeightSpec geometric(double b, double c) {
    if (!(b > 1.0) || !std::isfinite(b)) throw ArgumentError("geom weight needs b > 1");
    if (!(c >= 0.0) || !std::isfinite(c)) throw ArgumentError("geom weight needs c >= 0");
    return WeightSpec(family::Geom{b, c});
  }

  static WeightSpec two_sided(double r1, double r2) {
    if (!(r1 >= 1.0) || !std::isfinite(r1)) throw ArgumentError("two-sided weight needs r1 >= 1");
    if (!(r2 > 0.0) || !(r2 <= 1.0)) throw ArgumentError("two-sided weight needs 0 < r2 <= 1");
    return WeightSpec(family::TwoSided{r1, r2});
  }

  /// Tabulated weight on [low, low + values.size() - 1]. Outside the window
  /// the tails take over; a missing tail makes those indices undefined.
  static WeightSpec table(std::int64_t low, std::vector<double> values,
                          std::optional<WeightSpec> tail_pos = std::nullopt,
                          std::optional<WeightSpec> tail_neg = std::nullopt,
                          std::string source = {}) {
    if (values.empty()) throw ArgumentError("table weight needs at least one value");
    for (double v : values)
      if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("table weight values must be finite and positive");
    auto data = std::make_shared<family::TableData>();
    data->low = low;
    data->values = std::move(values);
    if (tail_pos) data->tail_pos = std::make_shared<const WeightSpec>(*tail_pos);
    if (tail_neg) data->tail_neg = std::make_shared<const WeightSpec>(*tail_neg);
    data->source = std::move(source);
    return WeightSpec(family::Table{std::move(data)});
  }

  const Family& family() const noexcept { return family_; }

  template <class F>
  bool holds() const noexcept {
    return std::holds_alternative<F>(family_);
  }

private:
  explicit WeightSpec(Family f) : family_(std::move(f)) {}

  Family family_;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// log w(n). Evaluating in log space keeps the Fekete limits finite for
/// indices far beyond where w(n) itself overflows.
inline double weight_log_eval(const WeightSpec& w, std::int64_t n) {
  const double an = std::abs(static_cast<double>(n));
  return std::visit(
      overloaded{
          [](const family::Const&) { return 0.0; },
          [&](const family::Exp& e) { return e.a * an; },
          [&](const family::Poly& p) { return p.alpha * std::log1p(an); },
          [&](const family::Log&) { return std::log1p(std::log1p(an)); },
          [&](const family::PolyPow&) { return std::sqrt(1.0 + an) * std::log1p(an); },
          [&](const family::Geom& g) { return (an + g.c) * std::log(g.b); },
          [&](const family::TwoSided& t) {
            return static_cast<double>(n) * std::log(n >= 0 ? t.r1 : t.r2);
          },
          [&](const family::Table& t) {
            const auto& d = *t.data;
            if (n >= d.low && n <= d.high()) return std::log(d.values[static_cast<std::size_t>(n - d.low)]);
            const auto& tail = n > d.high() ? d.tail_pos : d.tail_neg;
            if (!tail)
              throw DomainError("table weight undefined at n=" + std::to_string(n) +
                                " (outside window, no tail rule)");
            return weight_log_eval(*tail, n);
          },
      },
      w.family());
}

/// w(n).
inline double weight_eval(const WeightSpec& w, std::int64_t n) {
  const double an = std::abs(static_cast<double>(n));
  return std::visit(
      overloaded{
          [](const family::Const&) { return 1.0; },
          [&](const family::Exp& e) { return std::exp(e.a * an); },
          [&](const family::Poly& p) { return std::pow(1.0 + an, p.alpha); },
          [&](const family::Log&) { return 1.0 + std::log1p(an); },
          [&](const family::PolyPow&) { return std::pow(1.0 + an, std::sqrt(1.0 + an)); },
          [&](const family::Geom& g) { return std::pow(g.b, an + g.c); },
          [&](const family::TwoSided& t) {
            return std::pow(n >= 0 ? t.r1 : t.r2, static_cast<double>(n));
          },
          [&](const family::Table& t) {
            const auto& d = *t.data;
            if (n >= d.low && n <= d.high()) return d.values[static_cast<std::size_t>(n - d.low)];
            const auto& tail = n > d.high() ? d.tail_pos : d.tail_neg;
            if (!tail)
              throw DomainError("table weight undefined at n=" + std::to_string(n) +
                                " (outside window, no tail rule)");
            return weight_eval(*tail, n);
          },
      },
      w.family());
}

struct SubmultiplicativeReport {
  enum class Violation { None, BelowOne, Submultiplicativity };

  bool ok = true;
  Violation kind = Violation::None;
  /// (m, n) of the first failure; for BelowOne the pair is (n, 0).
  std::optional<std::pair<std::int64_t, std::int64_t>> first_violation;
};

namespace detail {
/// 0, 1, -1, 2, -2, ..., window, -window
inline std::vector<std::int64_t> centred_order(std::int64_t window) {
  std::vector<std::int64_t> out{0};
  for (std::int64_t k = 1; k <= window; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}
}  // namespace detail

/// Verify w >= 1 and w(m+n) <= w(m) w(n) for |m|, |n| <= window. Indices
/// are visited in order of increasing magnitude, so the first violation
/// reported is the one closest to the origin.
inline SubmultiplicativeReport check_submultiplicative(const WeightSpec& w,
                                                       std::int64_t window = kDefaultWeightWindow) {
  if (window < 1) throw ArgumentError("check_submultiplicative: window must be >= 1");
  const double slack = std::log1p(kWeightRelTol);
  const auto order = detail::centred_order(window);
  SubmultiplicativeReport report;
  for (std::int64_t m : order) {
    const double lm = weight_log_eval(w, m);
    if (lm < -slack) {
      report.ok = false;
      report.kind = SubmultiplicativeReport::Violation::BelowOne;
      report.first_violation = std::pair{m, std::int64_t{0}};
      return report;
    }
    for (std::int64_t n : order) {
      if (weight_log_eval(w, m + n) > lm + weight_log_eval(w, n) + slack) {
        report.ok = false;
        report.kind = SubmultiplicativeReport::Violation::Submultiplicativity;
        report.first_violation = std::pair{m, n};
        return report;
      }
    }
  }
  return report;
}

struct RadiusPair {
  enum class Exactness { ClosedForm, NumericLimit };

  double rho2 = 1.0;
  double rho1 = 1.0;
  Exactness exactness = Exactness::ClosedForm;
};

/// Largest index probed by the numeric Fekete limit.
inline constexpr std::int64_t kFeketeHorizon = std::int64_t{1} << 60;

namespace detail {
inline bool defined_at(const WeightSpec& w, std::int64_t n) {
  const auto* t = std::get_if<family::Table>(&w.family());
  if (!t) return true;
  const auto& d = *t->data;
  if (n >= d.low && n <= d.high()) return true;
  return n > d.high() ? static_cast<bool>(d.tail_pos) : static_cast<bool>(d.tail_neg);
}

/// Probe indices 1..min(limit, 4096) densely, then powers of two up to
/// the horizon.
inline std::vector<std::int64_t> fekete_probes(const WeightSpec& w, std::int64_t horizon, int sign) {
  std::vector<std::int64_t> probes;
  for (std::int64_t k = 1; k <= std::min<std::int64_t>(horizon, 4096); ++k)
    if (defined_at(w, sign * k)) probes.push_back(sign * k);
  for (std::int64_t k = 8192; k > 0 && k <= horizon; k *= 2)
    if (defined_at(w, sign * k)) probes.push_back(sign * k);
  if (horizon > 4096 && defined_at(w, sign * horizon)) probes.push_back(sign * horizon);
  return probes;
}
}  // namespace detail

/// Numeric radii from the Fekete characterisation: sub-multiplicativity
/// makes inf_n w(n)^(1/n) equal to its limit, so the minimum over probed
/// n up to `horizon` is an upper estimate of rho1 that converges from above
/// (symmetrically for rho2).
inline RadiusPair fekete_estimate(const WeightSpec& w, std::int64_t horizon = kFeketeHorizon) {
  if (horizon < 1) throw ArgumentError("fekete_estimate: horizon must be >= 1");
  const auto pos = detail::fekete_probes(w, horizon, +1);
  const auto neg = detail::fekete_probes(w, horizon, -1);
  if (pos.empty() || neg.empty())
    throw DomainError("weight undefined on one side of the origin; radii cannot be estimated");
  double log_rho1 = std::numeric_limits<double>::infinity();
  for (std::int64_t n : pos) log_rho1 = std::min(log_rho1, weight_log_eval(w, n) / static_cast<double>(n));
  double log_rho2 = -std::numeric_limits<double>::infinity();
  for (std::int64_t n : neg) log_rho2 = std::max(log_rho2, weight_log_eval(w, n) / static_cast<double>(n));
  return {std::min(1.0, std::exp(log_rho2)), std::max(1.0, std::exp(log_rho1)),
          RadiusPair::Exactness::NumericLimit};
}

/// (rho2, rho1). Closed form for every analytic family; tables fall back
/// on fekete_estimate and are flagged NumericLimit.
inline RadiusPair rho_bounds(const WeightSpec& w) {
  using E = RadiusPair::Exactness;
  return std::visit(overloaded{
                        [](const family::Const&) { return RadiusPair{1.0, 1.0, E::ClosedForm}; },
                        [](const family::Exp& e) {
                          return RadiusPair{std::exp(-e.a), std::exp(e.a), E::ClosedForm};
                        },
                        [](const family::Poly&) { return RadiusPair{1.0, 1.0, E::ClosedForm}; },
                        [](const family::Log&) { return RadiusPair{1.0, 1.0, E::ClosedForm}; },
                        [](const family::PolyPow&) { return RadiusPair{1.0, 1.0, E::ClosedForm}; },
                        [](const family::Geom& g) { return RadiusPair{1.0 / g.b, g.b, E::ClosedForm}; },
                        [](const family::TwoSided& t) { return RadiusPair{t.r2, t.r1, E::ClosedForm}; },
                        [&](const family::Table&) { return fekete_estimate(w); },
                    },
                    w.family());
}

inline bool is_constant(const WeightSpec& w) {
  return std::visit(overloaded{
                        [](const family::Const&) { return true; },
                        [](const family::TwoSided& t) { return t.r1 == 1.0 && t.r2 == 1.0; },
                        [](const family::Table& t) {
                          const auto& d = *t.data;
                          for (double v : d.values)
                            if (v != d.values.front()) return false;
                          for (const auto* tail : {d.tail_pos.get(), d.tail_neg.get()})
                            if (tail && (!is_constant(*tail) || weight_eval(*tail, 0) != d.values.front()))
                              return false;
                          return true;
                        },
                        [](const auto&) { return false; },
                    },
                    w.family());
}

/// w1(n) <= w2(n) (up to the relative tolerance) for |n| <= window.
inline bool pointwise_leq(const WeightSpec& w1, const WeightSpec& w2, std::int64_t window) {
  if (window < 1) throw ArgumentError("pointwise_leq: window must be >= 1");
  const double slack = std::log1p(kWeightRelTol);
  for (std::int64_t n = -window; n <= window; ++n)
    if (weight_log_eval(w1, n) > weight_log_eval(w2, n) + slack) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Spec strings:
//   const | exp:<a> | poly:<alpha> | log | polypow | geom:<b>:<c>
//   | twosided:<r1>:<r2> | table:<path>

namespace detail {
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, std::string_view what) {
  std::string tmp(s);
  try {
    std::size_t used = 0;
    double v = std::stod(tmp, &used);
    if (used != tmp.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse " + std::string(what) + " from '" + tmp + "'");
  }
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}
}  // namespace detail

WeightSpec parse_weight(std::string_view spec);

/// Table weight from its JSON document:
///   {"values": [{"n": -2, "w": 4.0}, ...], "tail": "<spec>"}
/// with "tail_pos" / "tail_neg" as one-sided alternatives to "tail".
inline WeightSpec table_from_json(const nlohmann::json& doc, std::string source = {}) {
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array())
    throw ArgumentError("table weight JSON needs a \"values\" array");
  std::vector<std::pair<std::int64_t, double>> entries;
  for (const auto& e : doc["values"]) {
    if (!e.is_object() || !e.contains("n") || !e.contains("w") || !e["n"].is_number_integer() ||
        !e["w"].is_number())
      throw ArgumentError("table entry must look like {\"n\": <int>, \"w\": <real>}");
    entries.emplace_back(e["n"].get<std::int64_t>(), e["w"].get<double>());
  }
  if (entries.empty()) throw ArgumentError("table weight has no values");
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first)
      throw ArgumentError("table weight has duplicate index " + std::to_string(entries[i].first));
    if (entries[i].first != entries[i - 1].first + 1) throw ArgumentError("table weight window must be contiguous");
  }
  std::vector<double> values;
  for (const auto& [n, v] : entries) values.push_back(v);

  std::optional<WeightSpec> pos, neg;
  auto read_tail = [&](const char* key) -> std::optional<WeightSpec> {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc[key].is_string()) throw ArgumentError(std::string("table \"") + key + "\" must be a spec string");
    return parse_weight(doc[key].get<std::string>());
  };
  if (auto t = read_tail("tail")) pos = neg = t;
  if (auto t = read_tail("tail_pos")) pos = t;
  if (auto t = read_tail("tail_neg")) neg = t;
  return WeightSpec::table(entries.front().first, std::move(values), pos, neg, std::move(source));
}

inline WeightSpec load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open table weight file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("table weight file '" + path + "': " + e.what());
  }
  return table_from_json(doc, path);
}

inline WeightSpec parse_weight(std::string_view spec) {
  using detail::parse_double;
  const auto parts = detail::split(spec, ':');
  const auto head = parts.front();
  auto want = [&](std::size_t n) {
    if (parts.size() != n) throw ArgumentError("malformed weight spec '" + std::string(spec) + "'");
  };
  if (head == "const") return want(1), WeightSpec::constant();
  if (head == "log") return want(1), WeightSpec::logarithmic();
  if (head == "polypow") return want(1), WeightSpec::polypow();
  if (head == "exp") return want(2), WeightSpec::exponential(parse_double(parts[1], "exp rate"));
  if (head == "poly") return want(2), WeightSpec::polynomial(parse_double(parts[1], "poly exponent"));
  if (head == "geom")
    return want(3), WeightSpec::geometric(parse_double(parts[1], "geom base"), parse_double(parts[2], "geom shift"));
  if (head == "twosided")
    return want(3), WeightSpec::two_sided(parse_double(parts[1], "r1"), parse_double(parts[2], "r2"));
  if (head == "table") {
    if (parts.size() < 2 || spec.size() <= 6) throw ArgumentError("table weight spec needs a path");
    return load_table(std::string(spec.substr(6)));
  }
  throw ArgumentError("unknown weight family in '" + std::string(spec) + "'");
}

/// Inverse of parse_weight. Inline tables without a source path render
/// as "table:<inline>", which does not parse back.
inline std::string to_string(const WeightSpec& w) {
  using detail::format_double;
  return std::visit(
      overloaded{
          [](const family::Const&) { return std::string("const"); },
          [](const family::Exp& e) { return "exp:" + format_double(e.a); },
          [](const family::Poly& p) { return "poly:" + format_double(p.alpha); },
          [](const family::Log&) { return std::string("log"); },
          [](const family::PolyPow&) { return std::string("polypow"); },
          [](const family::Geom& g) { return "geom:" + format_double(g.b) + ":" + format_double(g.c); },
          [](const family::TwoSided& t) { return "twosided:" + format_double(t.r1) + ":" + format_double(t.r2); },
          [](const family::Table& t) {
            return "table:" + (t.data->source.empty() ? std::string("<inline>") : t.data->source);
          },
      },
      w.family());
}

}  // namespace beurling

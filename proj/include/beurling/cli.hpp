#pragma once

// Command-line front end. Exit codes: 0 success, 1 a remark check failed,
// 2 bad arguments, 3 a numerical precondition failed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "beurling/algebra.hpp"
#include "beurling/error.hpp"
#include "beurling/io.hpp"
#include "beurling/levy.hpp"
#include "beurling/remarks.hpp"
#include "beurling/series.hpp"
#include "beurling/weights.hpp"
#include "beurling/wiener.hpp"

namespace beurling::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

/// "a+bi", "a-bi", "a", "bi", "i", "-i".
inline cplx parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw ArgumentError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {detail::parse_double(s, "complex number"), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag_of = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return detail::parse_double(part, "imaginary part");
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  return {detail::parse_double(s.substr(0, split), "real part"), imag_of(s.substr(split))};
}

/// circle:<cx>:<cy>:<r>
inline Contour parse_contour(std::string_view spec, std::size_t q) {
  const auto parts = detail::split(spec, ':');
  if (parts.size() != 4 || parts[0] != "circle")
    throw ArgumentError("contour must look like circle:<cx>:<cy>:<r>");
  return circle_contour({detail::parse_double(parts[1], "contour cx"), detail::parse_double(parts[2], "contour cy")},
                        detail::parse_double(parts[3], "contour radius"), q);
}

/// BEURLING_DEFAULT_TRUNC when set, otherwise the library default.
inline std::int64_t default_truncation() {
  if (const char* env = std::getenv("BEURLING_DEFAULT_TRUNC")) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used == std::string_view(env).size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw ArgumentError("BEURLING_DEFAULT_TRUNC must be a positive integer");
  }
  return kDefaultTruncation;
}

namespace detail {
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ArgumentError("cannot write '" + path + "'");
  file << text;
}

inline std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

inline std::string fixed10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}
}  // namespace detail

/// Run one CLI invocation. argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beurling algebra toolkit: weights, weighted inversion, functional calculus"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string weight_spec = "const", f_path, out_path, csv_path, format = "text", phi_spec = "exp", contour_spec;
  std::string z_text;
  double eps = kDefaultEpsilon;
  std::optional<double> clearance;
  std::int64_t trunc = 0, window = kDefaultWeightWindow;
  std::size_t samples = kDefaultSamples, nodes = kDefaultNodes;
  int remark_id = 0;
  const auto formats = CLI::IsMember({"text", "json", "csv"});

  auto* rho = app.add_subcommand("rho", "Gelfand radii (rho2, rho1) of a weight");
  rho->add_option("--weight", weight_spec, "weight spec")->required();
  rho->add_option("--format", format)->check(formats);

  auto* check = app.add_subcommand("check-weight", "verify w >= 1 and sub-multiplicativity on a window");
  check->add_option("--weight", weight_spec, "weight spec")->required();
  check->add_option("--window", window, "check |m|, |n| <= window")->check(CLI::PositiveNumber);
  check->add_option("--format", format)->check(formats);

  auto* eval = app.add_subcommand("eval", "evaluate a Laurent polynomial at a point");
  eval->add_option("--f", f_path, "coefficient JSON")->required();
  eval->add_option("--z", z_text, "point, e.g. 1+0i")->required();
  eval->add_option("--format", format)->check(formats);

  auto* invert_cmd = app.add_subcommand("invert", "construct nu and invert f in l1(Z, nu)");
  invert_cmd->alias("wiener");
  invert_cmd->add_option("--f", f_path, "coefficient JSON")->required();
  invert_cmd->add_option("--weight", weight_spec, "weight spec");
  invert_cmd->add_option("--eps", eps, "shrink factor epsilon in (0,1)");
  invert_cmd->add_option("--trunc", trunc, "truncation N");
  invert_cmd->add_option("--samples", samples, "circle samples M (power of two)");
  invert_cmd->add_option("--out", out_path, "output file (stdout if omitted)");
  invert_cmd->add_option("--format", format)->check(formats);

  auto* levy = app.add_subcommand("levy", "phi(f) by contour integration of resolvents");
  levy->add_option("--f", f_path, "coefficient JSON")->required();
  levy->add_option("--phi", phi_spec, "exp|recip|square|id|rational:<P>:<Q>");
  levy->add_option("--weight", weight_spec, "weight spec");
  levy->add_option("--contour", contour_spec, "circle:<cx>:<cy>:<r> (default: built around the range of f)");
  levy->add_option("--Q", nodes, "quadrature nodes");
  levy->add_option("--clearance", clearance, "distance kept from the range of f");
  levy->add_option("--eps", eps, "shrink factor epsilon in (0,1)");
  levy->add_option("--trunc", trunc, "truncation N");
  levy->add_option("--samples", samples, "circle samples M (power of two)");
  levy->add_option("--out", out_path, "output file (stdout if omitted)");
  levy->add_option("--format", format)->check(formats);

  auto* remark = app.add_subcommand("remark", "reproduce one of the counterexample remarks");
  remark->add_option("id", remark_id, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  remark->add_option("--trunc", trunc, "truncation N");
  remark->add_option("--out", out_path, "JSON report file (stdout if omitted)");
  remark->add_option("--csv", csv_path, "write n, |c_n|, w(n), |c_n| w(n) for the remark's series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (trunc == 0) trunc = default_truncation();
    if (trunc < 1) throw ArgumentError("--trunc must be >= 1");

    if (rho->parsed()) {
      const auto w = parse_weight(weight_spec);
      const auto r = rho_bounds(w);
      if (format == "json") {
        auto doc = io::radii_to_json(r);
        doc["weight"] = to_string(w);
        out << detail::dump(doc);
      } else if (format == "csv") {
        out << "rho2,rho1\n" << detail::fixed10(r.rho2) << "," << detail::fixed10(r.rho1) << "\n";
      } else {
        out << detail::fixed10(r.rho2) << " " << detail::fixed10(r.rho1) << "\n";
      }
      return kOk;
    }

    if (check->parsed()) {
      const auto w = parse_weight(weight_spec);
      const auto rep = check_submultiplicative(w, window);
      if (format == "json") {
        nlohmann::json doc{{"weight", to_string(w)}, {"window", window}, {"ok", rep.ok}};
        if (rep.first_violation)
          doc["first_violation"] = {rep.first_violation->first, rep.first_violation->second};
        out << detail::dump(doc);
      } else if (rep.ok) {
        out << "ok\n";
      } else {
        out << "violation at (" << rep.first_violation->first << ", " << rep.first_violation->second << ")\n";
      }
      return rep.ok ? kOk : kCheckFailed;
    }

    if (eval->parsed()) {
      const auto f = io::load_coefficients(f_path);
      const cplx z = parse_complex(z_text);
      const cplx v = evaluate(f, z);
      if (format == "json") {
        out << detail::dump({{"z", io::complex_json(z)}, {"value", io::complex_json(v)}});
      } else if (v.imag() == 0.0) {
        out << io::json(v.real()).dump() << "\n";
      } else {
        out << io::json(v.real()).dump() << (v.imag() < 0 ? "" : "+") << io::json(v.imag()).dump() << "i\n";
      }
      return kOk;
    }

    if (invert_cmd->parsed()) {
      const auto f = io::load_coefficients(f_path);
      const auto w = parse_weight(weight_spec);
      const auto rep = wiener_report(f, w, eps, trunc, samples);
      if (format == "csv") {
        std::ostringstream csv;
        write_terms_csv(csv, rep.inverse, w);
        detail::emit(csv.str(), out_path, out);
      } else {
        auto doc = io::wiener_to_json(rep);
        doc["weight"] = to_string(w);
        doc["truncation"] = trunc;
        detail::emit(detail::dump(doc), out_path, out);
      }
      return kOk;
    }

    if (levy->parsed()) {
      const auto f = io::load_coefficients(f_path);
      const auto w = parse_weight(weight_spec);
      const auto phi = parse_phi(phi_spec);
      const auto contour =
          contour_spec.empty() ? build_contour(f, phi, nodes, clearance) : parse_contour(contour_spec, nodes);
      if (!contour_spec.empty()) {
        for (cplx s : phi.singularities)
          if (winding_number(contour, s) != 0 || distance_to_contour(contour, s) == 0.0)
            throw GeometryError("the contour encloses a singularity of " + phi.name);
        if (!contour_encloses_range(contour, f, 0.0))
          throw GeometryError("the contour does not enclose the range of f");
      }
      const auto chi = construct_chi(f, contour, w, eps, trunc, samples);
      CalculusOptions opt;
      opt.truncation = trunc;
      opt.samples = samples;
      const auto res = functional_calculus(f, phi, contour, chi, opt);
      if (format == "csv") {
        std::ostringstream csv;
        write_terms_csv(csv, res.element, w);
        detail::emit(csv.str(), out_path, out);
      } else {
        nlohmann::json doc{{"phi", phi_spec},
                           {"weight", to_string(w)},
                           {"truncation", trunc},
                           {"contour", io::contour_to_json(contour)},
                           {"chi", io::chi_to_json(chi)},
                           {"result", io::element_to_json(res.element)},
                           {"summability_chi", io::summability_to_json(res.summability)},
                           {"quadrature_delta", res.quadrature_delta},
                           {"boundary_error", res.boundary_error}};
        detail::emit(detail::dump(doc), out_path, out);
      }
      return kOk;
    }

    if (remark->parsed()) {
      RemarkOptions opt;
      opt.truncation = trunc;
      auto rep = run_remark(remark_id, opt);
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw ArgumentError("cannot write '" + csv_path + "'");
        if (remark_id == 2) {
          const LaurentPolynomial f{{0, 2.0}, {1, 1.0}};
          const auto w = parse_weight("poly:2");
          write_terms_csv(csv, invert(f, construct_nu(f, w), trunc), w);
        } else {
          const auto w = remark_id == 1 ? WeightSpec::exponential(1.0) : WeightSpec::geometric(2.0, 2.0);
          const LaurentPolynomial f = remark_id == 1 ? LaurentPolynomial{{0, 2.0}, {1, -1.0}}
                                                     : LaurentPolynomial{{1, 2.0}, {2, 1.0}};
          write_terms_csv(csv, invert(f, construct_nu(f, w, remark_id == 1 ? 0.05 : 0.5), trunc), w);
        }
        rep.artifacts.push_back(csv_path);
      }
      if (!out_path.empty()) rep.artifacts.push_back(out_path);
      detail::emit(detail::dump(remark_to_json(rep)), out_path, out);
      if (const auto* bad = rep.first_failure()) {
        err << "remark " << remark_id << ": check '" << bad->name << "' failed\n";
        return kCheckFailed;
      }
      return kOk;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace beurling::cli

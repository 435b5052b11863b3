#pragma once

// Holomorphic functional calculus in a Beurling algebra:
//   phi(f) = (1 / 2 pi i) \oint_C phi(lambda) (lambda - f)^{-1} d lambda,
// with every resolvent measured in a weight chi <= w built from the
// resolvent weights at the quadrature nodes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beurling/algebra.hpp"
#include "beurling/error.hpp"
#include "beurling/series.hpp"
#include "beurling/weights.hpp"
#include "beurling/wiener.hpp"

namespace beurling {

inline constexpr std::size_t kDefaultNodes = 256;
/// Points of the unit circle used to trace the range of f.
inline constexpr std::size_t kRangeSamples = 1024;

// ---------------------------------------------------------------------------
// Holomorphic functions

/// A function assumed holomorphic on C minus `singularities`. Holomorphy
/// itself is taken on trust; only the quadrature diagnostics can expose a
/// bad declaration.
struct HolomorphicFn {
  enum class Kind { Identity, Reciprocal, Square, Exp, Rational, Custom };

  Kind kind = Kind::Identity;
  std::string name;
  std::function<cplx(cplx)> evaluator;
  std::vector<cplx> singularities;
  /// Ascending-power coefficients of numerator and denominator (Rational).
  std::vector<cplx> numerator, denominator;

  cplx operator()(cplx z) const { return evaluator(z); }

  static HolomorphicFn identity() { return {Kind::Identity, "id", [](cplx z) { return z; }, {}, {}, {}}; }
  static HolomorphicFn reciprocal() {
    return {Kind::Reciprocal, "recip", [](cplx z) { return 1.0 / z; }, {cplx{0.0}}, {}, {}};
  }
  static HolomorphicFn square() { return {Kind::Square, "square", [](cplx z) { return z * z; }, {}, {}, {}}; }
  static HolomorphicFn exponential() {
    return {Kind::Exp, "exp", [](cplx z) { return std::exp(z); }, {}, {}, {}};
  }

  /// P(z) / Q(z) with coefficients in ascending powers.
  static HolomorphicFn rational(std::vector<cplx> p, std::vector<cplx> q) {
    auto trim = [](std::vector<cplx>& v) {
      while (!v.empty() && v.back() == 0.0) v.pop_back();
    };
    trim(p);
    trim(q);
    if (q.empty()) throw ArgumentError("rational phi needs a nonzero denominator");
    if (p.empty()) p = {0.0};
    auto horner = [](const std::vector<cplx>& c, cplx z) {
      cplx acc = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
      return acc;
    };
    std::vector<cplx> poles;
    if (q.size() > 1) {
      std::size_t shift = 0;
      while (q[shift] == 0.0) ++shift;
      poles.assign(shift, cplx{0.0});
      auto rest = detail::polynomial_roots(std::vector<cplx>(q.begin() + static_cast<std::ptrdiff_t>(shift), q.end()));
      poles.insert(poles.end(), rest.begin(), rest.end());
    }
    auto eval = [p, q, horner](cplx z) { return horner(p, z) / horner(q, z); };
    return {Kind::Rational, "rational", eval, std::move(poles), std::move(p), std::move(q)};
  }

  static HolomorphicFn custom(std::string name, std::function<cplx(cplx)> fn, std::vector<cplx> singularities = {}) {
    return {Kind::Custom, std::move(name), std::move(fn), std::move(singularities), {}, {}};
  }
};

/// exp | recip | square | id | rational:<p0,p1,...>:<q0,q1,...>
inline HolomorphicFn parse_phi(std::string_view spec) {
  if (spec == "exp") return HolomorphicFn::exponential();
  if (spec == "recip") return HolomorphicFn::reciprocal();
  if (spec == "square") return HolomorphicFn::square();
  if (spec == "id") return HolomorphicFn::identity();
  const auto parts = detail::split(spec, ':');
  if (parts.size() == 3 && parts[0] == "rational") {
    auto coeffs = [](std::string_view list) {
      std::vector<cplx> out;
      for (auto item : detail::split(list, ',')) out.emplace_back(detail::parse_double(item, "rational coefficient"));
      return out;
    };
    return HolomorphicFn::rational(coeffs(parts[1]), coeffs(parts[2]));
  }
  throw ArgumentError("unknown phi '" + std::string(spec) + "'");
}

// ---------------------------------------------------------------------------
// Contours

/// A positively oriented closed curve discretised for quadrature: node
/// lambda_j carries weight w_j approximating d lambda / (2 pi i), so
/// (1/2 pi i) \oint g = sum_j w_j g(lambda_j).
struct Contour {
  enum class Kind { Circle, Polyline };

  Kind kind = Kind::Circle;
  cplx center = 0.0;
  double radius = 1.0;
  std::vector<cplx> vertices;
  std::vector<cplx> nodes;
  std::vector<cplx> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Trapezoid rule on |lambda - center| = radius.
inline Contour circle_contour(cplx center, double radius, std::size_t q) {
  if (!(radius > 0.0)) throw ArgumentError("contour radius must be positive");
  if (q < 4) throw ArgumentError("contour needs at least 4 nodes");
  Contour c;
  c.kind = Contour::Kind::Circle;
  c.center = center;
  c.radius = radius;
  for (std::size_t j = 0; j < q; ++j) {
    const cplx e = detail::unit_root(j, q);
    c.nodes.push_back(center + radius * e);
    c.weights.push_back(radius * e / static_cast<double>(q));
  }
  return c;
}

namespace detail {
/// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n.
inline void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? z : p1, pm = n == 1 ? 1.0 : p0;
      dp = static_cast<double>(n) * (z * pn - pm) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}
}  // namespace detail

/// Composite Gauss-Legendre on a closed polygon (vertices in
/// counter-clockwise order), about q / segments nodes per edge.
inline Contour polyline_contour(std::vector<cplx> vertices, std::size_t q) {
  if (vertices.size() < 3) throw ArgumentError("polyline contour needs at least 3 vertices");
  double area2 = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const cplx a = vertices[i], b = vertices[(i + 1) % vertices.size()];
    area2 += a.real() * b.imag() - b.real() * a.imag();
  }
  if (!(area2 > 0.0)) throw ArgumentError("polyline contour must be counter-clockwise and non-degenerate");
  const std::size_t per = std::max<std::size_t>(2, q / vertices.size());
  std::vector<double> gx, gw;
  detail::gauss_legendre(per, gx, gw);
  Contour c;
  c.kind = Contour::Kind::Polyline;
  c.vertices = std::move(vertices);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const cplx a = c.vertices[i], b = c.vertices[(i + 1) % c.vertices.size()];
    const cplx half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < per; ++k) {
      c.nodes.push_back(mid + gx[k] * half);
      c.weights.push_back(gw[k] * half / cplx(0.0, 2.0 * std::numbers::pi));
    }
  }
  c.center = 0.0;
  for (cplx v : c.vertices) c.center += v;
  c.center /= static_cast<double>(c.vertices.size());
  return c;
}

namespace detail {
inline double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double t = len2 == 0.0 ? 0.0 : ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}
}  // namespace detail

inline double distance_to_contour(const Contour& c, cplx p) {
  if (c.kind == Contour::Kind::Circle) return std::abs(std::abs(p - c.center) - c.radius);
  double best = kInfinity;
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    best = std::min(best, detail::segment_distance(p, c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]));
  return best;
}

/// Winding number of the contour around p (p off the contour).
inline int winding_number(const Contour& c, cplx p) {
  if (c.kind == Contour::Kind::Circle) return std::abs(p - c.center) < c.radius ? 1 : 0;
  double total = 0.0;
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    total += std::arg((c.vertices[(i + 1) % c.vertices.size()] - p) / (c.vertices[i] - p));
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// f(e^{it}) on an equispaced grid: a discrete picture of the range K.
inline std::vector<cplx> sampled_range(const LaurentPolynomial& f, std::size_t count = kRangeSamples) {
  std::vector<cplx> k(count);
  for (std::size_t j = 0; j < count; ++j) k[j] = evaluate(f, detail::unit_root(j, count));
  return k;
}

/// True when the contour winds once around every sampled point of K and
/// keeps at least `clearance` away from it.
inline bool contour_encloses_range(const Contour& c, const LaurentPolynomial& f, double clearance) {
  for (cplx k : sampled_range(f)) {
    if (winding_number(c, k) != 1) return false;
    if (distance_to_contour(c, k) < clearance * (1.0 - 1e-9)) return false;
  }
  return true;
}

/// Circle around the sampled range K of f: centred at the mean of the
/// samples, radius max distance plus `clearance` (default one tenth of the
/// diameter of K, floored at 1e-3 * max(1, |center|) so a constant f gets a
/// small circle). Fails when a singularity of phi lies inside the circle
/// or within `clearance` outside it.
inline Contour build_contour(const LaurentPolynomial& f, const HolomorphicFn& phi, std::size_t q = kDefaultNodes,
                             std::optional<double> clearance = std::nullopt) {
  const auto k = sampled_range(f);
  cplx center = 0.0;
  for (cplx v : k) center += v;
  center /= static_cast<double>(k.size());
  double reach = 0.0, diameter = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    reach = std::max(reach, std::abs(k[i] - center));
    for (std::size_t j = i + 1; j < k.size(); ++j) diameter = std::max(diameter, std::abs(k[i] - k[j]));
  }
  double gap = clearance.value_or(0.1 * diameter);
  if (clearance && !(*clearance > 0.0)) throw ArgumentError("clearance must be positive");
  gap = std::max(gap, 1e-3 * std::max(1.0, std::abs(center)));
  const double radius = reach + gap;
  for (cplx s : phi.singularities) {
    const double d = std::abs(s - center);
    if (d <= reach)
      throw GeometryError("no circular contour: the range of f surrounds a singularity of " + phi.name + " at " +
                          detail::format_double(s.real()) + (s.imag() < 0 ? "" : "+") +
                          detail::format_double(s.imag()) + "i");
    if (d < radius + gap)
      throw GeometryError("no circular contour with clearance " + detail::format_double(gap) +
                          ": a singularity of " + phi.name + " sits too close to the range of f");
  }
  return circle_contour(center, radius, q);
}

// ---------------------------------------------------------------------------
// Resolvents

struct Resolvent {
  cplx lambda;
  /// Coefficients of (lambda - f)^{-1}, measured in eta.
  BeurlingElement element;
  NuConstruction eta;
};

/// (lambda 1 - f)^{-1} in l1(Z, eta), where eta is the weight built for
/// lambda 1 - f.
inline Resolvent resolvent(const LaurentPolynomial& f, cplx lambda, const WeightSpec& w,
                           double epsilon = kDefaultEpsilon, std::int64_t truncation = kDefaultTruncation,
                           std::size_t samples = kDefaultSamples) {
  const auto shifted = lambda * LaurentPolynomial::identity() - f;
  double gap = kInfinity;
  for (cplx k : sampled_range(f)) gap = std::min(gap, std::abs(lambda - k));
  if (shifted.is_zero() || gap <= kConditioningFloor * (1.0 + std::abs(lambda)))
    throw NumericalError("singular resolvent: lambda lies on the range of f");
  NuConstruction eta;
  try {
    eta = construct_nu(shifted, w, epsilon);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("singular resolvent: ") + e.what());
  }
  return {lambda, invert(shifted, eta, truncation, samples), eta};
}

/// ||R_mu||_eta^{-1}: lambda - f stays invertible for |lambda - mu| below it.
inline double neumann_radius(const LaurentPolynomial& f, cplx mu, const WeightSpec& w,
                             double epsilon = kDefaultEpsilon, std::int64_t truncation = kDefaultTruncation,
                             std::size_t samples = kDefaultSamples) {
  return 1.0 / norm_with_tail(resolvent(f, mu, w, epsilon, truncation, samples).element);
}

/// R_lambda = sum_{k < terms} (mu - lambda)^k R_mu^{k+1}, each power kept
/// on the window [-truncation, truncation].
inline LaurentPolynomial neumann_resolvent(const LaurentPolynomial& r_mu, cplx mu, cplx lambda, int terms,
                                           std::int64_t truncation) {
  if (terms < 1) throw ArgumentError("neumann_resolvent needs at least one term");
  LaurentPolynomial power = r_mu.truncated(-truncation, truncation);
  LaurentPolynomial sum = power;
  const cplx step = mu - lambda;
  for (int k = 1; k < terms; ++k) {
    power = step * convolve_truncated(power, r_mu, -truncation, truncation);
    sum = sum + power;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// chi

struct NodeWeight {
  cplx lambda;
  double resolvent_norm = 0.0;
  double r2 = 1.0;
  double r1 = 1.0;
  double zero_inner = 0.0;
  double zero_outer = kInfinity;
};

struct ChiConstruction {
  WeightSpec chi;
  double r1 = 1.0;
  double r2 = 1.0;
  std::vector<NodeWeight> per_node;
  /// min / max over nodes of the zero moduli of lambda - f bracketing the
  /// unit circle.
  double zero_outer = kInfinity;
  double zero_inner = 0.0;
  RadiusPair omega_radii;
  double epsilon = kDefaultEpsilon;
};

/// Build eta at every node of the contour and intersect their annuli:
/// r2 = max of the inner radii, r1 = min of the outer ones. chi = w when both
/// radii of w are 1, otherwise chi(n) = r1^n (n >= 0), r2^n (n <= 0).
inline ChiConstruction construct_chi(const LaurentPolynomial& f, const Contour& contour, const WeightSpec& w,
                                     double epsilon = kDefaultEpsilon, std::int64_t truncation = kDefaultTruncation,
                                     std::size_t samples = kDefaultSamples) {
  if (contour.nodes.empty()) throw ArgumentError("contour has no nodes");
  ChiConstruction out;
  out.epsilon = epsilon;
  out.omega_radii = rho_bounds(w);
  out.r1 = kInfinity;
  out.r2 = 0.0;
  for (std::size_t j = 0; j < contour.nodes.size(); ++j) {
    const cplx lambda = contour.nodes[j];
    Resolvent res;
    try {
      res = resolvent(f, lambda, w, epsilon, truncation, samples);
    } catch (const NumericalError& e) {
      throw NumericalError("resolvent failed at node " + std::to_string(j) + " (lambda = " +
                           detail::format_double(lambda.real()) + (lambda.imag() < 0 ? "" : "+") +
                           detail::format_double(lambda.imag()) + "i): " + e.what());
    }
    NodeWeight node{lambda,          norm_with_tail(res.element), res.eta.r2, res.eta.r1,
                    res.eta.zero_inner, res.eta.zero_outer};
    out.r1 = std::min(out.r1, node.r1);
    out.r2 = std::max(out.r2, node.r2);
    out.zero_outer = std::min(out.zero_outer, node.zero_outer);
    out.zero_inner = std::max(out.zero_inner, node.zero_inner);
    out.per_node.push_back(node);
  }
  const auto& rho = out.omega_radii;
  out.chi = (rho.rho2 == 1.0 && rho.rho1 == 1.0) ? w : WeightSpec::two_sided(out.r1, out.r2);
  if (!(rho.rho2 <= out.r2 && out.r2 <= 1.0 && 1.0 <= out.r1 && out.r1 <= rho.rho1))
    throw NumericalError("chi radii escaped the Gelfand annulus of the weight");
  return out;
}

// ---------------------------------------------------------------------------
// phi(f)

struct CalculusOptions {
  std::int64_t truncation = kDefaultTruncation;
  std::size_t samples = kDefaultSamples;
  /// Largest tolerated coefficient change between the full and the
  /// doubled quadrature, relative to max(1, max |c_n|).
  double quadrature_tol = 1e-8;
  /// Points of the unit circle used for the boundary check.
  std::size_t boundary_points = 256;
};

struct CalculusResult {
  BeurlingElement element;
  Summability summability;
  /// max_n |c_n(Q) - c_n(2Q)|.
  double quadrature_delta = 0.0;
  /// max_t |result(e^{it}) - phi(f(e^{it}))|.
  double boundary_error = 0.0;
};

namespace detail {
/// Pairwise sum of per-node coefficient vectors, selected by stride.
inline std::vector<cplx> pairwise_sum(const std::vector<std::vector<cplx>>& parts, std::size_t begin,
                                      std::size_t end, std::size_t stride) {
  const std::size_t count = (end - begin + stride - 1) / stride;
  if (count == 1) return parts[begin];
  const std::size_t mid = begin + (count / 2) * stride;
  auto left = pairwise_sum(parts, begin, mid, stride);
  const auto right = pairwise_sum(parts, mid, end, stride);
  for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
  return left;
}

/// w_j phi(lambda_j) [R_{lambda_j}]_n for n in [-N, N], every resolvent
/// read off the circles |z| = r1 and |z| = r2 of chi.
inline std::vector<std::vector<cplx>> weighted_resolvents(const LaurentPolynomial& f, const HolomorphicFn& phi,
                                                          const Contour& contour, const ChiConstruction& chi,
                                                          std::int64_t truncation, std::size_t samples) {
  auto values_on = [&](double r) {
    std::vector<cplx> fv(samples);
    for (std::size_t k = 0; k < samples; ++k) fv[k] = evaluate(f, r * unit_root(k, samples));
    return fv;
  };
  const auto f_out = values_on(chi.r1);
  const auto f_in = chi.r2 == chi.r1 ? f_out : values_on(chi.r2);
  std::vector<std::vector<cplx>> parts;
  parts.reserve(contour.size());
  for (std::size_t j = 0; j < contour.size(); ++j) {
    const cplx lambda = contour.nodes[j];
    const cplx scale = contour.weights[j] * phi(lambda);
    auto coeffs_from = [&](const std::vector<cplx>& fv, double r, std::int64_t lo, std::int64_t hi) {
      CircleSamples s{r, std::vector<cplx>(samples)};
      for (std::size_t k = 0; k < samples; ++k) {
        const cplx gap = lambda - fv[k];
        if (std::abs(gap) < kConditioningFloor) throw NumericalError("contour node meets the range of f on the chi annulus");
        s.values[k] = 1.0 / gap;
      }
      return coefficients_from_samples(s, lo, hi);
    };
    const auto pos = coeffs_from(f_out, chi.r1, 0, truncation);
    const auto neg = coeffs_from(f_in, chi.r2, -truncation, -1);
    std::vector<cplx> dense(static_cast<std::size_t>(2 * truncation + 1));
    for (std::int64_t n = -truncation; n <= truncation; ++n)
      dense[static_cast<std::size_t>(n + truncation)] = scale * (n >= 0 ? pos[n] : neg[n]);
    parts.push_back(std::move(dense));
  }
  return parts;
}
}  // namespace detail

/// phi(f) by quadrature of phi(lambda) R_lambda over the contour. The
/// result lives in l1(Z, chi); its tail decays at the rates of chi's
/// bracketing zero moduli. Convergence is judged against the rule with
/// twice the nodes: on circles the extra nodes interleave the given ones,
/// on polylines the contour is rebuilt with 2Q nodes.
inline CalculusResult functional_calculus(const LaurentPolynomial& f, const HolomorphicFn& phi,
                                          const Contour& contour, const ChiConstruction& chi,
                                          const CalculusOptions& opt = {}) {
  if (contour.size() < 4) throw ArgumentError("contour needs at least 4 nodes");
  if (static_cast<std::int64_t>(opt.samples) < 2 * (opt.truncation + 1))
    throw ArgumentError("sample count must be at least 2 * (truncation + 1)");
  const std::int64_t n = opt.truncation;
  const std::size_t q = contour.size();
  const Contour fine = contour.kind == Contour::Kind::Circle ? circle_contour(contour.center, contour.radius, 2 * q)
                                                             : polyline_contour(contour.vertices, 2 * q);
  for (cplx lambda : fine.nodes) {
    const cplx v = phi(lambda);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("phi is not finite on the contour");
  }
  const auto parts = detail::weighted_resolvents(f, phi, contour, chi, n, opt.samples);
  const auto full = detail::pairwise_sum(parts, 0, parts.size(), 1);

  std::vector<cplx> refined;
  if (contour.kind == Contour::Kind::Circle) {
    Contour odd = fine;
    odd.nodes.clear();
    odd.weights.clear();
    for (std::size_t j = 1; j < fine.size(); j += 2) {
      odd.nodes.push_back(fine.nodes[j]);
      odd.weights.push_back(fine.weights[j]);
    }
    const auto odd_parts = detail::weighted_resolvents(f, phi, odd, chi, n, opt.samples);
    refined = detail::pairwise_sum(odd_parts, 0, odd_parts.size(), 1);
    for (std::size_t i = 0; i < refined.size(); ++i) refined[i] += 0.5 * full[i];
  } else {
    const auto fine_parts = detail::weighted_resolvents(f, phi, fine, chi, n, opt.samples);
    refined = detail::pairwise_sum(fine_parts, 0, fine_parts.size(), 1);
  }

  CalculusResult out;
  double scale = 1.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    out.quadrature_delta = std::max(out.quadrature_delta, std::abs(full[i] - refined[i]));
    scale = std::max(scale, std::abs(full[i]));
  }
  if (out.quadrature_delta > opt.quadrature_tol * scale)
    throw NumericalError("quadrature did not converge: doubling the nodes moves a coefficient by " +
                         detail::format_double(out.quadrature_delta));

  out.element = BeurlingElement::make(LaurentPolynomial::from_dense(-n, full), chi.chi,
                                      TailModel::geometric(chi.zero_outer, chi.zero_inner, -n, n));
  out.summability = classify_summability(out.element);
  for (std::size_t k = 0; k < opt.boundary_points; ++k) {
    const cplx z = detail::unit_root(k, opt.boundary_points);
    out.boundary_error =
        std::max(out.boundary_error, std::abs(evaluate(out.element.coeffs, z) - phi(evaluate(f, z))));
  }
  return out;
}

}  // namespace beurling

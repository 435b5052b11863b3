#pragma once

// Beurling algebra l1(Z, w): weighted norms, the Gelfand annulus, and
// summability verdicts for coefficient sequences known only up to a
// truncation window plus a geometric tail model.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "beurling/error.hpp"
#include "beurling/series.hpp"
#include "beurling/weights.hpp"

namespace beurling {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// sum_n |a_n| w(n) over the finite support.
inline double weighted_norm(const LaurentPolynomial& a, const WeightSpec& w) {
  double total = 0.0;
  for (const auto& [n, c] : a.terms()) total += std::abs(c) * weight_eval(w, n);
  return total;
}

/// Closed annulus inner <= |z| <= outer.
struct Annulus {
  double inner = 1.0;
  double outer = 1.0;

  bool contains(cplx z, double rel_tol = 0.0) const {
    const double r = std::abs(z);
    return r >= inner * (1.0 - rel_tol) && r <= outer * (1.0 + rel_tol);
  }
};

/// The annulus rho2 <= |z| <= rho1 on which A(w) is realised.
inline Annulus gelfand_annulus(const WeightSpec& w) {
  const auto rho = rho_bounds(w);
  return {rho.rho2, rho.rho1};
}

struct ModulusMinimum {
  double value = 0.0;
  cplx argmin = 0.0;
};

/// Grid defaults: log-spaced radii and equally spaced angles.
inline constexpr int kDefaultRadialGrid = 33;
inline constexpr int kDefaultAngularGrid = 1024;

/// Minimum of |f| over the radii x angles grid on `ann`. Radii are
/// log-spaced with both edges included (a single radius sits at the
/// geometric mean), so doubling the angles and taking 2R-1 radii refines
/// the grid. Any exact zero of f inside the annulus overrides the grid
/// with value 0.
inline ModulusMinimum min_modulus(const LaurentPolynomial& f, const Annulus& ann, int radii = kDefaultRadialGrid,
                                  int angles = kDefaultAngularGrid) {
  if (radii < 1 || angles < 1) throw ArgumentError("min_modulus: grid sizes must be >= 1");
  if (!(ann.inner > 0.0) || ann.outer < ann.inner) throw ArgumentError("min_modulus: malformed annulus");
  if (f.is_zero()) return {0.0, cplx{ann.inner}};

  for (cplx z : zeros(f))
    if (ann.contains(z, 1e-8)) return {0.0, z};

  ModulusMinimum best{kInfinity, 0.0};
  const double log_in = std::log(ann.inner), log_out = std::log(ann.outer);
  for (int i = 0; i < radii; ++i) {
    const double r = radii == 1 ? std::exp(0.5 * (log_in + log_out))
                                : std::exp(log_in + (log_out - log_in) * i / (radii - 1));
    for (int k = 0; k < angles; ++k) {
      const cplx z = r * detail::unit_root(static_cast<std::size_t>(k), static_cast<std::size_t>(angles));
      const double v = std::abs(evaluate(f, z));
      if (v < best.value) best = {v, z};
    }
  }
  return best;
}

/// Decay model for coefficients beyond the stored window:
/// |c_n| <~ outer_rate^{-n} as n -> +inf and |c_n| <~ inner_rate^{|n|} as
/// n -> -inf. An infinite outer rate (or zero inner rate) means that side
/// has no tail at all. Kind None marks an exactly finitely supported
/// element.
struct TailModel {
  enum class Kind { None, GeometricTwoSided };

  Kind kind = Kind::None;
  double outer_rate = kInfinity;
  double inner_rate = 0.0;
  /// Index window the stored coefficients cover.
  std::int64_t window_low = 0;
  std::int64_t window_high = 0;

  static TailModel none() { return {}; }

  static TailModel geometric(double outer, double inner, std::int64_t lo, std::int64_t hi) {
    if (!(outer > 0.0) || !(inner >= 0.0)) throw ArgumentError("tail rates must be positive");
    return {Kind::GeometricTwoSided, outer, inner, lo, hi};
  }
};

/// Coefficients paired with the weight they are measured in.
struct BeurlingElement {
  LaurentPolynomial coeffs;
  WeightSpec weight;
  /// Exact weighted norm of the stored coefficients.
  double norm = 0.0;
  std::optional<TailModel> tail;

  static BeurlingElement make(LaurentPolynomial c, WeightSpec w, std::optional<TailModel> tail = TailModel::none()) {
    const double nrm = weighted_norm(c, w);
    return {std::move(c), std::move(w), nrm, tail};
  }

  BeurlingElement reweighted(const WeightSpec& w) const { return make(coeffs, w, tail); }
};

struct DivergenceWitness {
  /// +1 for the n -> +inf side, -1 for n -> -inf.
  int side = +1;
  /// First index at which the partial sums of |c_n| w(n) pass the cap
  /// (extrapolated from the tail model when beyond the stored window).
  std::int64_t index = 0;
  double last_term = 0.0;
  double ratio = 1.0;
  bool terms_nondecreasing = false;
};

struct Summability {
  enum class Verdict { Convergent, Divergent, Inconclusive };

  Verdict verdict = Verdict::Inconclusive;
  /// Stored norm plus modelled tails (Convergent only).
  double bound = kInfinity;
  double tail_estimate = 0.0;
  /// Root-test ratios weight-rate / decay-rate on each side (0 when the
  /// side has no tail).
  double ratio_pos = 0.0;
  double ratio_neg = 0.0;
  std::optional<DivergenceWitness> witness;
  std::string note;
};

inline const char* to_string(Summability::Verdict v) {
  switch (v) {
    case Summability::Verdict::Convergent: return "convergent";
    case Summability::Verdict::Divergent: return "divergent";
    case Summability::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct SummabilityOptions {
  /// Partial-sum level that certifies divergence.
  double divergence_cap = 1e12;
  /// Root-test ratios within this distance of 1 are treated as borderline.
  double ratio_tol = 1e-9;
  /// Trailing coefficients used to fit the amplitude of the geometric tail.
  int envelope_terms = 8;
};

namespace detail {
struct SideVerdict {
  Summability::Verdict verdict = Summability::Verdict::Convergent;
  double ratio = 0.0;
  double tail = 0.0;
  std::optional<DivergenceWitness> witness;
};

/// Sum over n beyond the window of K s^{-|n|} w(n), the terms the
/// geometric model predicts. K is fitted to the last stored coefficients;
/// log_decay is log(1/s) per step away from the origin (negative).
inline double model_tail(const BeurlingElement& e, std::int64_t edge, int side, double log_decay,
                         const SummabilityOptions& opt) {
  double log_k = -kInfinity;
  for (std::int64_t j = 0; j < opt.envelope_terms; ++j) {
    const std::int64_t n = edge - side * j;
    if (side * n < 0) break;
    const double a = std::abs(e.coeffs[n]);
    if (a > 0.0) log_k = std::max(log_k, std::log(a) - log_decay * static_cast<double>(side * n));
  }
  if (std::isinf(log_k)) return 0.0;
  double sum = 0.0;
  for (std::int64_t step = 1; step <= (std::int64_t{1} << 22); ++step) {
    const std::int64_t n = edge + side * step;
    const double term =
        std::exp(log_k + log_decay * static_cast<double>(side * n) + weight_log_eval(e.weight, n));
    sum += term;
    if (step >= 16 && term <= 1e-17 * sum) return sum;
  }
  return sum;
}

/// terms[k] is |c_n| w(n) for the k-th index moving away from the origin;
/// index_of(k) maps back to n.
template <class IndexOf, class TailOf>
SideVerdict classify_side(const std::vector<double>& terms, double ratio, int side, IndexOf index_of, TailOf tail_of,
                          const SummabilityOptions& opt) {
  SideVerdict out;
  out.ratio = ratio;
  if (ratio == 0.0) return out;
  if (terms.empty()) {
    out.verdict = Summability::Verdict::Inconclusive;
    return out;
  }
  const std::size_t last = terms.size() - 1;

  if (ratio < 1.0 - opt.ratio_tol) {
    out.tail = tail_of();
    return out;
  }

  bool nondecreasing = true;
  for (std::size_t j = terms.size() / 2 + 1; j <= last; ++j)
    if (terms[j] < terms[j - 1] * (1.0 - opt.ratio_tol)) nondecreasing = false;
  if (ratio <= 1.0 + opt.ratio_tol && !nondecreasing) {
    out.verdict = Summability::Verdict::Inconclusive;
    return out;
  }

  DivergenceWitness wit;
  wit.side = side;
  wit.ratio = ratio;
  wit.last_term = terms[last];
  wit.terms_nondecreasing = nondecreasing;
  double partial = 0.0;
  for (std::size_t j = 0; j <= last; ++j) {
    partial += terms[j];
    if (partial > opt.divergence_cap) {
      wit.index = index_of(static_cast<std::int64_t>(j));
      out.verdict = Summability::Verdict::Divergent;
      out.witness = wit;
      return out;
    }
  }
  if (!(wit.last_term > 0.0)) {
    out.verdict = Summability::Verdict::Inconclusive;
    return out;
  }
  // Extend with terms last_term * q^k, k >= 1, until the cap is strictly passed.
  const double deficit = opt.divergence_cap - partial;
  const double q = std::max(ratio, 1.0);
  double steps;
  if (q <= 1.0 + opt.ratio_tol)
    steps = std::floor(deficit / wit.last_term) + 1.0;
  else
    steps = std::floor(std::log1p(deficit * (q - 1.0) / (wit.last_term * q)) / std::log(q)) + 1.0;
  steps = std::max(steps, 1.0);
  const double reach = static_cast<double>(last) + steps;
  wit.index = reach > 9e18 ? index_of(std::numeric_limits<std::int64_t>::max() / 2)
                           : index_of(static_cast<std::int64_t>(reach));
  out.verdict = Summability::Verdict::Divergent;
  out.witness = wit;
  return out;
}
}  // namespace detail

/// Does sum |c_n| w(n) converge for the infinite sequence the element
/// stands for? Elements without a tail model are Inconclusive; finitely
/// supported ones (tail kind None) converge to their stored norm.
/// Otherwise each side is settled by the root test q = (growth rate of w)
/// / (decay rate of c): q < 1 converges and the unstored tail is summed
/// from the fitted geometric model, q > 1 diverges, and q = 1 diverges only
/// when the stored terms are non-decreasing.
inline Summability classify_summability(const BeurlingElement& e, const SummabilityOptions& opt = {}) {
  Summability out;
  if (!e.tail) {
    out.note = "no tail model";
    return out;
  }
  if (e.tail->kind == TailModel::Kind::None) {
    out.verdict = Summability::Verdict::Convergent;
    out.bound = e.norm;
    return out;
  }
  const auto& tail = *e.tail;
  const auto rho = rho_bounds(e.weight);

  const double ratio_pos = std::isinf(tail.outer_rate) ? 0.0 : rho.rho1 / tail.outer_rate;
  const double ratio_neg = tail.inner_rate == 0.0 ? 0.0 : tail.inner_rate / rho.rho2;

  std::vector<double> pos_terms, neg_terms;
  for (std::int64_t n = std::max<std::int64_t>(0, tail.window_low); n <= tail.window_high; ++n)
    pos_terms.push_back(std::abs(e.coeffs[n]) * weight_eval(e.weight, n));
  for (std::int64_t n = std::min<std::int64_t>(-1, tail.window_high); n >= tail.window_low; --n)
    neg_terms.push_back(std::abs(e.coeffs[n]) * weight_eval(e.weight, n));

  const std::int64_t pos_start = std::max<std::int64_t>(0, tail.window_low);
  const std::int64_t neg_start = std::min<std::int64_t>(-1, tail.window_high);
  auto pos = detail::classify_side(
      pos_terms, ratio_pos, +1, [&](std::int64_t k) { return pos_start + k; },
      [&] { return detail::model_tail(e, tail.window_high, +1, -std::log(tail.outer_rate), opt); }, opt);
  auto neg = detail::classify_side(
      neg_terms, ratio_neg, -1, [&](std::int64_t k) { return neg_start - k; },
      [&] { return detail::model_tail(e, tail.window_low, -1, std::log(tail.inner_rate), opt); }, opt);

  out.ratio_pos = ratio_pos;
  out.ratio_neg = ratio_neg;
  using V = Summability::Verdict;
  if (pos.verdict == V::Divergent || neg.verdict == V::Divergent) {
    out.verdict = V::Divergent;
    out.witness = pos.verdict == V::Divergent ? pos.witness : neg.witness;
  } else if (pos.verdict == V::Inconclusive || neg.verdict == V::Inconclusive) {
    out.verdict = V::Inconclusive;
    out.note = "borderline root test without monotone terms";
  } else {
    out.verdict = V::Convergent;
    out.tail_estimate = pos.tail + neg.tail;
    out.bound = e.norm + out.tail_estimate;
  }
  return out;
}

/// Stored norm plus the modelled tail when the element is summable,
/// otherwise just the stored norm.
inline double norm_with_tail(const BeurlingElement& e) {
  const auto s = classify_summability(e);
  return s.verdict == Summability::Verdict::Convergent ? s.bound : e.norm;
}

}  // namespace beurling

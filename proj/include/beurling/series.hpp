#pragma once

// Finitely supported Laurent polynomials sum_n a_n z^n, their evaluation,
// convolution, and the circle-sampling route to Laurent coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <fftw3.h>
#include <Eigen/Eigenvalues>

#include "beurling/error.hpp"

namespace beurling {

/// Coefficients below this magnitude are treated as exact zeros.
inline constexpr double kCanonicalZero = 1e-300;

/// A Laurent polynomial with finite support.
///
/// Stored densely between the lowest and highest nonzero index; both end
/// coefficients are always nonzero, and interior coefficients under
/// kCanonicalZero are stored as exact zeros and skipped by terms(). The
/// empty polynomial is the zero element.
class LaurentPolynomial {
public:
  LaurentPolynomial() = default;

  /// From (index, coefficient) pairs. Duplicated indices are rejected.
  LaurentPolynomial(std::initializer_list<std::pair<std::int64_t, cplx>> terms)
      : LaurentPolynomial(from_terms(std::vector<std::pair<std::int64_t, cplx>>(terms))) {}

  static LaurentPolynomial from_terms(std::vector<std::pair<std::int64_t, cplx>> terms) {
    if (terms.empty()) return {};
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < terms.size(); ++i)
      if (terms[i].first == terms[i - 1].first)
        throw ArgumentError("duplicate coefficient index " + std::to_string(terms[i].first));
    const std::int64_t low = terms.front().first;
    std::vector<cplx> dense(static_cast<std::size_t>(terms.back().first - low + 1));
    for (const auto& [n, c] : terms) dense[static_cast<std::size_t>(n - low)] = c;
    return from_dense(low, std::move(dense));
  }

  /// From coefficients a_low, a_{low+1}, ...; trims to canonical form.
  static LaurentPolynomial from_dense(std::int64_t low, std::vector<cplx> coeffs) {
    LaurentPolynomial p;
    for (auto& c : coeffs)
      if (std::abs(c) < kCanonicalZero) c = 0.0;
    auto first = std::find_if(coeffs.begin(), coeffs.end(), [](cplx c) { return c != 0.0; });
    if (first == coeffs.end()) return p;
    auto last = std::find_if(coeffs.rbegin(), coeffs.rend(), [](cplx c) { return c != 0.0; }).base();
    p.low_ = low + (first - coeffs.begin());
    p.coeffs_.assign(first, last);
    return p;
  }

  static LaurentPolynomial monomial(std::int64_t n, cplx c = 1.0) { return from_dense(n, {c}); }

  /// The unit delta_0.
  static LaurentPolynomial identity() { return monomial(0, 1.0); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Lowest index of the support. Zero for the zero element.
  std::int64_t low() const noexcept { return low_; }
  std::int64_t high() const noexcept { return low_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }

  cplx operator[](std::int64_t n) const noexcept {
    if (is_zero() || n < low_ || n > high()) return 0.0;
    return coeffs_[static_cast<std::size_t>(n - low_)];
  }

  /// Dense coefficients from low() to high().
  const std::vector<cplx>& dense() const noexcept { return coeffs_; }

  /// Nonzero (index, coefficient) pairs in increasing index order.
  std::vector<std::pair<std::int64_t, cplx>> terms() const {
    std::vector<std::pair<std::int64_t, cplx>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0.0) out.emplace_back(low_ + static_cast<std::int64_t>(i), coeffs_[i]);
    return out;
  }

  /// Restriction to indices in [lo, hi].
  LaurentPolynomial truncated(std::int64_t lo, std::int64_t hi) const {
    if (is_zero() || hi < lo) return {};
    const std::int64_t a = std::max(lo, low_), b = std::min(hi, high());
    if (b < a) return {};
    return from_dense(a, std::vector<cplx>(coeffs_.begin() + (a - low_), coeffs_.begin() + (b - low_ + 1)));
  }

  LaurentPolynomial& operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    *this = from_dense(low_, std::move(coeffs_));
    return *this;
  }

  friend LaurentPolynomial operator*(cplx s, LaurentPolynomial p) { return p *= s; }

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return combine(a, b, 1.0);
  }

  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return combine(a, b, -1.0);
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

private:
  static LaurentPolynomial combine(const LaurentPolynomial& a, const LaurentPolynomial& b, double sign) {
    if (a.is_zero()) return sign * b;
    if (b.is_zero()) return a;
    const std::int64_t lo = std::min(a.low(), b.low()), hi = std::max(a.high(), b.high());
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) out[static_cast<std::size_t>(n - lo)] = a[n] + sign * b[n];
    return from_dense(lo, std::move(out));
  }

  std::int64_t low_ = 0;
  std::vector<cplx> coeffs_;
};

/// sum_n a_n z^n, split into a Horner pass in z for n >= 0 and one in 1/z
/// for n < 0.
inline cplx evaluate(const LaurentPolynomial& a, cplx z) {
  if (a.is_zero()) return 0.0;
  if (z == 0.0) {
    if (a.low() < 0) throw NumericalError("evaluate: z = 0 is a pole of a Laurent polynomial with negative support");
    return a[0];
  }
  cplx total = 0.0;
  if (a.high() >= 0) {
    const std::int64_t start = std::max<std::int64_t>(a.low(), 0);
    cplx acc = 0.0;
    for (std::int64_t n = a.high(); n >= start; --n) acc = acc * z + a[n];
    total += start == 0 ? acc : acc * std::pow(z, static_cast<double>(start));
  }
  if (a.low() < 0) {
    const std::int64_t stop = std::min<std::int64_t>(a.high(), -1);
    const cplx w = 1.0 / z;
    cplx acc = 0.0;
    for (std::int64_t n = a.low(); n <= stop; ++n) acc = acc * w + a[n];
    total += acc * std::pow(w, static_cast<double>(-stop));
  }
  return total;
}

/// (a*b)_n = sum_k a_k b_{n-k}.
inline LaurentPolynomial convolve(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.dense();
  const auto& y = b.dense();
  std::vector<cplx> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return LaurentPolynomial::from_dense(a.low() + b.low(), std::move(out));
}

/// Convolution restricted to indices in [lo, hi].
inline LaurentPolynomial convolve_truncated(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                            std::int64_t lo, std::int64_t hi) {
  if (a.is_zero() || b.is_zero() || hi < lo) return {};
  const std::int64_t out_lo = std::max(lo, a.low() + b.low());
  const std::int64_t out_hi = std::min(hi, a.high() + b.high());
  if (out_hi < out_lo) return {};
  std::vector<cplx> out(static_cast<std::size_t>(out_hi - out_lo + 1));
  for (std::int64_t i = a.low(); i <= a.high(); ++i) {
    const cplx ai = a[i];
    if (ai == 0.0) continue;
    const std::int64_t j0 = std::max(b.low(), out_lo - i), j1 = std::min(b.high(), out_hi - i);
    for (std::int64_t j = j0; j <= j1; ++j) out[static_cast<std::size_t>(i + j - out_lo)] += ai * b[j];
  }
  return LaurentPolynomial::from_dense(out_lo, std::move(out));
}

// ---------------------------------------------------------------------------
// Circle sampling

/// values[k] = g(radius * e^{2 pi i k / M}).
struct CircleSamples {
  double radius = 1.0;
  std::vector<cplx> values;

  std::size_t size() const noexcept { return values.size(); }
};

namespace detail {
inline bool is_power_of_two(std::size_t m) { return m >= 1 && (m & (m - 1)) == 0; }

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Forward DFT X_j = sum_k x_k e^{-2 pi i j k / M}.
inline std::vector<cplx> forward_dft(std::vector<cplx> x) {
  std::vector<cplx> out(x.size());
  if (x.empty()) return out;
  auto* in_ptr = reinterpret_cast<fftw_complex*>(x.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(x.size()), in_ptr, out_ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

inline cplx unit_root(std::size_t k, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}
}  // namespace detail

/// Sample an arbitrary function on the circle |z| = radius at M equally
/// spaced points.
inline CircleSamples sample_function_on_circle(const std::function<cplx(cplx)>& g, double radius, std::size_t m) {
  if (!(radius > 0.0)) throw ArgumentError("sampling radius must be positive");
  if (!detail::is_power_of_two(m)) throw ArgumentError("sample count must be a power of two");
  CircleSamples s{radius, std::vector<cplx>(m)};
  for (std::size_t k = 0; k < m; ++k) s.values[k] = g(radius * detail::unit_root(k, m));
  return s;
}

inline CircleSamples sample_on_circle(const LaurentPolynomial& a, double radius, std::size_t m) {
  const std::size_t span = a.is_zero() ? 0 : static_cast<std::size_t>(a.high() - a.low());
  if (m < 2 * span + 2)
    throw ArgumentError("sample count " + std::to_string(m) + " too small for support width " + std::to_string(span));
  return sample_function_on_circle([&](cplx z) { return evaluate(a, z); }, radius, m);
}

/// Laurent coefficients c_n, n in [n_min, n_max], of the function whose
/// circle samples are given: c_n = DFT_n(values) / (M r^n). Exact for
/// Laurent polynomials whose support fits the window; for analytic
/// functions the error is the aliased mass sum_{k != 0} c_{n+kM} r^{kM}.
inline LaurentPolynomial coefficients_from_samples(const CircleSamples& s, std::int64_t n_min, std::int64_t n_max) {
  const auto m = static_cast<std::int64_t>(s.size());
  if (!detail::is_power_of_two(s.size())) throw ArgumentError("sample count must be a power of two");
  if (n_max < n_min) throw ArgumentError("empty coefficient window");
  if (n_max - n_min >= m)
    throw ArgumentError("coefficient window wider than the sample count; coefficients would alias");
  if (2 * (n_max - n_min + 1) > m)
    warn("coefficient window [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "] exceeds half of M=" +
         std::to_string(m) + "; aliasing may dominate the edge coefficients");
  const auto spectrum = detail::forward_dft(s.values);
  std::vector<cplx> out(static_cast<std::size_t>(n_max - n_min + 1));
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    const auto j = static_cast<std::size_t>(((n % m) + m) % m);
    out[static_cast<std::size_t>(n - n_min)] = spectrum[j] * inv_m * std::pow(s.radius, -static_cast<double>(n));
  }
  return LaurentPolynomial::from_dense(n_min, std::move(out));
}

// ---------------------------------------------------------------------------
// Zeros

namespace detail {
/// Roots of sum_k a_k z^k (a_0 and a_d nonzero) from the eigenvalues of
/// the companion matrix, each polished by Newton steps on the original
/// coefficients and accepted when |P(z)| <= tol * sum_k |a_k| |z|^k.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& a, double tol = 1e-8) {
  const std::size_t d = a.size() - 1;
  if (d == 0) return {};
  auto eval = [&](cplx z, cplx& dp, double& scale) {
    cplx p = 0.0;
    dp = 0.0;
    scale = 0.0;
    const double az = std::abs(z);
    for (std::size_t k = a.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[k];
      scale = scale * az + std::abs(a[k]);
    }
    return p;
  };

  std::vector<cplx> roots;
  if (d == 1) {
    roots.push_back(-a[0] / a[1]);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -a[i] / a[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw RootFindingError("companion eigenvalue solver did not converge", {});
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()(i));
  }

  std::vector<cplx> accepted;
  for (cplx z : roots) {
    for (int it = 0; it < 8; ++it) {
      cplx dp;
      double scale;
      const cplx p = eval(z, dp, scale);
      if (std::abs(p) <= 1e-15 * scale || dp == 0.0) break;
      const cplx step = p / dp;
      // Newton is unreliable next to multiple roots; keep only improving steps.
      cplx dq;
      double scale2;
      if (std::abs(eval(z - step, dq, scale2)) >= std::abs(p)) break;
      z -= step;
    }
    cplx dp;
    double scale;
    const cplx p = eval(z, dp, scale);
    if (!(std::abs(p) <= tol * scale))
      throw RootFindingError("root at " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                                 "i failed the residual bound",
                             accepted);
    accepted.push_back(z);
  }
  return accepted;
}
}  // namespace detail

/// All zeros of f in C \ {0}, together with zeros at the origin (of
/// multiplicity low() when low() > 0).
inline std::vector<cplx> zeros(const LaurentPolynomial& f) {
  if (f.is_zero()) throw ArgumentError("zeros: the zero polynomial vanishes everywhere");
  std::vector<cplx> out(f.low() > 0 ? static_cast<std::size_t>(f.low()) : 0, cplx{0.0});
  auto rest = detail::polynomial_roots(f.dense());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

/// Moduli of the zeros of z^{-low} f(z) plus the origin's multiplicity,
/// sorted ascending.
inline std::vector<double> zero_radii(const LaurentPolynomial& f) {
  std::vector<double> radii;
  for (cplx z : zeros(f)) radii.push_back(std::abs(z));
  std::sort(radii.begin(), radii.end());
  return radii;
}

}  // namespace beurling

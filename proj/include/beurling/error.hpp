#pragma once

#include <complex>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace beurling {

using cplx = std::complex<double>;

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: malformed spec strings, out-of-range parameters,
/// invalid JSON documents.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A weight queried where it has no definition (Table outside its window
/// with no tail rule).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A numerical precondition failed: f vanishes on the unit circle, a
/// resolvent is singular, a root finder did not converge, quadrature
/// did not settle.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// No admissible contour exists inside the declared domain of phi.
class GeometryError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Root finding failed; carries whatever roots were polished before the
/// failure.
class RootFindingError : public NumericalError {
public:
  RootFindingError(const std::string& what, std::vector<cplx> partial)
      : NumericalError(what), partial_(std::move(partial)) {}

  const std::vector<cplx>& partial_roots() const noexcept { return partial_; }

private:
  std::vector<cplx> partial_;
};

namespace detail {
inline std::function<void(const std::string&)>& warning_sink() {
  static std::function<void(const std::string&)> sink =
      [](const std::string& msg) { std::clog << "beurling: warning: " << msg << '\n'; };
  return sink;
}
}  // namespace detail

/// Replace the handler that receives non-fatal diagnostics (aliasing
/// risk and similar). Pass an empty function to silence them.
inline void set_warning_handler(std::function<void(const std::string&)> handler) {
  detail::warning_sink() = std::move(handler);
}

inline void warn(const std::string& msg) {
  if (auto& sink = detail::warning_sink()) sink(msg);
}

}  // namespace beurling

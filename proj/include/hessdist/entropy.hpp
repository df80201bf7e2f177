#pragma once

// f-entropies F(p) = \int f(p(x)) dx and their h-functions
//
//   h(y) = \int_1^y sqrt(f''(1/z)) z^{-3/2} dz,
//
// the coordinate in which the transport Hessian geodesics become affine. The
// named kinds carry closed forms of h and its inverse; custom kinds fall back
// to adaptive quadrature and bisection.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "hessdist/density.hpp"

namespace hessdist {

enum class EntropyKind {
  Boltzmann,   // f(p) = p log p
  Quadratic,   // f(p) = p^2 / 2
  Cross,       // f(p) = -log p
  Reciprocal,  // f(p) = 1 / (2p)
  Gamma,       // f(p) = p^{2-g} / ((1-g)(2-g)), g not in {1, 2}
  Custom,
};

using ScalarFunction = std::function<double(double)>;

class EntropyModel {
 public:
  EntropyKind kind() const noexcept { return kind_; }
  // Only meaningful for EntropyKind::Gamma.
  double gamma() const noexcept { return gamma_; }
  std::string name() const;

  bool has_f() const noexcept { return static_cast<bool>(f_); }
  bool has_closed_h() const noexcept { return kind_ != EntropyKind::Custom; }

  double f(double z) const;
  double f_second(double z) const { return f_second_(z); }
  const ScalarFunction& f_second_function() const noexcept { return f_second_; }

  // Closed-form h; throws InvalidArgument for custom kinds.
  double h_closed(double y) const;
  // Inverse of h: closed form for named kinds, bisection for custom ones.
  double h_inverse(double value) const;

 private:
  friend EntropyModel make_entropy(EntropyKind, std::optional<double>);
  friend EntropyModel make_custom_entropy(ScalarFunction, ScalarFunction);

  EntropyModel(EntropyKind kind, double gamma, ScalarFunction f, ScalarFunction f_second)
      : kind_(kind), gamma_(gamma), f_(std::move(f)), f_second_(std::move(f_second)) {}

  EntropyKind kind_;
  double gamma_;
  ScalarFunction f_;
  ScalarFunction f_second_;
};

// `gamma` is required for EntropyKind::Gamma and ignored otherwise.
EntropyModel make_entropy(EntropyKind kind, std::optional<double> gamma = std::nullopt);

// A custom entropy is defined by f'' alone; f is optional and only needed by
// f_entropy_value. f'' is probed for positivity on [1e-8, 1e8].
EntropyModel make_custom_entropy(ScalarFunction f_second, ScalarFunction f = {});

// Parses "boltzmann", "quadratic", "cross", "reciprocal", "gamma:<g>" or
// "gamma" together with an explicit `gamma`.
EntropyModel parse_entropy(std::string_view spec, std::optional<double> gamma = std::nullopt);

// h(y), using the closed form when the model has one.
double h_eval(const EntropyModel& e, double y);

// Adaptive Simpson quadrature of the defining integral, signed so that the
// result is negative for y < 1.
double h_numeric(const ScalarFunction& f_second, double y);

// Trapezoid integral of f(p(x)) over the support.
double f_entropy_value(const EntropyModel& e, const GridDensity& p);

// Generic adaptive Simpson integration with absolute tolerance `tol`.
// Throws QuadratureDivergence when the recursion depth is exhausted.
double adaptive_simpson(const ScalarFunction& integrand, double a, double b, double tol = 1e-10,
                        int max_depth = 40);

}  // namespace hessdist

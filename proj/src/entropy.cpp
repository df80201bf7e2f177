#include "hessdist/entropy.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hessdist/error.hpp"

namespace hessdist {

namespace {

constexpr double kBisectionTolerance = 1e-12;
constexpr double kBracketLimit = 1e12;

struct SimpsonPanel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double checked(const ScalarFunction& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::QuadratureDivergence,
                "integrand is not finite at z = " + std::to_string(x));
  }
  return v;
}

double refine(const ScalarFunction& g, const SimpsonPanel& panel, double tol, int depth) {
  const double lm = 0.5 * (panel.a + panel.m);
  const double rm = 0.5 * (panel.m + panel.b);
  const double flm = checked(g, lm);
  const double frm = checked(g, rm);
  const double left = simpson(panel.a, panel.m, panel.fa, flm, panel.fm);
  const double right = simpson(panel.m, panel.b, panel.fm, frm, panel.fb);
  const double delta = left + right - panel.whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0 || !(lm > panel.a) || !(rm < panel.b)) {
    throw Error(ErrorCode::QuadratureDivergence,
                "adaptive Simpson did not converge on [" + std::to_string(panel.a) + ", " +
                    std::to_string(panel.b) + "]");
  }
  return refine(g, {panel.a, lm, panel.m, panel.fa, flm, panel.fm, left}, 0.5 * tol, depth - 1) +
         refine(g, {panel.m, rm, panel.b, panel.fm, frm, panel.fb, right}, 0.5 * tol, depth - 1);
}

// Inverse of the closed-form h for the named kinds. `base` is the quantity
// raised to a power; it must stay positive for the value to lie in h's range.
double closed_inverse(EntropyKind kind, double gamma, double value) {
  double y = 0.0;
  switch (kind) {
    case EntropyKind::Boltzmann:
      y = std::exp(value);
      break;
    case EntropyKind::Quadratic: {
      const double base = 1.0 - 0.5 * value;
      y = base > 0.0 ? 1.0 / (base * base) : 0.0;
      break;
    }
    case EntropyKind::Cross: {
      const double base = 1.0 + 0.5 * value;
      y = base > 0.0 ? base * base : 0.0;
      break;
    }
    case EntropyKind::Reciprocal:
      y = value + 1.0;
      break;
    case EntropyKind::Gamma: {
      const double base = 1.0 + 0.5 * (gamma - 1.0) * value;
      y = base > 0.0 ? std::pow(base, 2.0 / (gamma - 1.0)) : 0.0;
      break;
    }
    case EntropyKind::Custom:
      break;
  }
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw Error(ErrorCode::HInversionOutOfRange,
                "value " + std::to_string(value) + " is outside the range of h");
  }
  return y;
}

double bisect_inverse(const EntropyModel& e, double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::HInversionOutOfRange, "non-finite h value");
  }
  if (value == 0.0) return 1.0;
  double lo = 1.0;
  double hi = 1.0;
  if (value > 0.0) {
    do {
      lo = hi;
      hi *= 2.0;
      if (hi > kBracketLimit) {
        throw Error(ErrorCode::HInversionOutOfRange,
                    "value " + std::to_string(value) + " is above the range of h");
      }
    } while (h_eval(e, hi) < value);
  } else {
    do {
      hi = lo;
      lo *= 0.5;
      if (lo < 1.0 / kBracketLimit) {
        throw Error(ErrorCode::HInversionOutOfRange,
                    "value " + std::to_string(value) + " is below the range of h");
      }
    } while (h_eval(e, lo) > value);
  }
  while (hi - lo > kBisectionTolerance * hi) {
    const double mid = std::sqrt(lo * hi);
    if (h_eval(e, mid) < value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string EntropyModel::name() const {
  switch (kind_) {
    case EntropyKind::Boltzmann: return "boltzmann";
    case EntropyKind::Quadratic: return "quadratic";
    case EntropyKind::Cross: return "cross";
    case EntropyKind::Reciprocal: return "reciprocal";
    case EntropyKind::Gamma: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "gamma:%.17g", gamma_);
      return buf;
    }
    case EntropyKind::Custom: return "custom";
  }
  return "unknown";
}

double EntropyModel::f(double z) const {
  if (!f_) throw Error(ErrorCode::InvalidArgument, "entropy model has no f");
  return f_(z);
}

double EntropyModel::h_closed(double y) const {
  switch (kind_) {
    case EntropyKind::Boltzmann: return std::log(y);
    case EntropyKind::Quadratic: return -2.0 * (1.0 / std::sqrt(y) - 1.0);
    case EntropyKind::Cross: return 2.0 * (std::sqrt(y) - 1.0);
    case EntropyKind::Reciprocal: return y - 1.0;
    case EntropyKind::Gamma:
      return 2.0 / (gamma_ - 1.0) * (std::pow(y, 0.5 * (gamma_ - 1.0)) - 1.0);
    case EntropyKind::Custom: break;
  }
  throw Error(ErrorCode::InvalidArgument, "custom entropy has no closed-form h");
}

double EntropyModel::h_inverse(double value) const {
  if (kind_ == EntropyKind::Custom) return bisect_inverse(*this, value);
  return closed_inverse(kind_, gamma_, value);
}

EntropyModel make_entropy(EntropyKind kind, std::optional<double> gamma) {
  switch (kind) {
    case EntropyKind::Boltzmann:
      return EntropyModel(kind, 0.0, [](double p) { return p * std::log(p); },
                          [](double p) { return 1.0 / p; });
    case EntropyKind::Quadratic:
      return EntropyModel(kind, 0.0, [](double p) { return 0.5 * p * p; },
                          [](double) { return 1.0; });
    case EntropyKind::Cross:
      return EntropyModel(kind, 0.0, [](double p) { return -std::log(p); },
                          [](double p) { return 1.0 / (p * p); });
    case EntropyKind::Reciprocal:
      return EntropyModel(kind, 0.0, [](double p) { return 0.5 / p; },
                          [](double p) { return 1.0 / (p * p * p); });
    case EntropyKind::Gamma: {
      if (!gamma || !std::isfinite(*gamma)) {
        throw Error(ErrorCode::InvalidGamma, "gamma entropy needs a finite gamma");
      }
      const double g = *gamma;
      if (g == 1.0 || g == 2.0) {
        throw Error(ErrorCode::InvalidGamma, "gamma must differ from 1 and 2");
      }
      const double scale = 1.0 / ((1.0 - g) * (2.0 - g));
      return EntropyModel(kind, g, [g, scale](double p) { return scale * std::pow(p, 2.0 - g); },
                          [g](double p) { return std::pow(p, -g); });
    }
    case EntropyKind::Custom:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "use make_custom_entropy for custom kinds");
}

EntropyModel make_custom_entropy(ScalarFunction f_second, ScalarFunction f) {
  if (!f_second) throw Error(ErrorCode::InvalidArgument, "custom entropy needs f''");
  // 161 log-spaced probes, 10 per decade over [1e-8, 1e8].
  for (int k = -80; k <= 80; ++k) {
    const double z = std::pow(10.0, k / 10.0);
    const double v = f_second(z);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonConvex, "f'' is not positive at z = " + std::to_string(z));
    }
  }
  return EntropyModel(EntropyKind::Custom, 0.0, std::move(f), std::move(f_second));
}

EntropyModel parse_entropy(std::string_view spec, std::optional<double> gamma) {
  std::string name(spec.substr(0, spec.find(':')));
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  if (spec.find(':') != std::string_view::npos) {
    if (name != "gamma") {
      throw Error(ErrorCode::InvalidArgument, "only the gamma entropy takes a parameter");
    }
    const std::string_view arg = spec.substr(spec.find(':') + 1);
    double parsed = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), parsed);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse gamma from '" + std::string(arg) + "'");
    }
    if (!gamma) gamma = parsed;
  }

  if (name == "boltzmann") return make_entropy(EntropyKind::Boltzmann);
  if (name == "quadratic") return make_entropy(EntropyKind::Quadratic);
  if (name == "cross") return make_entropy(EntropyKind::Cross);
  if (name == "reciprocal") return make_entropy(EntropyKind::Reciprocal);
  if (name == "gamma") return make_entropy(EntropyKind::Gamma, gamma);
  throw Error(ErrorCode::InvalidArgument, "unknown entropy kind '" + name + "'");
}

double adaptive_simpson(const ScalarFunction& integrand, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = checked(integrand, a);
  const double fm = checked(integrand, m);
  const double fb = checked(integrand, b);
  return refine(integrand, {a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, tol, max_depth);
}

double h_numeric(const ScalarFunction& f_second, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw Error(ErrorCode::DomainError, "h is defined for positive finite y only");
  }
  if (y == 1.0) return 0.0;
  const auto integrand = [&f_second](double z) {
    return std::sqrt(f_second(1.0 / z)) / (z * std::sqrt(z));
  };
  if (y > 1.0) return adaptive_simpson(integrand, 1.0, y);
  return -adaptive_simpson(integrand, y, 1.0);
}

double h_eval(const EntropyModel& e, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw Error(ErrorCode::DomainError, "h is defined for positive finite y only, got " +
                                            std::to_string(y));
  }
  if (e.has_closed_h()) return e.h_closed(y);
  try {
    return h_numeric(e.f_second_function(), y);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::QuadratureDivergence) throw;
    throw Error(ErrorCode::DomainError, "h diverges at y = " + std::to_string(y));
  }
}

double f_entropy_value(const EntropyModel& e, const GridDensity& p) {
  std::vector<double> integrand(p.values().size());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = e.f(p.values()[i]);
  return trapezoid(integrand, p.step());
}

}  // namespace hessdist

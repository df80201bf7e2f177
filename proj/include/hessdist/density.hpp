#pragma once

// One-dimensional probability densities sampled on uniform grids, together
// with their cumulative distribution and quantile (inverse CDF) functions.
//
// A density is piecewise linear between its nodes. The CDF is the cumulative
// trapezoid integral on the same nodes, and the quantile function inverts the
// piecewise-linear interpolant of that CDF. The quantile derivative is taken
// from the identity dF^{-1}/dy = 1 / p(F^{-1}(y)) rather than by
// differencing quantile values.

#include <cstddef>
#include <span>
#include <vector>

namespace hessdist {

enum class Normalization {
  // Input must already integrate to 1 within 1e-3; it is then rescaled exactly.
  Strict,
  // Any positive integral is accepted and divided out.
  Rescale,
};

class GridDensity {
 public:
  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }
  double support_length() const noexcept { return hi_ - lo_; }
  // Number of grid intervals N; there are N + 1 nodes.
  std::size_t intervals() const noexcept { return values_.size() - 1; }
  double step() const noexcept { return (hi_ - lo_) / static_cast<double>(intervals()); }
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;
  std::span<const double> values() const noexcept { return values_; }
  double p_min() const noexcept { return p_min_; }

  // Linear interpolation inside the support, zero outside it.
  double evaluate(double x) const noexcept;

 private:
  friend GridDensity build_density(std::span<const double>, double, double, Normalization);
  friend GridDensity translate(const GridDensity&, double);

  GridDensity(double lo, double hi, std::vector<double> values, double p_min)
      : lo_(lo), hi_(hi), values_(std::move(values)), p_min_(p_min) {}

  double lo_;
  double hi_;
  std::vector<double> values_;
  double p_min_;
};

class CdfFunction {
 public:
  CdfFunction(double lo, double hi, std::vector<double> knots);

  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }
  std::span<const double> knots() const noexcept { return knots_; }

  // Piecewise-linear evaluation; clamps to 0 and 1 outside the support.
  double evaluate(double x) const noexcept;

  // Location of F^{-1}(y) as a grid interval and the fractional position
  // inside it, so callers can interpolate node data without recomputing x.
  struct Inverse {
    std::size_t interval;
    double weight;
    double x;
  };
  Inverse invert(double y) const;

 private:
  double lo_;
  double hi_;
  std::vector<double> knots_;
};

class QuantileFunction {
 public:
  QuantileFunction(std::vector<double> values, std::vector<double> derivative);

  // Midpoint grid y_j = (j + 1/2) / M.
  std::size_t size() const noexcept { return values_.size(); }
  double y(std::size_t j) const noexcept;
  std::vector<double> y_grid() const;
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> derivative() const noexcept { return derivative_; }

 private:
  std::vector<double> values_;
  std::vector<double> derivative_;
};

inline constexpr std::size_t kMinIntervals = 8;
inline constexpr std::size_t kMinQuantileNodes = 16;
inline constexpr std::size_t kMinSamples = 50;
// Densities below this fraction of their mean value are rejected.
inline constexpr double kRelativeFloor = 1e-12;

GridDensity build_density(std::span<const double> values, double support_lo, double support_hi,
                          Normalization mode = Normalization::Strict);

CdfFunction cdf(const GridDensity& p);

QuantileFunction quantile(const GridDensity& p, std::size_t m);

// Padded histogram of the samples; bins == 0 selects ceil(sqrt(n)).
GridDensity from_samples(std::span<const double> samples, std::size_t bins = 0);

GridDensity translate(const GridDensity& p, double shift);

// Linear resampling onto `intervals` uniform intervals of the same support,
// renormalized.
GridDensity resample(const GridDensity& p, std::size_t intervals);

// Trapezoid rule on a uniform grid with spacing `step`.
double trapezoid(std::span<const double> values, double step) noexcept;

}  // namespace hessdist

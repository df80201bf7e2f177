#include "hessdist/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hessdist/error.hpp"

namespace hessdist {

namespace {

// Snap tolerance, relative to the support length, for points that land just
// outside the support through rounding.
constexpr double kSupportSlack = 1e-12;

// Floor applied to histogram node values, relative to the peak.
constexpr double kHistogramFloor = 1e-6;

}  // namespace

double trapezoid(std::span<const double> values, double step) noexcept {
  if (values.size() < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return step * (interior + 0.5 * (values.front() + values.back()));
}

double GridDensity::node(std::size_t i) const noexcept {
  if (i == intervals()) return hi_;
  return lo_ + static_cast<double>(i) * step();
}

std::vector<double> GridDensity::nodes() const {
  std::vector<double> xs(values_.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = node(i);
  return xs;
}

double GridDensity::evaluate(double x) const noexcept {
  const double slack = kSupportSlack * support_length();
  if (!(x >= lo_ - slack && x <= hi_ + slack)) return 0.0;
  const double t = std::clamp((x - lo_) / step(), 0.0, static_cast<double>(intervals()));
  const std::size_t k = std::min(static_cast<std::size_t>(t), intervals() - 1);
  const double w = t - static_cast<double>(k);
  return (1.0 - w) * values_[k] + w * values_[k + 1];
}

GridDensity build_density(std::span<const double> values, double support_lo, double support_hi,
                          Normalization mode) {
  if (values.size() < kMinIntervals + 1) {
    throw Error(ErrorCode::TooFewNodes, "need at least " + std::to_string(kMinIntervals + 1) +
                                            " density samples, got " + std::to_string(values.size()));
  }
  if (!std::isfinite(support_lo) || !std::isfinite(support_hi) || !(support_lo < support_hi)) {
    throw Error(ErrorCode::InvalidArgument, "support must be a finite interval with lo < hi");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NotNormalizable, "non-finite density value");
    if (v < 0.0) throw Error(ErrorCode::NonPositiveDensity, "negative density value");
  }

  const double step = (support_hi - support_lo) / static_cast<double>(values.size() - 1);
  const double integral = trapezoid(values, step);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw Error(ErrorCode::NotNormalizable, "density integral is not positive");
  }

  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  const double lowest = *std::min_element(values.begin(), values.end());
  if (lowest < kRelativeFloor * mean || lowest <= 0.0) {
    throw Error(ErrorCode::NonPositiveDensity,
                "density value " + std::to_string(lowest) + " below positivity floor");
  }

  if (mode == Normalization::Strict && std::abs(integral - 1.0) > 1e-3) {
    throw Error(ErrorCode::NotNormalizable,
                "density integrates to " + std::to_string(integral) + ", expected 1");
  }

  std::vector<double> normalized(values.begin(), values.end());
  if (integral != 1.0) {
    for (double& v : normalized) v /= integral;
  }
  const double p_min = *std::min_element(normalized.begin(), normalized.end());
  return GridDensity(support_lo, support_hi, std::move(normalized), p_min);
}

CdfFunction::CdfFunction(double lo, double hi, std::vector<double> knots)
    : lo_(lo), hi_(hi), knots_(std::move(knots)) {
  if (knots_.size() < 2 || knots_.front() != 0.0 || knots_.back() != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "CDF knots must run from exactly 0 to exactly 1");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "CDF knots must be strictly increasing");
    }
  }
}

double CdfFunction::evaluate(double x) const noexcept {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const std::size_t n = knots_.size() - 1;
  const double t = (x - lo_) / (hi_ - lo_) * static_cast<double>(n);
  const std::size_t k = std::min(static_cast<std::size_t>(t), n - 1);
  const double w = t - static_cast<double>(k);
  return (1.0 - w) * knots_[k] + w * knots_[k + 1];
}

CdfFunction::Inverse CdfFunction::invert(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "quantile level must lie in [0, 1]");
  }
  const std::size_t n = knots_.size() - 1;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), y);
  std::size_t k = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  k = std::min(k, n - 1);
  const double w = (y - knots_[k]) / (knots_[k + 1] - knots_[k]);
  const double step = (hi_ - lo_) / static_cast<double>(n);
  const double x = w == 1.0 && k + 1 == n ? hi_ : lo_ + (static_cast<double>(k) + w) * step;
  return {k, w, x};
}

QuantileFunction::QuantileFunction(std::vector<double> values, std::vector<double> derivative)
    : values_(std::move(values)), derivative_(std::move(derivative)) {
  if (values_.size() != derivative_.size() || values_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "quantile values and derivative sizes differ");
  }
  for (double d : derivative_) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::InvalidArgument, "quantile derivative must be positive and finite");
    }
  }
}

double QuantileFunction::y(std::size_t j) const noexcept {
  return (static_cast<double>(j) + 0.5) / static_cast<double>(values_.size());
}

std::vector<double> QuantileFunction::y_grid() const {
  std::vector<double> ys(values_.size());
  for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = y(j);
  return ys;
}

CdfFunction cdf(const GridDensity& p) {
  // Cumulative trapezoid sums without the step factor, which cancels in the
  // normalization. This keeps the knots invariant under translation.
  const auto v = p.values();
  std::vector<double> knots(v.size());
  knots[0] = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) knots[i] = knots[i - 1] + 0.5 * (v[i - 1] + v[i]);
  const double total = knots.back();
  for (double& k : knots) k /= total;
  knots.back() = 1.0;
  return CdfFunction(p.support_lo(), p.support_hi(), std::move(knots));
}

QuantileFunction quantile(const GridDensity& p, std::size_t m) {
  if (m < kMinQuantileNodes) {
    throw Error(ErrorCode::InvalidArgument,
                "need at least " + std::to_string(kMinQuantileNodes) + " quantile nodes");
  }
  const CdfFunction f = cdf(p);
  const auto v = p.values();
  std::vector<double> values(m);
  std::vector<double> derivative(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    const auto inv = f.invert(y);
    values[j] = inv.x;
    derivative[j] = 1.0 / ((1.0 - inv.weight) * v[inv.interval] + inv.weight * v[inv.interval + 1]);
  }
  return QuantileFunction(std::move(values), std::move(derivative));
}

GridDensity from_samples(std::span<const double> samples, std::size_t bins) {
  if (samples.size() < kMinSamples) {
    throw Error(ErrorCode::TooFewSamples, "need at least " + std::to_string(kMinSamples) +
                                              " samples, got " + std::to_string(samples.size()));
  }
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "non-finite sample");
  }
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *min_it;
  const double hi = *max_it;
  if (!(hi > lo)) throw Error(ErrorCode::DegenerateSamples, "all samples are equal");
  if (bins == 0) bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples.size()))));

  const double width = (hi - lo) / static_cast<double>(bins);
  // Cells 0 and bins + 1 are the empty padding cells.
  std::vector<double> heights(bins + 2, 0.0);
  const double scale = 1.0 / (static_cast<double>(samples.size()) * width);
  for (double s : samples) {
    const auto cell = std::min(static_cast<std::size_t>((s - lo) / width), bins - 1);
    heights[cell + 1] += scale;
  }

  // Node k sits between cells k - 1 and k.
  std::vector<double> node_values(bins + 3);
  for (std::size_t k = 0; k < node_values.size(); ++k) {
    const double left = k == 0 ? 0.0 : heights[k - 1];
    const double right = k < heights.size() ? heights[k] : 0.0;
    node_values[k] = 0.5 * (left + right);
  }
  const double floor = kHistogramFloor * *std::max_element(node_values.begin(), node_values.end());
  for (double& v : node_values) v = std::max(v, floor);
  return build_density(node_values, lo - width, hi + width, Normalization::Rescale);
}

GridDensity translate(const GridDensity& p, double shift) {
  return GridDensity(p.lo_ + shift, p.hi_ + shift, p.values_, p.p_min_);
}

GridDensity resample(const GridDensity& p, std::size_t intervals) {
  if (intervals == p.intervals()) return p;
  std::vector<double> values(intervals + 1);
  const double step = p.support_length() / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double x = i == intervals ? p.support_hi() : p.support_lo() + static_cast<double>(i) * step;
    values[i] = p.evaluate(x);
  }
  return build_density(values, p.support_lo(), p.support_hi(), Normalization::Rescale);
}

}  // namespace hessdist

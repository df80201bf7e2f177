#include "hessdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hessdist/error.hpp"

namespace hessdist {

namespace {

double midpoint_l2(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

void require_same_grid(const QuantileFunction& p, const QuantileFunction& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::InvalidArgument, "quantile functions live on different y-grids");
  }
}

// Interpolated p at the point located by a CDF inversion.
double density_at(const GridDensity& p, const CdfFunction::Inverse& inv) {
  const auto v = p.values();
  return (1.0 - inv.weight) * v[inv.interval] + inv.weight * v[inv.interval + 1];
}

}  // namespace

std::vector<double> h_profile(const EntropyModel& e, const QuantileFunction& q) {
  std::vector<double> out(q.size());
  const auto d = q.derivative();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = h_eval(e, d[j]);
  return out;
}

double dist_h_quantile(const EntropyModel& e, const QuantileFunction& p, const QuantileFunction& q) {
  require_same_grid(p, q);
  return midpoint_l2(h_profile(e, p), h_profile(e, q));
}

double dist_h_quantile(const EntropyModel& e, const GridDensity& p, const GridDensity& q,
                       std::size_t m) {
  return dist_h_quantile(e, quantile(p, m), quantile(q, m));
}

MongeMap monge_map(const GridDensity& p, const GridDensity& q) {
  const CdfFunction fp = cdf(p);
  const CdfFunction fq = cdf(q);
  const auto qv = q.values();
  const auto y = fq.knots();

  MongeMap map;
  map.source_grid = q.nodes();
  map.values.resize(y.size());
  map.derivative.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto inv = fp.invert(y[i]);
    map.values[i] = inv.x;
    map.derivative[i] = qv[i] / density_at(p, inv);
  }
  return map;
}

double dist_h_map(const EntropyModel& e, const GridDensity& p, const GridDensity& q) {
  const MongeMap map = monge_map(p, q);
  const auto qv = q.values();
  std::vector<double> integrand(qv.size());
  for (std::size_t i = 0; i < qv.size(); ++i) {
    const double d = h_eval(e, map.derivative[i] / qv[i]) - h_eval(e, 1.0 / qv[i]);
    integrand[i] = d * d * qv[i];
  }
  return std::sqrt(trapezoid(integrand, q.step()));
}

double dist_wasserstein(const GridDensity& p, const GridDensity& q, std::size_t m) {
  const QuantileFunction qp = quantile(p, m);
  const QuantileFunction qq = quantile(q, m);
  return midpoint_l2(qp.values(), qq.values());
}

double dist_hellinger(const GridDensity& p, const GridDensity& q) {
  std::vector<double> breaks = p.nodes();
  const std::vector<double> q_nodes = q.nodes();
  breaks.insert(breaks.end(), q_nodes.begin(), q_nodes.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Each density is zero on pieces outside its support; inside, the node
  // values at the piece ends are interpolated.
  const auto piece_values = [](const GridDensity& d, double a, double b) {
    const double mid = 0.5 * (a + b);
    if (mid < d.support_lo() || mid > d.support_hi()) return std::pair{0.0, 0.0};
    return std::pair{d.evaluate(a), d.evaluate(b)};
  };

  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    const auto [pa, pb] = piece_values(p, a, b);
    const auto [qa, qb] = piece_values(q, a, b);
    const double ga = std::sqrt(pa) - std::sqrt(qa);
    const double gb = std::sqrt(pb) - std::sqrt(qb);
    sum += 0.5 * (b - a) * (ga * ga + gb * gb);
  }
  return std::sqrt(sum);
}

GeodesicPath geodesic(const EntropyModel& e, const GridDensity& p, const GridDensity& q,
                      std::span<const double> t_grid, std::size_t m) {
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "geodesic time " + std::to_string(t) +
                                                  " is outside [0, 1]");
    }
  }
  const QuantileFunction qp = quantile(p, m);
  const QuantileFunction qq = quantile(q, m);
  const std::vector<double> hp = h_profile(e, qp);
  const std::vector<double> hq = h_profile(e, qq);
  const double inv_m = 1.0 / static_cast<double>(m);

  // F^{-1} extrapolated from the first midpoint to y = 0.
  const double start_p = qp.values()[0] - 0.5 * inv_m * qp.derivative()[0];
  const double start_q = qq.values()[0] - 0.5 * inv_m * qq.derivative()[0];

  GeodesicPath path;
  path.t_grid.assign(t_grid.begin(), t_grid.end());
  path.quantiles.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t == 0.0) {
      path.quantiles.push_back(qq);
      continue;
    }
    if (t == 1.0) {
      path.quantiles.push_back(qp);
      continue;
    }
    std::vector<double> derivative(m);
    for (std::size_t j = 0; j < m; ++j) derivative[j] = e.h_inverse(t * hp[j] + (1.0 - t) * hq[j]);

    std::vector<double> values(m);
    double x = t * start_p + (1.0 - t) * start_q;
    for (std::size_t j = 0; j < m; ++j) {
      values[j] = x + 0.5 * inv_m * derivative[j];
      x += inv_m * derivative[j];
    }
    path.quantiles.emplace_back(std::move(values), std::move(derivative));
  }
  return path;
}

}  // namespace hessdist

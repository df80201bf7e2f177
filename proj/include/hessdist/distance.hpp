#pragma once

// Transport information Hessian distances between 1-D densities, plus the
// Wasserstein and Hellinger distances they are compared against.
//
// Dist_H(p, q)^2 = \int_0^1 |h(dF_p^{-1}/dy) - h(dF_q^{-1}/dy)|^2 dy
//               = \int |h(T'(x)/q(x)) - h(1/q(x))|^2 q(x) dx,  T = F_p^{-1} o F_q.
//
// Dist_H vanishes exactly on translates, so it is a pseudo-metric.
//
// y-integrals use the midpoint rule on the shared quantile grid; x-integrals
// use the trapezoid rule on the density's own grid.

#include <cstddef>
#include <span>
#include <vector>

#include "hessdist/density.hpp"
#include "hessdist/entropy.hpp"

namespace hessdist {

// Monotone transport map T = F_p^{-1} o F_q pushing q forward to p, sampled on
// q's grid.
struct MongeMap {
  std::vector<double> source_grid;
  std::vector<double> values;
  std::vector<double> derivative;
};

struct GeodesicPath {
  std::vector<double> t_grid;
  std::vector<QuantileFunction> quantiles;
};

// h applied to each quantile derivative.
std::vector<double> h_profile(const EntropyModel& e, const QuantileFunction& q);

double dist_h_quantile(const EntropyModel& e, const GridDensity& p, const GridDensity& q,
                       std::size_t m);
// Same distance from precomputed quantile data on a common grid.
double dist_h_quantile(const EntropyModel& e, const QuantileFunction& p, const QuantileFunction& q);

double dist_h_map(const EntropyModel& e, const GridDensity& p, const GridDensity& q);

MongeMap monge_map(const GridDensity& p, const GridDensity& q);

double dist_wasserstein(const GridDensity& p, const GridDensity& q, std::size_t m);

double dist_hellinger(const GridDensity& p, const GridDensity& q);

// Hessian geodesic from q (t = 0) to p (t = 1). Along the path
// h(dF_t^{-1}/dy) = t h(dF_p^{-1}/dy) + (1 - t) h(dF_q^{-1}/dy); the
// quantile values start at the interpolated support lower bound.
GeodesicPath geodesic(const EntropyModel& e, const GridDensity& p, const GridDensity& q,
                      std::span<const double> t_grid, std::size_t m);

}  // namespace hessdist

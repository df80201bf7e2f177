#include "hessdist/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hessdist/distance.hpp"
#include "hessdist/error.hpp"

namespace hessdist {

TangentPerturbation::TangentPerturbation(const GridDensity& p, std::vector<double> values)
    : lo_(p.support_lo()), hi_(p.support_hi()), values_(std::move(values)) {
  if (values_.size() != p.values().size()) {
    throw Error(ErrorCode::InvalidArgument, "perturbation has " + std::to_string(values_.size()) +
                                                " nodes, density has " +
                                                std::to_string(p.values().size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite perturbation");
  }
  const double mass = trapezoid(values_, p.step());
  if (std::abs(mass) > kMeanZeroTolerance) {
    throw Error(ErrorCode::NotMeanZero,
                "perturbation integrates to " + std::to_string(mass) + ", expected 0");
  }
}

TangentPerturbation cosine_perturbation(const GridDensity& p) {
  const double length = p.support_length();
  const double k = std::numbers::pi / length;
  std::vector<double> values(p.values().size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = k * k * std::cos(k * (p.node(i) - p.support_lo()));
  }
  return TangentPerturbation(p, std::move(values));
}

TangentPotential solve_potential(const GridDensity& p, const TangentPerturbation& s) {
  if (s.values().size() != p.values().size() || s.support_lo() != p.support_lo() ||
      s.support_hi() != p.support_hi()) {
    throw Error(ErrorCode::InvalidArgument, "perturbation is not on the density's grid");
  }
  const auto pv = p.values();
  const auto sv = s.values();
  const std::size_t n = pv.size();
  const double h = p.step();

  // p Phi' = -\int_lo^x s, which vanishes at both ends because s has zero mass.
  TangentPotential out;
  out.gradient.resize(n);
  double mass = 0.0;
  out.gradient[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    mass += 0.5 * h * (sv[i - 1] + sv[i]);
    out.gradient[i] = -mass / pv[i];
  }

  const auto& g = out.gradient;
  out.hessian_diag.resize(n);
  out.hessian_diag[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out.hessian_diag[i] = (g[i + 1] - g[i - 1]) / (2.0 * h);
  out.hessian_diag[n - 1] = (3.0 * g[n - 1] - 4.0 * g[n - 2] + g[n - 3]) / (2.0 * h);
  return out;
}

double hessian_form(const EntropyModel& e, const GridDensity& p, const TangentPerturbation& s) {
  const TangentPotential phi = solve_potential(p, s);
  const auto pv = p.values();
  std::vector<double> integrand(pv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const double d2 = phi.hessian_diag[i];
    integrand[i] = d2 * d2 * e.f_second(pv[i]) * pv[i] * pv[i];
  }
  return trapezoid(integrand, p.step());
}

std::vector<TaylorSample> taylor_residual(const EntropyModel& e, const GridDensity& p,
                                          const TangentPerturbation& s,
                                          std::span<const double> eps_list,
                                          std::size_t quantile_nodes) {
  std::vector<double> eps(eps_list.begin(), eps_list.end());
  for (double v : eps) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "perturbation sizes must be positive");
    }
  }
  std::sort(eps.begin(), eps.end(), std::greater<>());

  const std::size_t m = quantile_nodes != 0 ? quantile_nodes
                                            : std::max(kMinQuantileNodes, p.intervals());
  const double form = hessian_form(e, p, s);
  const QuantileFunction base = quantile(p, m);
  const auto pv = p.values();
  const auto sv = s.values();

  std::vector<TaylorSample> out;
  out.reserve(eps.size());
  for (double v : eps) {
    std::vector<double> perturbed(pv.size());
    for (std::size_t i = 0; i < pv.size(); ++i) perturbed[i] = pv[i] + v * sv[i];
    GridDensity moved = [&] {
      try {
        return build_density(perturbed, p.support_lo(), p.support_hi(), Normalization::Rescale);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NonPositiveDensity) throw;
        throw Error(ErrorCode::PerturbedDensityInvalid,
                    "p + eps s loses positivity at eps = " + std::to_string(v));
      }
    }();
    const double d = dist_h_quantile(e, base, quantile(moved, m));
    out.push_back({v, std::abs(d * d / (v * v) - form)});
  }
  return out;
}

}  // namespace hessdist

#pragma once

// Hessian bilinear form of an f-entropy in Wasserstein space,
//
//   Hess F(p)(s, s) = \int |Phi''(x)|^2 f''(p(x)) p(x)^2 dx,
//   s = -(p Phi')',  Neumann boundary conditions,
//
// and the Taylor check Dist_H(p, p + eps s)^2 / eps^2 -> Hess F(p)(s, s).

#include <cstddef>
#include <span>
#include <vector>

#include "hessdist/density.hpp"
#include "hessdist/entropy.hpp"

namespace hessdist {

// Mean-zero perturbation on a density's grid.
class TangentPerturbation {
 public:
  // Throws NotMeanZero unless the trapezoid integral vanishes within 1e-10.
  TangentPerturbation(const GridDensity& p, std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
  std::vector<double> values_;
};

// Phi' and Phi'' on the grid. Phi itself is never needed.
struct TangentPotential {
  std::vector<double> gradient;
  std::vector<double> hessian_diag;
};

struct TaylorSample {
  double eps;
  double residual;
};

inline constexpr double kMeanZeroTolerance = 1e-10;

// s(x) = (pi/L)^2 cos(pi (x - lo) / L); its potential is Phi = cos(pi (x - lo) / L)
// for the uniform density on a support of length L.
TangentPerturbation cosine_perturbation(const GridDensity& p);

TangentPotential solve_potential(const GridDensity& p, const TangentPerturbation& s);

double hessian_form(const EntropyModel& e, const GridDensity& p, const TangentPerturbation& s);

// |Dist_H(p, p + eps s)^2 / eps^2 - Hess F(p)(s, s)| for each eps, sorted by
// decreasing eps. quantile_nodes == 0 uses the density's interval count.
std::vector<TaylorSample> taylor_residual(const EntropyModel& e, const GridDensity& p,
                                          const TangentPerturbation& s,
                                          std::span<const double> eps_list,
                                          std::size_t quantile_nodes = 0);

}  // namespace hessdist

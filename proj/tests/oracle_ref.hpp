// Test-side reference implementations, independent of the library's
// transform kernels: pointwise normalized Legendre evaluation, direct
// quadrature projections, and finite-difference curvatures.
#pragma once

#include <cassert>
#include <cmath>
#include <numbers>
#include <random>

#include "sphext/basis.hpp"
#include "sphext/field.hpp"
#include "sphext/functionals.hpp"
#include "sphext/oracle.hpp"

namespace refimpl {

// Normalized associated Legendre P̄_l^m(x) by the ascending recurrence,
// Condon-Shortley phase, unit-norm real harmonic normalization.
inline double plegendre(int l, int m, double x) {
  assert(m >= 0 && m <= l && std::abs(x) <= 1.0);
  double pmm = 1.0;
  if (m > 0) {
    const double omx2 = (1.0 - x) * (1.0 + x);
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= omx2 * fact / (fact + 1.0);
      fact += 2.0;
    }
  }
  pmm = std::sqrt((2.0 * m + 1.0) * pmm / (4.0 * std::numbers::pi));
  if (m & 1) pmm = -pmm;
  if (l == m) return pmm;
  double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1) return pmmp1;
  double oldfact = std::sqrt(2.0 * m + 3.0);
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double fact = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - static_cast<double>(m) * m));
    pll = (x * pmmp1 - pmm / oldfact) * fact;
    oldfact = fact;
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

inline double harmonic(int l, int m, double mu, double lon) {
  if (m == 0) return plegendre(l, 0, mu);
  const double r = std::numbers::sqrt2 * plegendre(l, std::abs(m), mu);
  return m > 0 ? r * std::cos(m * lon) : r * std::sin(-m * lon);
}

// Pointwise expansion value at an arbitrary (mu, lon), bypassing the grid.
inline double field_value(const sphext::SpectralField& w, double mu, double lon) {
  double v = 0.0;
  for (int l = 1; l <= w.truncation(); ++l)
    for (int m = -l; m <= l; ++m)
      if (w(l, m) != 0.0) v += w(l, m) * harmonic(l, m, mu, lon);
  return v;
}

// Direct quadrature projection <f, psi_lm> using only the tables' nodes,
// weights, and longitude spacing.
inline double projection(const sphext::GridField& f, const sphext::BasisTables& t, int l, int m) {
  double s = 0.0;
  for (int j = 0; j < t.n_lat(); ++j) {
    double row = 0.0;
    for (int k = 0; k < t.n_lon(); ++k)
      row += f.at(j, k) * harmonic(l, m, t.gauss_nodes()[j], t.delta_lon() * k);
    s += t.gauss_weights()[j] * row;
  }
  return s * t.delta_lon();
}

inline sphext::SpectralField random_field(int truncation, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  sphext::SpectralField w(truncation);
  for (double& v : w.coeffs()) v = gauss(rng);
  return w;
}

// Second difference of the pseudo-energy along the sphere through `base`
// in coordinate direction (l, m), using the radial retraction.
inline double fd_curvature(const sphext::SpectralField& base, const sphext::ModelParams& p,
                           int l, int m, double h = 1e-4) {
  const double q = base.norm2();
  auto at = [&](double s) {
    sphext::SpectralField w = base;
    w(l, m) += s;
    return sphext::pseudo_energy(sphext::project_to_sphere(w, q), p);
  };
  return (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
}

}  // namespace refimpl

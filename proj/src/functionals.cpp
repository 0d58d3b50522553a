#include "sphext/functionals.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sphext/errors.hpp"

namespace sphext {

void ModelParams::validate() const {
  if (!(q_rel > 0.0) || !std::isfinite(q_rel))
    throw std::invalid_argument("ModelParams: q_rel must be positive and finite");
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("ModelParams: omega must be non-negative and finite");
  if (std::abs(c_const - k_cos_norm) > 1e-12)
    throw std::invalid_argument("ModelParams: c_const must equal ||cos theta||_2");
}

double kinetic_energy(const SpectralField& w) {
  double e = 0.0;
  for (int l = 1; l <= w.truncation(); ++l) {
    const double inv = 1.0 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) {
      const double a = w(l, m);
      e += a * a * inv;
    }
  }
  return 0.5 * e;
}

double angular_momentum(const SpectralField& w, const ModelParams& p) {
  return 0.5 * w(1, 0) * p.c_const;
}

double physical_momentum(const SpectralField& w, const ModelParams& p) {
  return w(1, 0) * p.c_const;
}

double pseudo_energy(const SpectralField& w, const ModelParams& p) {
  return kinetic_energy(w) + p.omega * angular_momentum(w, p);
}

double shifted_energy(const SpectralField& w, const ModelParams& p) {
  const double oc = p.omega * p.c_const;
  const double a10 = w(1, 0) + oc;
  double e = 0.25 * a10 * a10 + 0.25 * (w(1, 1) * w(1, 1) + w(1, -1) * w(1, -1));
  for (int l = 2; l <= w.truncation(); ++l) {
    const double inv = 0.5 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) {
      const double a = w(l, m);
      e += a * a * inv;
    }
  }
  return e;
}

Enstrophies enstrophies(const SpectralField& w, const ModelParams& p) {
  const double rel = w.norm2();
  const double oc = p.omega * p.c_const;
  const double total = rel + 4.0 * p.omega * physical_momentum(w, p) + 4.0 * oc * oc;
  return {rel, total};
}

MomentumBound check_momentum_bound(const SpectralField& w, const ModelParams& p) {
  const double rel = w.norm2();
  if (std::abs(rel - p.q_rel) > 1e-8) {
    std::ostringstream msg;
    msg << "check_momentum_bound: ||w||^2 = " << rel << " does not match q_rel = " << p.q_rel;
    throw constraint_error(msg.str());
  }
  MomentumBound b;
  b.moment = physical_momentum(w, p);
  b.bound = p.c_const * std::sqrt(p.q_rel);
  b.gap = b.bound - std::abs(b.moment);
  b.tight = b.gap < 1e-10 * std::max(1.0, b.bound);
  if (b.gap < -1e-10 * std::max(1.0, b.bound))
    throw std::logic_error("check_momentum_bound: Cauchy-Schwarz bound violated");
  return b;
}

FunctionalReport evaluate_functionals(const SpectralField& w, const ModelParams& p) {
  FunctionalReport r;
  r.energy_E = kinetic_energy(w);
  r.angular_momentum_Lambda = angular_momentum(w, p);
  r.pseudo_energy_H = r.energy_E + p.omega * r.angular_momentum_Lambda;
  r.shifted_H = shifted_energy(w, p);
  const auto ens = enstrophies(w, p);
  r.rel_enstrophy = ens.rel;
  r.total_enstrophy = ens.total;
  r.circulation = 0.0;  // structurally zero: no l = 0 coefficient
  return r;
}

}  // namespace sphext

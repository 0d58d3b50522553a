#pragma once

#include <cmath>
#include <numbers>

#include "sphext/field.hpp"

namespace sphext {

/// L2 norm of cos(colatitude) on the unit sphere, C = sqrt(4 pi / 3).
inline const double k_cos_norm = std::sqrt(4.0 * std::numbers::pi / 3.0);

/// Spin rate and enstrophy budget of one model configuration.
struct ModelParams {
  double omega = 0.0;        // spin rate, >= 0
  double q_rel = 1.0;        // relative enstrophy budget, > 0
  double c_const = k_cos_norm;

  void validate() const;
};

/// All scalar diagnostics of one state at given parameters.
struct FunctionalReport {
  double energy_E;
  double angular_momentum_Lambda;
  double pseudo_energy_H;
  double shifted_H;
  double rel_enstrophy;
  double total_enstrophy;
  double circulation;
};

/// Kinetic energy of relative motion, (1/2) sum alpha^2 / [l(l+1)] >= 0.
double kinetic_energy(const SpectralField& w);

/// Net angular momentum functional Lambda = alpha_10 C / 2.
double angular_momentum(const SpectralField& w, const ModelParams& p);

/// Physical momentum <w, cos(theta)> = alpha_10 C (unit mass density).
double physical_momentum(const SpectralField& w, const ModelParams& p);

/// Pseudo-energy H = E + Omega Lambda.
double pseudo_energy(const SpectralField& w, const ModelParams& p);

/// Shifted positive-definite quadratic form, H - H0 with H0 = -Omega^2 C^2 / 4:
/// (1/4)[alpha_10 + Omega C]^2 + (1/4)[alpha_11^2 + alpha_1-1^2]
///   + (1/2) sum_{l>1} alpha^2 / [l(l+1)].
double shifted_energy(const SpectralField& w, const ModelParams& p);

struct Enstrophies {
  double rel;    // sum alpha^2
  double total;  // rel + 4 Omega alpha_10 C + 4 Omega^2 C^2
};
Enstrophies enstrophies(const SpectralField& w, const ModelParams& p);

/// Momentum bound |<w, cos(theta)>| <= C sqrt(Q_rel) on the enstrophy
/// sphere; gap = 0 exactly when w is proportional to the l=1 zonal mode.
struct MomentumBound {
  double moment;
  double bound;
  double gap;
  bool tight;
};

/// Requires ||w||^2 = Q_rel within 1e-8; throws constraint_error otherwise.
MomentumBound check_momentum_bound(const SpectralField& w, const ModelParams& p);

FunctionalReport evaluate_functionals(const SpectralField& w, const ModelParams& p);

}  // namespace sphext

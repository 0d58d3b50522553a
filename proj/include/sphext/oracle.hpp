#pragma once

#include <string>
#include <vector>

#include "sphext/extremal.hpp"
#include "sphext/field.hpp"
#include "sphext/functionals.hpp"

namespace sphext {

/// Radial projection w -> w * sqrt(q_rel)/||w|| onto the enstrophy sphere.
/// Throws std::invalid_argument on the zero field.
SpectralField project_to_sphere(const SpectralField& w, double q_rel);

/// Euclidean gradient of the pseudo-energy in coefficient space.
SpectralField energy_gradient(const SpectralField& w, const ModelParams& p);

enum class Direction { Ascend, Descend };

struct OracleOptions {
  Direction direction = Direction::Ascend;
  double step = 1.0;
  double tol = 1e-9;
  int max_iter = 20000;
  bool keep_trace = false;
};

struct TracePoint {
  int iteration;
  double energy;
  double gradient_norm;
};

struct OracleResult {
  bool converged = false;
  int iterations = 0;
  SpectralField final_state;
  double final_energy = 0.0;
  double gradient_norm = 0.0;
  double distance_to_analytic = 0.0;  // L2 distance to nearest of +-sqrt(Q) e_10
  double max_energy_seen = 0.0;
  ModelParams params;
  std::vector<TracePoint> trace;  // filled when keep_trace
};

/// Projected-gradient extremization of H on ||w||^2 = q_rel: tangent step,
/// radial retraction, fixed base step with halving on non-improvement.
/// Deterministic for a given init. Non-convergence is reported in the
/// result, not thrown.
OracleResult extremize_on_sphere(const ModelParams& p, const SpectralField& init,
                                 const OracleOptions& opts);

struct Curvature {
  int l;
  int m;
  double value;
};

/// Diagonal tangent curvatures of H + lambda* Gamma_rel at a constrained
/// stationary point; sign pattern realizes the min/saddle/special-saddle
/// geometry of the counter-rotating state.
struct HessianSpectrum {
  SpectralField base;
  double lambda_star;
  double residual;  // first-order stationarity residual
  std::vector<Curvature> curvatures;
  int positive_count = 0;
  int negative_count = 0;
  int zero_count = 0;  // |c| < 1e-10
};

/// Requires the base to be stationary (residual < 1e-8) for the multiplier
/// recovered from the first-order condition; throws std::invalid_argument
/// with the residual otherwise.
HessianSpectrum projected_hessian(const SpectralField& base, const ModelParams& p);

struct Verification {
  bool ok = false;
  std::string reason;
  double state_distance = 0.0;
  double energy_difference = 0.0;
};

/// Oracle-vs-closed-form check: true iff the oracle converged to within
/// 1e-5 of the report's state with energy within 1e-6. With Omega = 0 the
/// maximizer set is the whole l = 1 shell, so only the energy is compared.
Verification verify_against_analytic(const OracleResult& oracle, const ExtremalReport& report);

/// Deterministic random state on the enstrophy sphere (normal coefficients,
/// radially projected).
SpectralField random_sphere_point(int truncation, double q_rel, unsigned seed);

}  // namespace sphext

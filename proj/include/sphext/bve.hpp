#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "sphext/basis.hpp"
#include "sphext/extremal.hpp"
#include "sphext/field.hpp"
#include "sphext/functionals.hpp"

namespace sphext {

/// Spectral coefficients of the advection Jacobian
///   J(psi, q) = d(psi)/dlon dq/dmu - d(psi)/dmu dq/dlon,
/// computed pseudospectrally on the dealiased grid, so the result is the
/// exact Galerkin projection onto degrees <= psi.truncation(). Both inputs
/// must share a truncation no larger than the tables'.
SpectralField jacobian(const SpectralField& psi, const SpectralField& q, const BasisTables& t);

/// Time series of a run: states are kept at sample points only; monitors
/// are the pseudo-energy, total enstrophy, angular momentum, and the
/// energy-enstrophy perturbation norm Q1/Q2 relative to a base state
/// (the initial state unless a different base is declared).
struct TrajectoryLog {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<double> pseudo_energy;
  std::vector<double> total_enstrophy;
  std::vector<double> angular_momentum;
  std::vector<double> q1;
  std::vector<double> q2;
  bool blow_up = false;
  bool filter_enabled = false;
  ModelParams params;
  int truncation = 0;
  double dt = 0.0;

  const SpectralField& final_state() const { return states.back(); }
};

struct IntegrateOptions {
  double dt = 1e-3;     // nonzero; negative integrates backward in time
  double t_end = 10.0;  // same sign as dt
  int sample_every = 10;
  bool spectral_filter = false;  // exponential cutoff above 0.9 L; off by default
  std::optional<SpectralField> base;  // reference state for Q1/Q2
};

/// Classic RK4 on dw/dt = -J(G w, w + 2 Omega cos(theta)). Aborts with a
/// partial log and blow_up = true if the state leaves the finite range.
TrajectoryLog integrate(const SpectralField& w0, const ModelParams& p, const BasisTables& t,
                        const IntegrateOptions& opts);

/// Energy-enstrophy perturbation norms of a deviation field:
/// q1 = dev_10^2/4 + (1/2) sum_{lm != 10} dev^2/[l(l+1)], q2 = ||dev||^2.
std::pair<double, double> perturbation_norms(const SpectralField& state, const SpectralField& base);

struct PerturbationSpec {
  enum class Base { WMax, WMin, Custom };
  Base base = Base::WMax;
  std::vector<std::tuple<int, int, double>> modes;  // (l, m, amplitude)
  bool randomize_phases = false;  // split each |m| > 0 amplitude by a random phase
  unsigned seed = 42;
  std::optional<SpectralField> custom_base;
};

/// Builds the perturbation field alone (degrees >= 1 only, so the result is
/// circulation-free by construction).
SpectralField build_perturbation(const PerturbationSpec& spec, int truncation);

enum class ProbeVerdict { Stable, Unstable, Indeterminate };
std::string to_string(ProbeVerdict v);

struct ProbeResult {
  TrajectoryLog log;
  ProbeVerdict verdict = ProbeVerdict::Indeterminate;
  double max_norm_ratio = 0.0;      // sup_t (q1+q2)(t) / (q1+q2)(0)
  double tilt_growth_factor = 0.0;  // growth of the (1,+-1)-restricted deviation
  double total_growth_factor = 0.0; // growth of ||deviation||^2
};

/// Perturbs an analytic extremal and integrates, monitoring the Arnold
/// energy-enstrophy norm. Stable: sup (q1+q2) <= 1.05 x initial. Unstable:
/// tilt-restricted or total deviation grows by a factor >= 10.
ProbeResult stability_probe(const PerturbationSpec& spec, const ModelParams& p,
                            const BasisTables& t, const IntegrateOptions& opts);

}  // namespace sphext

#include "sphext/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sphext {

SpectralField project_to_sphere(const SpectralField& w, double q_rel) {
  if (!(q_rel > 0.0)) throw std::invalid_argument("project_to_sphere: q_rel must be positive");
  const double n2 = w.norm2();
  if (n2 == 0.0 || !std::isfinite(n2))
    throw std::invalid_argument("project_to_sphere: undefined for the zero field");
  SpectralField out = w;
  out *= std::sqrt(q_rel / n2);
  return out;
}

SpectralField energy_gradient(const SpectralField& w, const ModelParams& p) {
  SpectralField g(w.truncation());
  for (int l = 1; l <= w.truncation(); ++l) {
    const double inv = 1.0 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) g(l, m) = inv * w(l, m);
  }
  g(1, 0) += 0.5 * p.omega * p.c_const;
  return g;
}

namespace {

SpectralField tangent_part(const SpectralField& v, const SpectralField& w, double q_rel) {
  SpectralField t = v;
  t.axpy(-dot(v, w) / q_rel, w);
  return t;
}

}  // namespace

OracleResult extremize_on_sphere(const ModelParams& p, const SpectralField& init,
                                 const OracleOptions& opts) {
  p.validate();
  if (!(opts.step > 0.0)) throw std::invalid_argument("extremize_on_sphere: step must be > 0");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("extremize_on_sphere: tol must be > 0");
  if (opts.max_iter < 0) throw std::invalid_argument("extremize_on_sphere: max_iter must be >= 0");

  const double sign = (opts.direction == Direction::Ascend) ? 1.0 : -1.0;
  SpectralField w = project_to_sphere(init, p.q_rel);

  OracleResult res;
  res.params = p;
  double energy = pseudo_energy(w, p);
  res.max_energy_seen = energy;

  int it = 0;
  for (;; ++it) {
    const SpectralField gt = tangent_part(energy_gradient(w, p), w, p.q_rel);
    const double gn = std::sqrt(gt.norm2());
    if (opts.keep_trace) res.trace.push_back({it, energy, gn});
    if (gn < opts.tol) {
      res.converged = true;
      res.gradient_norm = gn;
      break;
    }
    if (it >= opts.max_iter) {
      res.gradient_norm = gn;
      break;
    }

    // Fixed base step, halved while the move loses ground (beyond a
    // roundoff allowance); after 40 halvings take the candidate as-is.
    double s = opts.step;
    SpectralField cand(w.truncation());
    double cand_energy = 0.0;
    for (int halvings = 0;; ++halvings) {
      SpectralField trial = w;
      trial.axpy(sign * s, gt);
      cand = project_to_sphere(trial, p.q_rel);
      cand_energy = pseudo_energy(cand, p);
      const double allowance = 1e-14 * (1.0 + std::abs(energy));
      const bool improved = (opts.direction == Direction::Ascend)
                                ? cand_energy >= energy - allowance
                                : cand_energy <= energy + allowance;
      if (improved || halvings >= 40) break;
      s *= 0.5;
    }
    w = cand;
    energy = cand_energy;
    if (energy > res.max_energy_seen) res.max_energy_seen = energy;
  }

  res.iterations = it;
  res.final_state = w;
  res.final_energy = energy;
  const double sq = std::sqrt(p.q_rel);
  SpectralField dplus = w, dminus = w;
  dplus(1, 0) -= sq;
  dminus(1, 0) += sq;
  res.distance_to_analytic = std::sqrt(std::min(dplus.norm2(), dminus.norm2()));
  return res;
}

HessianSpectrum projected_hessian(const SpectralField& base, const ModelParams& p) {
  p.validate();
  const double q = base.norm2();
  if (!(q > 0.0)) throw std::invalid_argument("projected_hessian: zero base state");

  const SpectralField g = energy_gradient(base, p);
  const double lambda_star = -dot(g, base) / (2.0 * q);
  SpectralField resid = g;
  resid.axpy(2.0 * lambda_star, base);
  const double residual = std::sqrt(resid.norm2());
  if (residual >= 1e-8) {
    std::ostringstream msg;
    msg << "projected_hessian: base is not stationary (residual " << residual << ")";
    throw std::invalid_argument(msg.str());
  }

  HessianSpectrum spec;
  spec.base = base;
  spec.lambda_star = lambda_star;
  spec.residual = residual;

  const int L = base.truncation();
  const double hess_on_base = 2.0 * kinetic_energy(base);  // sum base^2 / [l(l+1)]
  for (int l = 1; l <= L; ++l) {
    const double h_l = 1.0 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) {
      // Coordinate direction with its radial component removed:
      // v = e_lm - (b/q) base.
      const double b = base(l, m);
      const double vnorm2 = 1.0 - b * b / q;
      if (vnorm2 < 1e-12) continue;  // the radial direction itself
      const double f = b / q;
      const double hv = h_l - 2.0 * f * b * h_l + f * f * hess_on_base;
      const double c = hv / vnorm2 + 2.0 * lambda_star;
      spec.curvatures.push_back({l, m, c});
      if (std::abs(c) < 1e-10)
        ++spec.zero_count;
      else if (c > 0.0)
        ++spec.positive_count;
      else
        ++spec.negative_count;
    }
  }
  return spec;
}

Verification verify_against_analytic(const OracleResult& oracle, const ExtremalReport& report) {
  if (std::abs(oracle.params.omega - report.params.omega) > 1e-12 ||
      std::abs(oracle.params.q_rel - report.params.q_rel) > 1e-12)
    throw std::invalid_argument("verify_against_analytic: parameter mismatch");

  Verification v;
  v.energy_difference = std::abs(oracle.final_energy - report.energy_original);
  if (oracle.final_state.truncation() == report.state.truncation()) {
    SpectralField d = oracle.final_state;
    d -= report.state;
    v.state_distance = std::sqrt(d.norm2());
  } else {
    SpectralField d = retruncate(oracle.final_state,
                                 std::max(oracle.final_state.truncation(), report.state.truncation()));
    d -= retruncate(report.state, d.truncation());
    v.state_distance = std::sqrt(d.norm2());
  }

  if (!oracle.converged) {
    v.reason = "not converged";
    return v;
  }
  if (oracle.params.omega == 0.0) {
    // Degenerate maximizer set: the whole l = 1 shell. Energy decides.
    v.ok = v.energy_difference < 1e-6;
    if (!v.ok) v.reason = "energy mismatch";
    return v;
  }
  if (v.state_distance >= 1e-5) {
    v.reason = "state distance too large";
    return v;
  }
  if (v.energy_difference >= 1e-6) {
    v.reason = "energy mismatch";
    return v;
  }
  v.ok = true;
  return v;
}

SpectralField random_sphere_point(int truncation, double q_rel, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField w(truncation);
  for (double& v : w.coeffs()) v = gauss(rng);
  return project_to_sphere(w, q_rel);
}

}  // namespace sphext

#include "sphext/bve.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sphext {

SpectralField jacobian(const SpectralField& psi, const SpectralField& q, const BasisTables& t) {
  if (psi.truncation() != q.truncation())
    throw std::invalid_argument("jacobian: truncation mismatch between psi and q");
  if (psi.truncation() > t.truncation())
    throw std::invalid_argument("jacobian: truncation exceeds the basis tables");

  const GridField dpsi_lon = synthesize_lon_derivative(psi, t);
  const GridField vpsi = synthesize_mu_derivative(psi, t);
  const GridField dq_lon = synthesize_lon_derivative(q, t);
  const GridField vq = synthesize_mu_derivative(q, t);

  // Pointwise (psi_lon q_mu - psi_mu q_lon); the (1 - mu^2) factor of the
  // mu-derivative synthesis divides back out at the interior Gauss nodes.
  GridField jg(t.n_lat(), t.n_lon());
  const auto mu = t.gauss_nodes();
  const int nlat = t.n_lat(), nlon = t.n_lon();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nlat; ++j) {
    const double inv = 1.0 / ((1.0 - mu[j]) * (1.0 + mu[j]));
    const std::size_t o = static_cast<std::size_t>(j) * nlon;
    for (int k = 0; k < nlon; ++k)
      jg.values[o + k] =
          (dpsi_lon.values[o + k] * vq.values[o + k] - vpsi.values[o + k] * dq_lon.values[o + k]) *
          inv;
  }

  SpectralField out = project_grid(jg, t);
  if (out.truncation() != psi.truncation()) out = retruncate(out, psi.truncation());
  return out;
}

std::pair<double, double> perturbation_norms(const SpectralField& state, const SpectralField& base) {
  if (state.truncation() != base.truncation())
    throw std::invalid_argument("perturbation_norms: truncation mismatch");
  double q1 = 0.0, q2 = 0.0;
  for (int l = 1; l <= state.truncation(); ++l) {
    const double inv = 0.5 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m) {
      const double d = state(l, m) - base(l, m);
      q2 += d * d;
      q1 += (l == 1 && m == 0) ? 0.25 * d * d : inv * d * d;
    }
  }
  return {q1, q2};
}

namespace {

// dw/dt = -J(G w, w + 2 Omega cos theta); the planetary term is the l=1
// zonal mode with coefficient 2 Omega C.
SpectralField bve_rhs(const SpectralField& w, const ModelParams& p, const BasisTables& t) {
  const SpectralField psi = apply_green(w);
  SpectralField q = w;
  q(1, 0) += 2.0 * p.omega * p.c_const;
  SpectralField j = jacobian(psi, q, t);
  j *= -1.0;
  return j;
}

void apply_spectral_filter(SpectralField& w) {
  const int L = w.truncation();
  const int lc = static_cast<int>(0.9 * L);
  if (lc >= L) return;
  for (int l = lc + 1; l <= L; ++l) {
    const double x = static_cast<double>(l - lc) / (L - lc);
    const double sigma = std::exp(-36.0 * x * x * x * x);
    for (int m = -l; m <= l; ++m) w(l, m) *= sigma;
  }
}

bool state_sane(const SpectralField& w) {
  for (double v : w.coeffs()) {
    if (!std::isfinite(v) || std::abs(v) > 1e12) return false;
  }
  return true;
}

}  // namespace

TrajectoryLog integrate(const SpectralField& w0, const ModelParams& p, const BasisTables& t,
                        const IntegrateOptions& opts) {
  p.validate();
  if (opts.dt == 0.0 || !std::isfinite(opts.dt))
    throw std::invalid_argument("integrate: dt must be nonzero and finite");
  if (opts.t_end * opts.dt <= 0.0)
    throw std::invalid_argument("integrate: t_end must have the sign of dt");
  if (opts.sample_every < 1)
    throw std::invalid_argument("integrate: sample_every must be >= 1");

  const long n_steps = std::lround(opts.t_end / opts.dt);
  const SpectralField base = opts.base ? *opts.base : w0;
  if (base.truncation() != w0.truncation())
    throw std::invalid_argument("integrate: base truncation mismatch");

  TrajectoryLog log;
  log.params = p;
  log.truncation = w0.truncation();
  log.dt = opts.dt;
  log.filter_enabled = opts.spectral_filter;

  auto record = [&](double time, const SpectralField& w) {
    log.times.push_back(time);
    log.states.push_back(w);
    log.pseudo_energy.push_back(pseudo_energy(w, p));
    log.total_enstrophy.push_back(enstrophies(w, p).total);
    log.angular_momentum.push_back(angular_momentum(w, p));
    const auto [q1, q2] = perturbation_norms(w, base);
    log.q1.push_back(q1);
    log.q2.push_back(q2);
  };

  SpectralField w = w0;
  record(0.0, w);

  const double dt = opts.dt;
  for (long step = 1; step <= n_steps; ++step) {
    const SpectralField k1 = bve_rhs(w, p, t);
    SpectralField s = w;
    s.axpy(0.5 * dt, k1);
    const SpectralField k2 = bve_rhs(s, p, t);
    s = w;
    s.axpy(0.5 * dt, k2);
    const SpectralField k3 = bve_rhs(s, p, t);
    s = w;
    s.axpy(dt, k3);
    const SpectralField k4 = bve_rhs(s, p, t);

    w.axpy(dt / 6.0, k1);
    w.axpy(dt / 3.0, k2);
    w.axpy(dt / 3.0, k3);
    w.axpy(dt / 6.0, k4);

    if (opts.spectral_filter) apply_spectral_filter(w);

    if (!state_sane(w)) {
      log.blow_up = true;
      record(step * dt, w);
      return log;
    }
    if (step % opts.sample_every == 0 || step == n_steps) record(step * dt, w);
  }
  return log;
}

SpectralField build_perturbation(const PerturbationSpec& spec, int truncation) {
  SpectralField dw(truncation);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (const auto& [l, m, amp] : spec.modes) {
    if (l < 1 || l > truncation || std::abs(m) > l)
      throw std::invalid_argument("build_perturbation: mode (l,m) out of range");
    if (spec.randomize_phases && m != 0) {
      const double eta = phase(rng);
      dw(l, std::abs(m)) += amp * std::cos(eta);
      dw(l, -std::abs(m)) += amp * std::sin(eta);
    } else {
      dw(l, m) += amp;
    }
  }
  return dw;
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Stable: return "Stable";
    case ProbeVerdict::Unstable: return "Unstable";
    case ProbeVerdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

ProbeResult stability_probe(const PerturbationSpec& spec, const ModelParams& p,
                            const BasisTables& t, const IntegrateOptions& opts) {
  p.validate();
  if (spec.base == PerturbationSpec::Base::Custom)
    throw std::invalid_argument("stability_probe: base must be an analytic extremal");

  const auto [max_report, min_report] = extremal_states(p, t.truncation());
  const SpectralField& base =
      (spec.base == PerturbationSpec::Base::WMax) ? max_report.state : min_report.state;

  SpectralField w0 = base;
  w0 += build_perturbation(spec, t.truncation());

  IntegrateOptions run = opts;
  run.base = base;
  ProbeResult res;
  res.log = integrate(w0, p, t, run);

  const double n0 = res.log.q1.front() + res.log.q2.front();
  const auto [t1_0, t2_0] = std::pair(res.log.states.front()(1, 1) - base(1, 1),
                                      res.log.states.front()(1, -1) - base(1, -1));
  const double tilt0 = t1_0 * t1_0 + t2_0 * t2_0;
  double max_ratio = 0.0, max_tilt = 0.0, max_total = 0.0;
  for (std::size_t i = 0; i < res.log.times.size(); ++i) {
    const double n = res.log.q1[i] + res.log.q2[i];
    if (n0 > 0.0) max_ratio = std::max(max_ratio, n / n0);
    const double d1 = res.log.states[i](1, 1) - base(1, 1);
    const double d2 = res.log.states[i](1, -1) - base(1, -1);
    max_tilt = std::max(max_tilt, d1 * d1 + d2 * d2);
    max_total = std::max(max_total, res.log.q2[i]);
  }
  res.max_norm_ratio = max_ratio;
  res.tilt_growth_factor = tilt0 > 0.0 ? max_tilt / tilt0 : 0.0;
  res.total_growth_factor = res.log.q2.front() > 0.0 ? max_total / res.log.q2.front() : 0.0;

  if (res.log.blow_up || res.tilt_growth_factor >= 10.0 || res.total_growth_factor >= 10.0)
    res.verdict = ProbeVerdict::Unstable;
  else if (res.max_norm_ratio <= 1.05)
    res.verdict = ProbeVerdict::Stable;
  else
    res.verdict = ProbeVerdict::Indeterminate;
  return res;
}

}  // namespace sphext

// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// gating criterion fails. Runs at desk scale (L = 21) in under a minute.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "oracle_ref.hpp"
#include "sphext/bve.hpp"
#include "sphext/extremal.hpp"
#include "sphext/functionals.hpp"
#include "sphext/oracle.hpp"

using namespace sphext;

namespace {

constexpr double pi = std::numbers::pi;
const double C = k_cos_norm;
const double C2 = C * C;  // 4 pi / 3

int g_failed = 0;

void record(const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %s  %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!ok) ++g_failed;
}

void info(const std::string& name, const std::string& detail) {
  std::printf("[INFO] %s  %s\n", name.c_str(), detail.c_str());
}

std::string qoi(double value, double threshold) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(val=%.3e, thr=%.1e)", value, threshold);
  return buf;
}

// A1: multipliers and branch energies over a 10x10 parameter grid.
void a1() {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double omega = 2.0 * i / 9.0;
      const double q = 1.0 * (j + 1);
      const ModelParams p{omega, q};
      const double sq = std::sqrt(q), oc = omega * C;

      const auto lam = multipliers(p);
      worst = std::max(worst, std::abs(lam.plus - (-0.25 * (1.0 + oc / sq))));
      worst = std::max(worst, std::abs(lam.minus - (-0.25 * (1.0 - oc / sq))));

      const auto [mx, mn] = extremal_states(p, 21);
      worst = std::max(worst, std::abs(mx.energy_original - (0.25 * q + 0.5 * oc * sq)));
      worst = std::max(worst, std::abs(mn.energy_original - (0.25 * q - 0.5 * oc * sq)));
      worst = std::max(worst, std::abs(mx.energy_original - pseudo_energy(mx.state, p)));
      worst = std::max(worst, std::abs(mn.energy_original - pseudo_energy(mn.state, p)));
      worst = std::max(worst, std::abs(mx.energy_shifted - shifted_energy(mx.state, p)));
      worst = std::max(worst, std::abs(mn.energy_shifted - shifted_energy(mn.state, p)));
    }
  }
  record("A1 closed-form multipliers and branch energies (10x10 grid)", worst < 1e-12,
         qoi(worst, 1e-12));
}

double el_residual(const SpectralField& w, double lambda, const ModelParams& p) {
  double r2 = 0.0;
  for (int l = 1; l <= w.truncation(); ++l) {
    const double op = -1.0 / (static_cast<double>(l) * (l + 1)) - 2.0 * lambda;
    for (int m = -l; m <= l; ++m) {
      double r = op * w(l, m);
      if (l == 1 && m == 0) r -= 0.5 * p.omega * p.c_const;
      r2 += r * r;
    }
  }
  return std::sqrt(r2);
}

// A2: stationarity residuals and bifurcation kernel dimensions.
void a2() {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const ModelParams p{2.0 * i / 9.0, 1.0 * (j + 1)};
      const auto [mx, mn] = extremal_states(p, 21);
      worst = std::max(worst, el_residual(mx.state, mx.lambda_rel, p));
      worst = std::max(worst, el_residual(mn.state, mn.lambda_rel, p));
    }
  }
  bool kernels_ok = true;
  for (int l = 2; l <= 5; ++l) {
    const auto sol = solve_euler_lagrange(-1.0 / (2.0 * l * (l + 1)), ModelParams{1.0, 1.0}, 21);
    kernels_ok = kernels_ok && sol.kind == ElSolution::Kind::BifurcationFamily &&
                 static_cast<int>(sol.kernel.size()) == 2 * l + 1;
  }
  record("A2 Euler-Lagrange residual < 1e-12 and kernel dims 2l+1 (l=2..5)",
         worst < 1e-12 && kernels_ok, qoi(worst, 1e-12));
}

// A3: projected-gradient ascent reaches the pro-rotating maximizer from 50
// random starts at four parameter sets.
void a3() {
  const int L = 21;
  double worst_dist = 0.0, worst_de = 0.0, worst_gn = 0.0;
  int failures = 0;
  const std::vector<ModelParams> sets = {
      {1.0, 1.0}, {1.0, 8.0 * pi / 3.0}, {1.0, 20.0 * pi / 3.0}, {0.1, 1.0}};
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const ModelParams& p = sets[s];
    const double sq = std::sqrt(p.q_rel);
    const double h_max = 0.25 * p.q_rel + 0.5 * p.omega * C * sq;
    for (unsigned seed = 0; seed < 50; ++seed) {
      OracleOptions opts;
      opts.direction = Direction::Ascend;
      opts.tol = 1e-9;
      const auto res =
          extremize_on_sphere(p, random_sphere_point(L, p.q_rel, 1000 * (s + 1) + seed), opts);
      SpectralField d = res.final_state;
      d(1, 0) -= sq;
      const double dist = std::sqrt(d.norm2());
      const double de = std::abs(res.final_energy - h_max);
      if (!res.converged || res.gradient_norm >= 1e-8 || dist >= 1e-5 || de >= 1e-6) ++failures;
      worst_dist = std::max(worst_dist, dist);
      worst_de = std::max(worst_de, de);
      worst_gn = std::max(worst_gn, res.gradient_norm);
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "(fails=%d/200, max dist=%.2e thr 1e-5, max dE=%.2e thr 1e-6, max g=%.2e thr 1e-8)",
                failures, worst_dist, worst_de, worst_gn);
  record("A3 oracle ascent equals the analytic maximizer (50 seeds x 4 params)", failures == 0,
         detail);
}

// A4: projected-Hessian sign patterns at the counter-rotating state in the
// three regimes, in closed form and against finite differences.
void a4() {
  const int L = 21;
  const int tangent_dim = static_cast<int>(SpectralField::coeff_count(L)) - 1;
  bool ok = true;
  double worst_fd = 0.0;
  struct Regime {
    double q;
    int expect_pos;
  };
  const int l_crit_mid = critical_degree(ModelParams{1.0, 2.0 * C2});  // = 2
  const std::vector<Regime> regimes = {
      {0.5 * C2, tangent_dim},
      {2.0 * C2, 3 + 5 - 1},   // degrees 1..l_crit, radial excluded
      {5.0 * C2, 2}};
  for (const auto& r : regimes) {
    const ModelParams p{1.0, r.q};
    const auto [mx, mn] = extremal_states(p, L);
    const auto spec = projected_hessian(mn.state, p);
    ok = ok && spec.positive_count == r.expect_pos &&
         spec.negative_count == tangent_dim - r.expect_pos && spec.zero_count == 0;
    for (const auto& cv : spec.curvatures) {
      const double fd = refimpl::fd_curvature(mn.state, p, cv.l, cv.m);
      worst_fd = std::max(worst_fd, std::abs(cv.value - fd));
    }
    // Sign flip exactly at the derived critical degree in the middle regime.
    if (r.q == 2.0 * C2) {
      for (const auto& cv : spec.curvatures)
        ok = ok && ((cv.l <= l_crit_mid) ? cv.value > 0.0 : cv.value < 0.0);
    }
  }
  record("A4 hessian sign patterns match the three regimes, closed form vs FD",
         ok && worst_fd < 1e-5, qoi(worst_fd, 1e-5));
}

// A5: threshold sweep in Q at fixed spin and the inverse sweep in spin.
void a5() {
  bool ok = true;
  const double ql = C2, qh = 4.0 * C2;  // Omega = 1
  ok = ok && classify_regime(ModelParams{1.0, ql * (1.0 - 1e-12)}).kind == RegimeKind::ConstrainedMin;
  ok = ok && classify_regime(ModelParams{1.0, ql * (1.0 + 1e-12)}).kind == RegimeKind::Saddle;
  ok = ok && classify_regime(ModelParams{1.0, qh * (1.0 - 1e-12)}).kind == RegimeKind::Saddle;
  ok = ok && classify_regime(ModelParams{1.0, qh * (1.0 + 1e-12)}).kind == RegimeKind::SpecialSaddle;
  ok = ok && std::abs(ql - 4.0 * pi / 3.0) < 1e-12;
  ok = ok && std::abs(qh - 16.0 * pi / 3.0) < 1e-12;

  // Inverse sweep: fixed Q, scanning the spin through omega_o = sqrt(Q)/C.
  const double q = 2.4;
  const double omega_o = std::sqrt(q) / C;
  ok = ok && std::abs(classify_regime(ModelParams{1.0, q}).omega_o - omega_o) < 1e-12;
  ok = ok &&
       classify_regime(ModelParams{omega_o * (1.0 + 1e-12), q}).kind == RegimeKind::ConstrainedMin;
  ok = ok && classify_regime(ModelParams{omega_o * (1.0 - 1e-12), q}).kind == RegimeKind::Saddle;
  ok = ok && classify_regime(ModelParams{0.5 * omega_o * (1.0 + 1e-12), q}).kind ==
                 RegimeKind::Saddle;
  ok = ok && classify_regime(ModelParams{0.5 * omega_o * (1.0 - 1e-12), q}).kind ==
                 RegimeKind::SpecialSaddle;
  record("A5 regime transitions at Q = {1,4} Omega^2 C^2 and spin threshold sqrt(Q)/C", ok,
         "(boundaries resolved to 1e-12)");
}

// A6: conservation along a generic trajectory at the pinned resolution.
void a6() {
  const int L = 21;
  const BasisTables t = build_basis(L);
  const ModelParams p{1.0, 1.0};
  const SpectralField w0 = random_sphere_point(L, p.q_rel, 11);
  IntegrateOptions opts;
  opts.dt = 1e-3;
  opts.t_end = 10.0;
  opts.sample_every = 100;
  const TrajectoryLog log = integrate(w0, p, t, opts);

  double dh = 0.0, dg = 0.0, dm = 0.0;
  for (std::size_t i = 0; i < log.times.size(); ++i) {
    dh = std::max(dh, std::abs(log.pseudo_energy[i] - log.pseudo_energy[0]) /
                          std::abs(log.pseudo_energy[0]));
    dg = std::max(dg, std::abs(log.total_enstrophy[i] - log.total_enstrophy[0]) /
                          log.total_enstrophy[0]);
    dm = std::max(dm, std::abs(log.angular_momentum[i] - log.angular_momentum[0]) /
                          std::abs(log.angular_momentum[0]));
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "(dH=%.2e, dGamma=%.2e, dM=%.2e, thr 1e-7)", dh, dg, dm);
  record("A6 BVE conservation over t=10 at L=21, dt=1e-3", !log.blow_up && dh < 1e-7 &&
         dg < 1e-7 && dm < 1e-7, detail);
}

// A7: Lyapunov stability of the maximizer, of the minimizer at small
// enstrophy, and of the minimizer at large enstrophy under l >= 2 modes.
void a7() {
  const int L = 21;
  const BasisTables t = build_basis(L);
  bool ok = true;
  double worst = 0.0;
  std::string worst_case;

  struct Case {
    const char* name;
    ModelParams p;
    PerturbationSpec::Base base;
    bool l1_allowed;
  };
  const std::vector<Case> cases = {
      {"wmax Q=1", {1.0, 1.0}, PerturbationSpec::Base::WMax, true},
      {"wmin Q<C2", {1.0, 1.0}, PerturbationSpec::Base::WMin, true},
      {"wmin Q=5C2 l>=2", {1.0, 5.0 * C2}, PerturbationSpec::Base::WMin, false},
  };
  for (const auto& c : cases) {
    const double amp = 1e-3 * std::sqrt(c.p.q_rel);
    PerturbationSpec spec;
    spec.base = c.base;
    std::vector<std::tuple<int, int, double>> modes;
    if (c.l1_allowed) modes.push_back({1, 1, 0.0});
    modes.push_back({2, 0, 0.0});
    modes.push_back({3, 2, 0.0});
    modes.push_back({5, -3, 0.0});
    modes.push_back({8, 4, 0.0});
    modes.push_back({13, -6, 0.0});
    const double per = amp / std::sqrt(static_cast<double>(modes.size()));
    for (auto& [l, m, a] : modes) a = per;
    spec.modes = modes;

    IntegrateOptions opts;
    opts.dt = 5e-3;
    opts.t_end = 20.0;
    opts.sample_every = 40;
    const ProbeResult res = stability_probe(spec, c.p, t, opts);
    ok = ok && !res.log.blow_up && res.verdict == ProbeVerdict::Stable &&
         res.max_norm_ratio <= 1.05;
    if (res.max_norm_ratio > worst) {
      worst = res.max_norm_ratio;
      worst_case = c.name;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "(max sup ratio=%.9f thr 1.05, worst case: %s)", worst,
                worst_case.c_str());
  record("A7 Lyapunov probes: sup (Q1+Q2)/(Q1+Q2)(0) <= 1.05 over t=20", ok, detail);
}

// A8: emitted figure data satisfies the defining equations pointwise.
void a8() {
  const ModelParams p{1.0, 1.0};
  const double oc = p.omega * C;
  double worst = 0.0;
  bool ok = true;

  FigureSpec f1;
  f1.fig = 1;
  f1.params = p;
  const auto s1 = figure_curves(f1);
  double min_y = 1e300, argmin = 0.0;
  for (const auto& pt : s1.points) {
    worst = std::max(worst, std::abs(pt.y - 0.25 * (pt.x + oc) * (pt.x + oc)));
    if (pt.y < min_y) {
      min_y = pt.y;
      argmin = pt.x;
    }
  }
  const double spacing = s1.points[1].x - s1.points[0].x;
  ok = ok && std::abs(argmin + oc) <= spacing;  // vertex at k = -Omega C

  FigureSpec f2;
  f2.fig = 2;
  f2.params = p;
  for (const auto& pt : figure_curves(f2).points) {
    const double sq = std::sqrt(pt.y);
    const double r = std::min(std::abs((sq + oc) * (sq + oc) - 4.0 * pt.x),
                              std::abs((sq - oc) * (sq - oc) - 4.0 * pt.x));
    worst = std::max(worst, r / (1.0 + 4.0 * pt.x));
  }

  FigureSpec f3;
  f3.fig = 3;
  f3.params = p;
  for (const auto& pt : figure_curves(f3).points) {
    const double expect =
        (pt.branch == "lambda_plus") ? -0.25 * (1.0 + oc / pt.x) : -0.25 * (1.0 - oc / pt.x);
    worst = std::max(worst, std::abs(pt.y - expect));
  }
  FigureSpec f3z = f3;
  f3z.params.omega = 0.0;  // both multiplier curves collapse onto -1/4
  for (const auto& pt : figure_curves(f3z).points)
    worst = std::max(worst, std::abs(pt.y + 0.25));

  FigureSpec f4;
  f4.fig = 4;
  f4.params = p;
  for (const auto& pt : figure_curves(f4).points) {
    worst = std::max(worst, std::abs(pt.y + oc / (1.0 + 4.0 * pt.x)) / (1.0 + std::abs(pt.y)));
    ok = ok && std::abs(pt.x + 0.25) > 1e-3;  // the asymptote is never sampled
    ok = ok && ((pt.x < -0.25) ? pt.y > 0.0 : pt.y < 0.0);
  }
  record("A8 figure curves satisfy their defining equations pointwise", ok && worst < 1e-12,
         qoi(worst, 1e-12));
}

// A9 (informational): intermediate-regime minimizer probe. The trajectory
// generator conserves the energy-enstrophy norm and the fluid angular
// momentum, so the coupled-model instability need not show up as norm
// growth here; measurements are recorded, not gated.
void a9() {
  const int L = 21;
  const BasisTables t = build_basis(L);
  const ModelParams p{1.0, 2.0 * C2};
  IntegrateOptions opts;
  opts.dt = 5e-3;
  opts.t_end = 10.0;
  opts.sample_every = 40;

  // The variationally unstable direction at l_crit+1 is zonal, and zonal
  // states are exact steady states of this trajectory generator: the probe
  // cannot move along it at all.
  PerturbationSpec zonal;
  zonal.base = PerturbationSpec::Base::WMin;
  zonal.modes = {{3, 0, 1e-3 * std::sqrt(p.q_rel)}};
  const ProbeResult rz = stability_probe(zonal, p, t, opts);

  PerturbationSpec mixed;
  mixed.base = PerturbationSpec::Base::WMin;
  const double amp = 1e-3 * std::sqrt(p.q_rel) / 2.0;
  mixed.modes = {{1, 1, amp}, {3, 0, amp}, {3, 2, amp}, {6, -4, amp}};
  const ProbeResult rm = stability_probe(mixed, p, t, opts);

  char detail[400];
  std::snprintf(detail, sizeof detail,
                "intermediate-regime wmin probes: zonal e(3,0) verdict=%s sup ratio=%.6f (an "
                "exact steady state here); mixed verdict=%s sup ratio=%.6f tilt growth=%.3f "
                "(non-gating; this trajectory generator conserves the perturbation norm and the "
                "fluid angular momentum, so the coupled-model instability need not appear)",
                to_string(rz.verdict).c_str(), rz.max_norm_ratio, to_string(rm.verdict).c_str(),
                rm.max_norm_ratio, rm.tilt_growth_factor);
  info("A9", detail);
}

}  // namespace

int main() {
  a1();
  a2();
  a3();
  a4();
  a5();
  a6();
  a7();
  a8();
  a9();
  if (g_failed == 0)
    std::printf("RESULT: all gating criteria passed\n");
  else
    std::printf("RESULT: %d gating criteria FAILED\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}

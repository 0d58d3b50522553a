#include "sphext/extremal.hpp"

#include <cmath>
#include <stdexcept>

namespace sphext {

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::GlobalMax: return "GlobalMax";
    case RegimeKind::ConstrainedMin: return "ConstrainedMin";
    case RegimeKind::Saddle: return "Saddle";
    case RegimeKind::SpecialSaddle: return "SpecialSaddle";
    case RegimeKind::DegenerateBoundary: return "DegenerateBoundary";
    case RegimeKind::DegenerateNoSpin: return "DegenerateNoSpin";
  }
  return "?";
}

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::ProRotating: return "ProRotating";
    case Branch::CounterRotating: return "CounterRotating";
    case Branch::Bifurcation: return "Bifurcation";
  }
  return "?";
}

namespace {

// lambda = -1/[2l(l+1)] for some integer l in [1, truncation]? Exact-ish
// match: these are isolated points, resolved to within 4 ulps.
std::optional<int> bifurcation_degree(double lambda_rel, int truncation) {
  if (lambda_rel > -1e-12 || lambda_rel < -0.25 - 1e-15) return std::nullopt;
  for (int l = 1; l <= truncation; ++l) {
    const double lv = -0.5 / (static_cast<double>(l) * (l + 1));
    if (std::abs(lambda_rel - lv) <= 4.0 * std::abs(lv) * 1e-16) return l;
  }
  return std::nullopt;
}

}  // namespace

ElSolution solve_euler_lagrange(double lambda_rel, const ModelParams& p, int truncation) {
  p.validate();
  if (!std::isfinite(lambda_rel))
    throw std::invalid_argument("solve_euler_lagrange: lambda_rel must be finite");
  if (truncation < 1)
    throw std::invalid_argument("solve_euler_lagrange: truncation must be >= 1");

  ElSolution sol;
  sol.lambda_rel = lambda_rel;
  const double oc = p.omega * p.c_const;

  const auto bif_l = bifurcation_degree(lambda_rel, truncation);
  if (bif_l && *bif_l == 1) {
    // lambda = -1/4: the l = 1 block of [G - 2 lambda] vanishes.
    if (p.omega > 0.0) {
      sol.kind = ElSolution::Kind::NoSolution;
      sol.note = "pole-like singularity at lambda_rel = -1/4";
      return sol;
    }
    sol.kind = ElSolution::Kind::BifurcationFamily;
    sol.bifurcation_l = 1;
    sol.particular = SpectralField(truncation);
    for (int m = -1; m <= 1; ++m) sol.kernel.push_back(basis_vector(truncation, 1, m));
    return sol;
  }

  // Unique part: the forcing lives on e_10 where the operator is
  // (-1/2 - 2 lambda), giving coefficient -Omega C / (2 (1/2 + 2 lambda)).
  const double k10 = -oc / (2.0 * (0.5 + 2.0 * lambda_rel));
  if (bif_l) {
    const int l = *bif_l;
    sol.kind = ElSolution::Kind::BifurcationFamily;
    sol.bifurcation_l = l;
    sol.particular = basis_vector(truncation, 1, 0, k10);
    for (int m = -l; m <= l; ++m) sol.kernel.push_back(basis_vector(truncation, l, m));
    return sol;
  }

  sol.kind = ElSolution::Kind::Unique;
  sol.particular = basis_vector(truncation, 1, 0, k10);
  return sol;
}

Multipliers multipliers(const ModelParams& p) {
  p.validate();
  const double ratio = p.omega * p.c_const / std::sqrt(p.q_rel);
  return {-0.25 * (1.0 + ratio), -0.25 * (1.0 - ratio)};
}

int critical_degree(const ModelParams& p) {
  const double ratio = p.omega * p.c_const / std::sqrt(p.q_rel);
  if (ratio >= 1.0 || ratio <= 0.0)
    throw std::invalid_argument("critical_degree: defined only in the intermediate regime");
  const double bound = 2.0 / (1.0 - ratio);
  int l = 1;
  while (static_cast<double>(l + 1) * (l + 2) < bound) ++l;
  return l;
}

RegimeClass classify_regime(const ModelParams& p) {
  p.validate();
  RegimeClass r;
  const double oc2 = p.omega * p.omega * p.c_const * p.c_const;
  r.q_threshold_low = oc2;
  r.q_threshold_high = 4.0 * oc2;
  r.omega_o = std::sqrt(p.q_rel) / p.c_const;
  r.l_crit = std::nullopt;

  if (p.omega == 0.0) {
    r.kind = RegimeKind::DegenerateNoSpin;
    return r;
  }
  if (p.q_rel == r.q_threshold_low || p.q_rel == r.q_threshold_high) {
    r.kind = RegimeKind::DegenerateBoundary;
    return r;
  }
  if (p.q_rel < r.q_threshold_low) {
    r.kind = RegimeKind::ConstrainedMin;
  } else if (p.q_rel < r.q_threshold_high) {
    r.kind = RegimeKind::Saddle;
    r.l_crit = critical_degree(p);
  } else {
    r.kind = RegimeKind::SpecialSaddle;
  }
  return r;
}

std::pair<ExtremalReport, ExtremalReport> extremal_states(const ModelParams& p, int truncation) {
  p.validate();
  const double sq = std::sqrt(p.q_rel);
  const double oc = p.omega * p.c_const;
  const auto lam = multipliers(p);
  const auto regime = classify_regime(p);

  ExtremalReport max_report;
  max_report.branch = Branch::ProRotating;
  max_report.lambda_rel = lam.plus;
  max_report.state = basis_vector(truncation, 1, 0, sq);
  max_report.energy_original = 0.25 * p.q_rel + 0.5 * oc * sq;
  max_report.energy_shifted = 0.25 * (sq + oc) * (sq + oc);
  max_report.regime = regime;
  max_report.regime.kind = RegimeKind::GlobalMax;
  max_report.params = p;

  ExtremalReport min_report;
  min_report.branch = Branch::CounterRotating;
  min_report.lambda_rel = lam.minus;
  min_report.state = basis_vector(truncation, 1, 0, -sq);
  min_report.energy_original = 0.25 * p.q_rel - 0.5 * oc * sq;
  min_report.energy_shifted = 0.25 * (-sq + oc) * (-sq + oc);
  min_report.regime = regime;
  min_report.params = p;

  return {std::move(max_report), std::move(min_report)};
}

CurveSet figure_curves(const FigureSpec& spec) {
  spec.params.validate();
  if (spec.n_points < 2) throw std::invalid_argument("figure_curves: n_points must be >= 2");
  if (!(spec.q_max > 0.0)) throw std::invalid_argument("figure_curves: q_max must be positive");

  const double oc = spec.params.omega * spec.params.c_const;
  const int n = spec.n_points;
  CurveSet out;

  switch (spec.fig) {
    case 1: {
      // Extremal energy vs the solid-body coefficient k: H = (k + Omega C)^2 / 4.
      const double kmax = spec.k_max > 0.0 ? spec.k_max : std::sqrt(spec.q_max) + oc;
      out.x_name = "k";
      out.y_name = "H";
      out.comments = {"# extremal energy vs solid-body coefficient k = alpha_10",
                      "# H = (k + omega*C)^2 / 4; vertex at k = -omega*C",
                      "# units: k [1/time], H [1/time^2]"};
      for (int i = 0; i < n; ++i) {
        const double k = -kmax + 2.0 * kmax * i / (n - 1);
        out.points.push_back({k, 0.25 * (k + oc) * (k + oc), "extremal"});
      }
      break;
    }
    case 2: {
      // Permitted-region boundaries in the (H, Q_rel) plane:
      // Q = (2 sqrt(H) +/- Omega C)^2.
      out.x_name = "H";
      out.y_name = "q_rel";
      out.comments = {"# extremal relative enstrophy vs energy",
                      "# q_rel = (2*sqrt(H) +- omega*C)^2",
                      "# units: H [1/time^2], q_rel [1/time^2]"};
      const double hmax = 0.25 * (std::sqrt(spec.q_max) + oc) * (std::sqrt(spec.q_max) + oc);
      for (int i = 0; i < n; ++i) {
        const double h = hmax * i / (n - 1);
        const double r = 2.0 * std::sqrt(h);
        out.points.push_back({h, (r + oc) * (r + oc), "upper"});
      }
      for (int i = 0; i < n; ++i) {
        const double h = hmax * i / (n - 1);
        const double r = 2.0 * std::sqrt(h);
        out.points.push_back({h, (r - oc) * (r - oc), "lower"});
      }
      break;
    }
    case 3: {
      // Multipliers vs sqrt(Q_rel); both tend to -1/4 as sqrt(Q) grows.
      out.x_name = "sqrt_q_rel";
      out.y_name = "lambda_rel";
      out.comments = {"# Lagrange multipliers vs sqrt of relative enstrophy",
                      "# lambda+- = -(1 +- omega*C/sqrt(q))/4",
                      "# units: sqrt_q_rel [1/time], lambda_rel [dimensionless]"};
      const double smax = std::sqrt(spec.q_max);
      for (int i = 1; i <= n; ++i) {
        const double s = smax * i / n;
        ModelParams q = spec.params;
        q.q_rel = s * s;
        const auto lam = multipliers(q);
        out.points.push_back({s, lam.plus, "lambda_plus"});
      }
      for (int i = 1; i <= n; ++i) {
        const double s = smax * i / n;
        ModelParams q = spec.params;
        q.q_rel = s * s;
        const auto lam = multipliers(q);
        out.points.push_back({s, lam.minus, "lambda_minus"});
      }
      break;
    }
    case 4: {
      // Solid-body coefficient vs multiplier, k = -Omega C / (1 + 4 lambda);
      // vertical asymptote at lambda = -1/4.
      out.x_name = "lambda_rel";
      out.y_name = "k";
      out.comments = {"# extremal solid-body coefficient vs Lagrange multiplier",
                      "# k = -omega*C / (1 + 4*lambda); asymptote at lambda = -1/4",
                      "# units: lambda_rel [dimensionless], k [1/time]"};
      if (!(spec.lambda_min < -0.25 && spec.lambda_max > -0.25))
        throw std::invalid_argument("figure_curves: lambda range must straddle -1/4");
      const double gap = 0.02 * (spec.lambda_max - spec.lambda_min);
      for (int i = 0; i < n; ++i) {
        const double lam = spec.lambda_min + (-0.25 - gap - spec.lambda_min) * i / (n - 1.0);
        out.points.push_back({lam, -oc / (1.0 + 4.0 * lam), "pro_rotating"});
      }
      for (int i = 0; i < n; ++i) {
        const double lam = -0.25 + gap + (spec.lambda_max - (-0.25 + gap)) * i / (n - 1.0);
        out.points.push_back({lam, -oc / (1.0 + 4.0 * lam), "counter_rotating"});
      }
      break;
    }
    default:
      throw std::invalid_argument("figure_curves: fig must be in 1..4");
  }
  return out;
}

}  // namespace sphext

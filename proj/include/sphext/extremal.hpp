#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphext/field.hpp"
#include "sphext/functionals.hpp"

namespace sphext {

enum class Branch { ProRotating, CounterRotating, Bifurcation };

/// Character of the counter-rotating branch, set entirely by how Q_rel
/// compares against Omega^2 C^2 and 4 Omega^2 C^2. GlobalMax is reserved
/// for the pro-rotating branch, which maximizes in every regime.
enum class RegimeKind {
  GlobalMax,
  ConstrainedMin,
  Saddle,
  SpecialSaddle,
  DegenerateBoundary,
  DegenerateNoSpin,
};

std::string to_string(RegimeKind kind);
std::string to_string(Branch branch);

struct RegimeClass {
  RegimeKind kind;
  std::optional<int> l_crit;  // Saddle only
  double q_threshold_low;     // Omega^2 C^2
  double q_threshold_high;    // 4 Omega^2 C^2
  double omega_o;             // sqrt(Q_rel) / C
};

/// One solution branch of the constrained problem.
struct ExtremalReport {
  Branch branch;
  double lambda_rel;
  SpectralField state;
  double energy_original;
  double energy_shifted;
  RegimeClass regime;
  ModelParams params;
};

/// Solution set of [G - 2 lambda](w) = (1/2) Omega C e_10 at one multiplier
/// value: a unique solution, an affine family (particular + kernel basis),
/// or no solution at the pole lambda = -1/4 with Omega > 0.
struct ElSolution {
  enum class Kind { Unique, BifurcationFamily, NoSolution };
  Kind kind;
  double lambda_rel;
  std::optional<SpectralField> particular;
  std::vector<SpectralField> kernel;
  int bifurcation_l = 0;
  std::string note;
};

ElSolution solve_euler_lagrange(double lambda_rel, const ModelParams& p, int truncation);

struct Multipliers {
  double plus;   // -1/4 [1 + Omega C / sqrt(Q_rel)], pro-rotating branch
  double minus;  // -1/4 [1 - Omega C / sqrt(Q_rel)], counter-rotating branch
};
Multipliers multipliers(const ModelParams& p);

/// Both branch reports: (pro-rotating maximizer, counter-rotating minimizer).
std::pair<ExtremalReport, ExtremalReport> extremal_states(const ModelParams& p, int truncation);

RegimeClass classify_regime(const ModelParams& p);

/// Critical degree separating positive from negative tangent curvatures at
/// the counter-rotating state: max{l >= 1 : l(l+1) < 2/(1 - Omega C/sqrt(Q))}.
int critical_degree(const ModelParams& p);

/// Tabulated curve data behind the four summary figures.
struct CurvePoint {
  double x;
  double y;
  std::string branch;
};
struct CurveSet {
  std::string x_name;
  std::string y_name;
  std::vector<std::string> comments;  // '#'-prefixed header lines
  std::vector<CurvePoint> points;
};

struct FigureSpec {
  int fig = 1;           // 1: (k, H); 2: (H, Q_rel); 3: (sqrt(Q), lambda+-); 4: (lambda, k)
  ModelParams params;
  double q_max = 10.0;   // figures 2-3
  double k_max = 0.0;    // figure 1; 0 -> derived from q_max
  double lambda_min = -1.0, lambda_max = 0.5;  // figure 4
  int n_points = 201;
};
CurveSet figure_curves(const FigureSpec& spec);

}  // namespace sphext

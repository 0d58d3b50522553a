#include "sphext/io.hpp"

#include <cstdio>

#include "sphext/version.hpp"

namespace sphext {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ModelParams& p) {
  return {{"omega", p.omega}, {"q_rel", p.q_rel}, {"c_const", p.c_const}};
}

json to_json(const SpectralField& w) {
  json coeffs = json::array();
  for (int l = 1; l <= w.truncation(); ++l)
    for (int m = -l; m <= l; ++m)
      if (w(l, m) != 0.0) coeffs.push_back({l, m, w(l, m)});
  return {{"truncation", w.truncation()}, {"coeffs", coeffs}};
}

json to_json(const FunctionalReport& r) {
  return {{"energy_E", r.energy_E},
          {"angular_momentum_Lambda", r.angular_momentum_Lambda},
          {"pseudo_energy_H", r.pseudo_energy_H},
          {"shifted_H", r.shifted_H},
          {"rel_enstrophy", r.rel_enstrophy},
          {"total_enstrophy", r.total_enstrophy},
          {"circulation", r.circulation}};
}

json to_json(const RegimeClass& r) {
  json j = {{"kind", to_string(r.kind)},
            {"thresholds", {{"q_low", r.q_threshold_low}, {"q_high", r.q_threshold_high}}},
            {"omega_o", r.omega_o}};
  if (r.l_crit)
    j["l_crit"] = *r.l_crit;
  else
    j["l_crit"] = nullptr;
  return j;
}

json to_json(const ExtremalReport& r) {
  return {{"branch", to_string(r.branch)},
          {"lambda_rel", r.lambda_rel},
          {"state", to_json(r.state)},
          {"energy_original", r.energy_original},
          {"energy_shifted", r.energy_shifted},
          {"regime", to_json(r.regime)},
          {"params", to_json(r.params)}};
}

json to_json(const ElSolution& s) {
  json j;
  switch (s.kind) {
    case ElSolution::Kind::Unique: j["kind"] = "Unique"; break;
    case ElSolution::Kind::BifurcationFamily: j["kind"] = "BifurcationFamily"; break;
    case ElSolution::Kind::NoSolution: j["kind"] = "NoSolution"; break;
  }
  j["lambda_rel"] = s.lambda_rel;
  j["particular"] = s.particular ? to_json(*s.particular) : json(nullptr);
  json kernel = json::array();
  for (const auto& k : s.kernel) kernel.push_back(to_json(k));
  j["kernel"] = kernel;
  j["kernel_dimension"] = s.kernel.size();
  if (s.kind == ElSolution::Kind::BifurcationFamily) j["bifurcation_l"] = s.bifurcation_l;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

json to_json(const OracleResult& r) {
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"final_state", to_json(r.final_state)},
          {"final_energy", r.final_energy},
          {"gradient_norm", r.gradient_norm},
          {"distance_to_analytic", r.distance_to_analytic},
          {"max_energy_seen", r.max_energy_seen},
          {"params", to_json(r.params)}};
}

json to_json(const HessianSpectrum& h) {
  json curvatures = json::array();
  for (const auto& c : h.curvatures) curvatures.push_back({c.l, c.m, c.value});
  return {{"base_state", to_json(h.base)},
          {"lambda_star", h.lambda_star},
          {"residual", h.residual},
          {"curvatures", curvatures},
          {"positive_count", h.positive_count},
          {"negative_count", h.negative_count},
          {"zero_count", h.zero_count}};
}

json to_json(const Verification& v) {
  return {{"ok", v.ok},
          {"reason", v.reason},
          {"state_distance", v.state_distance},
          {"energy_difference", v.energy_difference}};
}

json to_json(const ProbeResult& r) {
  return {{"verdict", to_string(r.verdict)},
          {"max_norm_ratio", r.max_norm_ratio},
          {"tilt_growth_factor", r.tilt_growth_factor},
          {"total_growth_factor", r.total_growth_factor},
          {"blow_up", r.log.blow_up},
          {"header", trajectory_header(r.log)}};
}

json trajectory_header(const TrajectoryLog& log) {
  return {{"params", to_json(log.params)},
          {"truncation", log.truncation},
          {"dt", log.dt},
          {"spectral_filter", log.filter_enabled},
          {"blow_up", log.blow_up},
          {"samples", log.times.size()},
          {"version", k_version}};
}

void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
  os << "t,H,total_enstrophy,ang_mom,q1,q2,q1_plus_q2\n";
  for (std::size_t i = 0; i < log.times.size(); ++i) {
    os << format_g17(log.times[i]) << ',' << format_g17(log.pseudo_energy[i]) << ','
       << format_g17(log.total_enstrophy[i]) << ',' << format_g17(log.angular_momentum[i]) << ','
       << format_g17(log.q1[i]) << ',' << format_g17(log.q2[i]) << ','
       << format_g17(log.q1[i] + log.q2[i]) << '\n';
  }
}

void write_curves_csv(std::ostream& os, const CurveSet& curves) {
  for (const auto& c : curves.comments) os << c << '\n';
  os << "x,y,branch\n";
  for (const auto& p : curves.points)
    os << format_g17(p.x) << ',' << format_g17(p.y) << ',' << p.branch << '\n';
}

void write_trace_csv(std::ostream& os, const OracleResult& r) {
  os << "iteration,energy,gradient_norm\n";
  for (const auto& t : r.trace)
    os << t.iteration << ',' << format_g17(t.energy) << ',' << format_g17(t.gradient_norm) << '\n';
}

}  // namespace sphext

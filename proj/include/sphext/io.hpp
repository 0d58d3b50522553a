#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "sphext/bve.hpp"
#include "sphext/extremal.hpp"
#include "sphext/field.hpp"
#include "sphext/functionals.hpp"
#include "sphext/oracle.hpp"

namespace sphext {

using json = nlohmann::json;

/// 17-significant-digit decimal rendering; fixed across platforms so CSV
/// output is byte-reproducible for identical inputs.
std::string format_g17(double v);

json to_json(const ModelParams& p);
json to_json(const SpectralField& w);          // sparse [l, m, value] triples
json to_json(const FunctionalReport& r);       // flat object, seven fields
json to_json(const RegimeClass& r);
json to_json(const ExtremalReport& r);
json to_json(const ElSolution& s);
json to_json(const OracleResult& r);
json to_json(const HessianSpectrum& h);
json to_json(const Verification& v);
json to_json(const ProbeResult& r);
json trajectory_header(const TrajectoryLog& log);

void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log);
void write_curves_csv(std::ostream& os, const CurveSet& curves);
void write_trace_csv(std::ostream& os, const OracleResult& r);

}  // namespace sphext

// Command-line front end: classify regimes, evaluate the closed-form
// extremal branches, run the Euler-Lagrange case analysis, drive the
// sphere-constrained optimizer, integrate the vorticity equation, probe
// stability, and emit the summary figure data as CSV.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphext/bve.hpp"
#include "sphext/errors.hpp"
#include "sphext/extremal.hpp"
#include "sphext/io.hpp"
#include "sphext/oracle.hpp"
#include "sphext/version.hpp"

namespace fs = std::filesystem;
using namespace sphext;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option values before precedence resolution: command-line flag beats
// config-file key beats documented default.
struct Raw {
  std::optional<double> omega, q_rel, dt, t_end, step, tol, lambda_rel;
  std::optional<double> q_max, k_max, lambda_min, lambda_max;
  std::optional<int> truncation, sample_every, max_iter, fig, n_points;
  std::optional<unsigned> seed;
  std::optional<std::string> output_dir, direction, base, modes;
  std::optional<bool> gnuplot, filter, trace, random_phases;
  std::string config_file;
};

struct RunConfig {
  std::string command;
  double omega = 0.0;
  double q_rel = 1.0;
  int truncation = 21;
  double dt = 1e-3;
  double t_end = 10.0;
  unsigned seed = 42;
  int sample_every = 10;
  std::string output_dir = ".";
  // solve-el
  double lambda_rel = 0.0;
  // oracle
  std::string direction = "ascend";
  double step = 1.0;
  double tol = 1e-9;
  int max_iter = 20000;
  bool trace = false;
  // probe
  std::string base = "wmax";
  std::string modes;
  bool random_phases = false;
  // evolve
  bool filter = false;
  // figures
  int fig = 1;
  double q_max = 10.0;
  double k_max = 0.0;
  double lambda_min = -1.0;
  double lambda_max = 0.5;
  int n_points = 201;
  bool gnuplot = false;
};

const std::vector<std::string> k_known_keys = {
    "omega",      "q_rel",      "truncation", "dt",          "t_end",      "seed",
    "sample_every", "output_dir", "lambda_rel", "direction",  "step",       "tol",
    "max_iter",   "trace",      "base",       "modes",       "random_phases",
    "filter",     "fig",        "q_max",      "k_max",       "lambda_min",
    "lambda_max", "n_points",   "gnuplot"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Flat `key = value` file, UTF-8, '#' comments.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(k_known_keys.begin(), k_known_keys.end(), key) == k_known_keys.end())
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw UsageError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': unparsable number '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "': unparsable integer '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("config key '" + key + "': unparsable boolean '" + v + "'");
}

template <typename T, typename Parse>
void apply(std::optional<T>& slot, const std::map<std::string, std::string>& kv,
           const std::string& key, Parse&& parse) {
  if (slot.has_value()) return;  // command-line flag wins
  const auto it = kv.find(key);
  if (it != kv.end()) slot = static_cast<T>(parse(key, it->second));
}

RunConfig resolve(const std::string& command, Raw raw) {
  std::map<std::string, std::string> kv;
  if (!raw.config_file.empty()) kv = read_config_file(raw.config_file);

  apply(raw.omega, kv, "omega", parse_double);
  apply(raw.q_rel, kv, "q_rel", parse_double);
  apply(raw.dt, kv, "dt", parse_double);
  apply(raw.t_end, kv, "t_end", parse_double);
  apply(raw.step, kv, "step", parse_double);
  apply(raw.tol, kv, "tol", parse_double);
  apply(raw.lambda_rel, kv, "lambda_rel", parse_double);
  apply(raw.q_max, kv, "q_max", parse_double);
  apply(raw.k_max, kv, "k_max", parse_double);
  apply(raw.lambda_min, kv, "lambda_min", parse_double);
  apply(raw.lambda_max, kv, "lambda_max", parse_double);
  apply(raw.truncation, kv, "truncation", parse_int);
  apply(raw.sample_every, kv, "sample_every", parse_int);
  apply(raw.max_iter, kv, "max_iter", parse_int);
  apply(raw.fig, kv, "fig", parse_int);
  apply(raw.n_points, kv, "n_points", parse_int);
  apply(raw.seed, kv, "seed", parse_int);
  apply(raw.output_dir, kv, "output_dir", [](const std::string&, const std::string& v) { return v; });
  apply(raw.direction, kv, "direction", [](const std::string&, const std::string& v) { return v; });
  apply(raw.base, kv, "base", [](const std::string&, const std::string& v) { return v; });
  apply(raw.modes, kv, "modes", [](const std::string&, const std::string& v) { return v; });
  apply(raw.gnuplot, kv, "gnuplot", parse_bool);
  apply(raw.filter, kv, "filter", parse_bool);
  apply(raw.trace, kv, "trace", parse_bool);
  apply(raw.random_phases, kv, "random_phases", parse_bool);

  RunConfig c;
  c.command = command;
  if (!raw.omega) throw UsageError(command + ": --omega is required (flag or config)");
  c.omega = *raw.omega;
  if (raw.q_rel) c.q_rel = *raw.q_rel;
  else if (command != "figures")
    throw UsageError(command + ": --q-rel is required (flag or config)");
  if (raw.truncation) c.truncation = *raw.truncation;
  if (raw.dt) c.dt = *raw.dt;
  if (raw.t_end) c.t_end = *raw.t_end;
  if (raw.seed) c.seed = *raw.seed;
  if (raw.sample_every) c.sample_every = *raw.sample_every;
  if (raw.output_dir) c.output_dir = *raw.output_dir;
  if (command == "solve-el") {
    if (!raw.lambda_rel) throw UsageError("solve-el: --lambda-rel is required");
    c.lambda_rel = *raw.lambda_rel;
  }
  if (raw.direction) c.direction = *raw.direction;
  if (raw.step) c.step = *raw.step;
  if (raw.tol) c.tol = *raw.tol;
  if (raw.max_iter) c.max_iter = *raw.max_iter;
  if (raw.trace) c.trace = *raw.trace;
  if (raw.base) c.base = *raw.base;
  if (raw.modes) c.modes = *raw.modes;
  if (raw.random_phases) c.random_phases = *raw.random_phases;
  if (raw.filter) c.filter = *raw.filter;
  if (raw.fig) c.fig = *raw.fig;
  if (raw.q_max) c.q_max = *raw.q_max;
  if (raw.k_max) c.k_max = *raw.k_max;
  if (raw.lambda_min) c.lambda_min = *raw.lambda_min;
  if (raw.lambda_max) c.lambda_max = *raw.lambda_max;
  if (raw.n_points) c.n_points = *raw.n_points;
  if (raw.gnuplot) c.gnuplot = *raw.gnuplot;

  if (const char* env = std::getenv("SPHERE_EXTREMAL_OUT")) c.output_dir = env;

  // Validation; violations are usage errors.
  if (!(c.omega >= 0.0) || !std::isfinite(c.omega)) throw UsageError("omega must be >= 0");
  if (!(c.q_rel > 0.0) || !std::isfinite(c.q_rel)) throw UsageError("q_rel must be > 0");
  if (c.truncation < 1) throw UsageError("truncation must be >= 1");
  if (c.dt == 0.0 || !std::isfinite(c.dt)) throw UsageError("dt must be nonzero");
  if (c.t_end * c.dt <= 0.0) throw UsageError("t_end must have the sign of dt");
  if (c.sample_every < 1) throw UsageError("sample_every must be >= 1");
  if (c.direction != "ascend" && c.direction != "descend")
    throw UsageError("direction must be 'ascend' or 'descend'");
  if (c.base != "wmax" && c.base != "wmin") throw UsageError("base must be 'wmax' or 'wmin'");
  if (command == "figures" && (c.fig < 1 || c.fig > 4)) throw UsageError("fig must be in 1..4");
  if (c.n_points < 2) throw UsageError("n_points must be >= 2");
  if (!(c.step > 0.0)) throw UsageError("step must be > 0");
  if (!(c.tol > 0.0)) throw UsageError("tol must be > 0");
  if (c.max_iter < 0) throw UsageError("max_iter must be >= 0");
  return c;
}

// "l,m:amp" groups separated by ';'.
std::vector<std::tuple<int, int, double>> parse_modes(const std::string& text) {
  std::vector<std::tuple<int, int, double>> out;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    group = trim(group);
    if (group.empty()) continue;
    int l = 0, m = 0;
    double amp = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream gs(group);
    if (!(gs >> l >> c1 >> m >> c2 >> amp) || c1 != ',' || c2 != ':' || !gs.eof())
      throw UsageError("bad --modes group '" + group + "' (expected l,m:amp)");
    out.emplace_back(l, m, amp);
  }
  if (out.empty()) throw UsageError("--modes is empty");
  return out;
}

json params_block(const RunConfig& c) {
  json j = {{"command", c.command}, {"omega", c.omega},   {"q_rel", c.q_rel},
            {"truncation", c.truncation}, {"seed", c.seed}, {"output_dir", c.output_dir},
            {"version", k_version}};
  if (c.command == "evolve" || c.command == "probe") {
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["sample_every"] = c.sample_every;
    j["filter"] = c.filter;
  }
  if (c.command == "solve-el") j["lambda_rel"] = c.lambda_rel;
  if (c.command == "oracle") {
    j["direction"] = c.direction;
    j["step"] = c.step;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
  }
  if (c.command == "probe") {
    j["base"] = c.base;
    j["modes"] = c.modes;
    j["random_phases"] = c.random_phases;
  }
  if (c.command == "figures") {
    j["fig"] = c.fig;
    j["q_max"] = c.q_max;
    j["n_points"] = c.n_points;
  }
  return j;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", std::localtime(&t));
  char full[48];
  std::snprintf(full, sizeof full, "%s%03d", buf, static_cast<int>(ms));
  return full;
}

fs::path output_path(const RunConfig& c, const std::string& stamp, const char* ext) {
  return fs::path(c.output_dir) / (c.command + "-" + stamp + ext);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit_json(const RunConfig& c, const std::string& stamp, json body) {
  body["params"] = params_block(c);
  const std::string text = body.dump(2) + "\n";
  std::cout << text;
  const fs::path p = output_path(c, stamp, ".json");
  write_text(p, text);
  std::cerr << "wrote: " << p.string() << "\n";
}

ModelParams model_params(const RunConfig& c) { return ModelParams{c.omega, c.q_rel}; }

int run_classify(const RunConfig& c) {
  emit_json(c, timestamp(), to_json(classify_regime(model_params(c))));
  return 0;
}

int run_extremals(const RunConfig& c) {
  const auto [mx, mn] = extremal_states(model_params(c), c.truncation);
  const auto lam = multipliers(model_params(c));
  json j = {{"max", to_json(mx)},
            {"min", to_json(mn)},
            {"multipliers", {{"plus", lam.plus}, {"minus", lam.minus}}},
            {"H_Max", mx.energy_original},
            {"H_min", mn.energy_original}};
  emit_json(c, timestamp(), std::move(j));
  return 0;
}

int run_solve_el(const RunConfig& c) {
  emit_json(c, timestamp(), to_json(solve_euler_lagrange(c.lambda_rel, model_params(c), c.truncation)));
  return 0;
}

int run_oracle(const RunConfig& c) {
  OracleOptions opts;
  opts.direction = (c.direction == "ascend") ? Direction::Ascend : Direction::Descend;
  opts.step = c.step;
  opts.tol = c.tol;
  opts.max_iter = c.max_iter;
  opts.keep_trace = c.trace;
  const SpectralField init = random_sphere_point(c.truncation, c.q_rel, c.seed);
  const OracleResult res = extremize_on_sphere(model_params(c), init, opts);

  const std::string stamp = timestamp();
  if (c.trace) {
    std::ostringstream csv;
    write_trace_csv(csv, res);
    const fs::path p = output_path(c, stamp, ".csv");
    write_text(p, csv.str());
    std::cerr << "wrote: " << p.string() << "\n";
  }
  emit_json(c, stamp, to_json(res));
  return res.converged ? 0 : 1;
}

int run_evolve(const RunConfig& c) {
  const BasisTables tables = build_basis(c.truncation);
  const SpectralField w0 = random_sphere_point(c.truncation, c.q_rel, c.seed);
  IntegrateOptions opts;
  opts.dt = c.dt;
  opts.t_end = c.t_end;
  opts.sample_every = c.sample_every;
  opts.spectral_filter = c.filter;
  const TrajectoryLog log = integrate(w0, model_params(c), tables, opts);

  const std::string stamp = timestamp();
  std::ostringstream csv;
  write_trajectory_csv(csv, log);
  const fs::path p = output_path(c, stamp, ".csv");
  write_text(p, csv.str());
  std::cerr << "wrote: " << p.string() << "\n";
  emit_json(c, stamp, json{{"header", trajectory_header(log)}});
  return log.blow_up ? 1 : 0;
}

int run_probe(const RunConfig& c) {
  const BasisTables tables = build_basis(c.truncation);
  PerturbationSpec spec;
  spec.base = (c.base == "wmax") ? PerturbationSpec::Base::WMax : PerturbationSpec::Base::WMin;
  if (c.modes.empty()) throw UsageError("probe: --modes is required");
  spec.modes = parse_modes(c.modes);
  spec.randomize_phases = c.random_phases;
  spec.seed = c.seed;
  IntegrateOptions opts;
  opts.dt = c.dt;
  opts.t_end = c.t_end;
  opts.sample_every = c.sample_every;
  opts.spectral_filter = c.filter;
  const ProbeResult res = stability_probe(spec, model_params(c), tables, opts);

  const std::string stamp = timestamp();
  std::ostringstream csv;
  write_trajectory_csv(csv, res.log);
  const fs::path p = output_path(c, stamp, ".csv");
  write_text(p, csv.str());
  std::cerr << "wrote: " << p.string() << "\n";
  emit_json(c, stamp, to_json(res));
  return res.log.blow_up ? 1 : 0;
}

int run_figures(const RunConfig& c) {
  FigureSpec spec;
  spec.fig = c.fig;
  spec.params = model_params(c);
  spec.q_max = c.q_max;
  spec.k_max = c.k_max;
  spec.lambda_min = c.lambda_min;
  spec.lambda_max = c.lambda_max;
  spec.n_points = c.n_points;
  const CurveSet curves = figure_curves(spec);

  const std::string stamp = timestamp();
  std::ostringstream csv;
  write_curves_csv(csv, curves);
  const fs::path p = output_path(c, stamp, ".csv");
  write_text(p, csv.str());
  std::cerr << "wrote: " << p.string() << "\n";

  if (c.gnuplot) {
    std::ostringstream gp;
    gp << "# gnuplot script for " << p.filename().string() << "\n"
       << "set datafile separator ','\n"
       << "set xlabel '" << curves.x_name << "'\n"
       << "set ylabel '" << curves.y_name << "'\n"
       << "plot '" << p.filename().string()
       << "' every ::1 using 1:2 with points pt 7 ps 0.4 title 'fig " << c.fig << "'\n";
    const fs::path gpp = output_path(c, stamp, ".gp");
    write_text(gpp, gp.str());
    std::cerr << "wrote: " << gpp.string() << "\n";
  }

  emit_json(c, stamp,
            json{{"fig", c.fig},
                 {"points", curves.points.size()},
                 {"x", curves.x_name},
                 {"y", curves.y_name},
                 {"csv", p.string()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy extremals and nonlinear stability of barotropic flow on a rotating sphere"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(k_version));

  Raw raw;
  std::string command;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--omega", raw.omega, "spin rate (>= 0)");
    sub->add_option("--q-rel", raw.q_rel, "relative enstrophy budget (> 0)");
    sub->add_option("-L,--truncation", raw.truncation, "spectral truncation (default 21)");
    sub->add_option("--seed", raw.seed, "random seed (default 42)");
    sub->add_option("--output-dir", raw.output_dir, "artifact directory (default .)");
    sub->add_option("--config", raw.config_file, "flat key = value config file");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  auto* classify = app.add_subcommand("classify", "regime of the counter-rotating branch");
  add_common(classify);

  auto* extremals = app.add_subcommand("extremals", "closed-form branch states and energies");
  add_common(extremals);

  auto* solveel = app.add_subcommand("solve-el", "stationarity equation at one multiplier value");
  add_common(solveel);
  solveel->add_option("--lambda-rel", raw.lambda_rel, "multiplier value");

  auto* oracle = app.add_subcommand("oracle", "projected-gradient extremization on the sphere");
  add_common(oracle);
  oracle->add_option("--direction", raw.direction, "ascend | descend");
  oracle->add_option("--step", raw.step, "base step size");
  oracle->add_option("--tol", raw.tol, "tangent-gradient tolerance");
  oracle->add_option("--max-iter", raw.max_iter, "iteration cap");
  oracle->add_flag("--trace", raw.trace, "write per-iteration CSV");

  auto* evolve = app.add_subcommand("evolve", "integrate a random state");
  add_common(evolve);
  evolve->add_option("--dt", raw.dt, "time step (default 1e-3)");
  evolve->add_option("--t-end", raw.t_end, "end time (default 10)");
  evolve->add_option("--sample-every", raw.sample_every, "sampling stride (default 10)");
  evolve->add_flag("--filter", raw.filter, "enable the high-degree spectral filter");

  auto* probe = app.add_subcommand("probe", "perturb an extremal and monitor the energy-enstrophy norm");
  add_common(probe);
  probe->add_option("--base", raw.base, "wmax | wmin");
  probe->add_option("--modes", raw.modes, "perturbation modes 'l,m:amp[;l,m:amp...]'");
  probe->add_flag("--random-phases", raw.random_phases, "randomize sectoral phases");
  probe->add_option("--dt", raw.dt, "time step (default 1e-3)");
  probe->add_option("--t-end", raw.t_end, "end time (default 10)");
  probe->add_option("--sample-every", raw.sample_every, "sampling stride (default 10)");
  probe->add_flag("--filter", raw.filter, "enable the high-degree spectral filter");

  auto* figures = app.add_subcommand("figures", "emit summary curve data as CSV");
  add_common(figures);
  figures->add_option("--fig", raw.fig, "which curve set, 1..4");
  figures->add_option("--q-max", raw.q_max, "enstrophy sweep bound");
  figures->add_option("--k-max", raw.k_max, "coefficient sweep bound (fig 1)");
  figures->add_option("--lambda-min", raw.lambda_min, "multiplier sweep lower bound (fig 4)");
  figures->add_option("--lambda-max", raw.lambda_max, "multiplier sweep upper bound (fig 4)");
  figures->add_option("--n-points", raw.n_points, "samples per branch");
  figures->add_flag("--gnuplot", raw.gnuplot, "also write a plotting script");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = resolve(command, raw);
    if (!fs::exists(cfg.output_dir))
      throw UsageError("output directory does not exist: " + cfg.output_dir);
    {
      const fs::path probe_file = fs::path(cfg.output_dir) / ".sphext-write-probe";
      std::ofstream probe_out(probe_file);
      if (!probe_out) throw UsageError("output directory is not writable: " + cfg.output_dir);
      probe_out.close();
      fs::remove(probe_file);
    }
    if (cfg.command == "classify") return run_classify(cfg);
    if (cfg.command == "extremals") return run_extremals(cfg);
    if (cfg.command == "solve-el") return run_solve_el(cfg);
    if (cfg.command == "oracle") return run_oracle(cfg);
    if (cfg.command == "evolve") return run_evolve(cfg);
    if (cfg.command == "probe") return run_probe(cfg);
    if (cfg.command == "figures") return run_figures(cfg);
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

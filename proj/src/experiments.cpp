#include "fslab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fslab/evolution.hpp"
#include "fslab/fieldops.hpp"
#include "fslab/functionals.hpp"
#include "fslab/gammafn.hpp"
#include "fslab/groundstate.hpp"
#include "fslab/io.hpp"
#include "fslab/sharpconst.hpp"
#include "fslab/testfields.hpp"
#include "fslab/version.hpp"

namespace fslab {

using nlohmann::json;

bool RunRecord::all_passed() const {
  for (const auto& g : gates)
    if (!g.passed) return false;
  return true;
}

json RunRecord::to_json() const {
  json gj = json::array();
  for (const auto& g : gates)
    gj.push_back({{"name", g.name},
                  {"passed", g.passed},
                  {"value", g.value},
                  {"threshold", g.threshold},
                  {"cmp", g.cmp}});
  return json{{"command", command}, {"version", version},   {"seed", seed},
              {"config", config_echo}, {"results", results}, {"gates", gj},
              {"artifacts", artifacts}, {"passed", all_passed()},
              {"wall_seconds", wall_seconds}};
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void gate_lt(RunRecord& r, const std::string& name, double value, double thr) {
  r.gates.push_back({name, value < thr, value, thr, "<"});
}
void gate_le(RunRecord& r, const std::string& name, double value, double thr) {
  r.gates.push_back({name, value <= thr, value, thr, "<="});
}
void gate_true(RunRecord& r, const std::string& name, bool ok) {
  r.gates.push_back({name, ok, ok ? 1.0 : 0.0, 0.5, ">"});
}
void gate_zero(RunRecord& r, const std::string& name, double value) {
  r.gates.push_back({name, value == 0.0, value, 0.0, "==0"});
}

json echo_config(const Config& cfg) {
  json j = json::object();
  for (const auto& [sec, keys] : cfg.sections()) {
    json s = json::object();
    for (const auto& [k, cv] : keys)
      std::visit([&, &key = k](auto&& x) { s[key] = x; }, cv.v);
    j[sec.empty() ? "_top" : sec] = s;
  }
  return j;
}

struct RunContext {
  Config cfg;
  std::string out;
  std::uint64_t seed = 0;
  Exec ex = default_exec();
};

RunContext make_context(const Config& cfg, const CliOverrides& cli, const std::string& command) {
  RunContext c;
  c.cfg = cfg;
  c.out = cli.out ? *cli.out : cfg.get_str_or("", "out", "runs/" + command);
  c.seed = static_cast<std::uint64_t>(cli.seed ? *cli.seed : cfg.get_int_or("", "seed", 1));
  c.ex = default_exec();
  std::filesystem::create_directories(c.out);
  return c;
}

RunRecord start_record(const std::string& command, const RunContext& ctx) {
  RunRecord r;
  r.command = command;
  r.version = kVersion;
  r.seed = ctx.seed;
  r.config_echo = echo_config(ctx.cfg);
  r.results = json::object();
  return r;
}

std::string join(const std::string& dir, const std::string& name) { return dir + "/" + name; }

void finish_record(RunRecord& r, const RunContext& ctx, const Timer& t) {
  r.wall_seconds = t.elapsed();
  const std::string path = join(ctx.out, "record.json");
  r.artifacts["record"] = path;
  io::write_json_atomic(path, r.to_json());
}

// ---- config -> domain objects ------------------------------------------

ModelParams model_from(const Config& cfg) {
  ModelParams m;
  m.dim = static_cast<int>(cfg.get_int_or("model", "N", 2));
  m.alpha = cfg.get_real_or("model", "alpha", 0.8);
  m.gamma = cfg.get_real_or("model", "gamma", 0.0);
  m.p = cfg.get_real_or("model", "p", 2.0);
  m.epsilon = static_cast<int>(cfg.get_int_or("model", "epsilon", 1));
  m.debug_mode = cfg.get_bool_or("model", "debug", false);
  m.validate();
  return m;
}

GridSpec grid_from(const Config& cfg, int dim) {
  const int n_def = dim == 1 ? 1024 : dim == 2 ? 256 : 64;
  const double L_def = dim == 1 ? 20.0 : dim == 2 ? 12.0 : 10.0;
  GridSpec g;
  g.dim = dim;
  g.n = static_cast<int>(cfg.get_int_or("grid", "n", n_def));
  g.L = cfg.get_real_or("grid", "L", L_def);
  g.validate();
  return g;
}

PetviashviliOptions petv_from(const Config& cfg) {
  PetviashviliOptions o;
  o.tol = cfg.get_real_or("solver", "petv_tol", o.tol);
  o.max_iter = static_cast<int>(cfg.get_int_or("solver", "petv_max_iter", o.max_iter));
  return o;
}

DescentOptions descent_from(const Config& cfg) {
  DescentOptions o;
  o.residual_tol = cfg.get_real_or("solver", "descent_residual_tol", o.residual_tol);
  o.max_iter = static_cast<int>(cfg.get_int_or("solver", "descent_max_iter", o.max_iter));
  o.step0 = cfg.get_real_or("solver", "descent_step0", o.step0);
  return o;
}

EvolutionConfig evo_from(const Config& cfg) {
  EvolutionConfig e;
  e.dt = cfg.get_real_or("evolution", "dt", e.dt);
  e.T = cfg.get_real_or("evolution", "T", e.T);
  e.record_every = static_cast<int>(cfg.get_int_or("evolution", "record_every", e.record_every));
  e.blowup_norm_factor = cfg.get_real_or("evolution", "blowup_factor", e.blowup_norm_factor);
  e.spectral_tail_limit = cfg.get_real_or("evolution", "tail_limit", e.spectral_tail_limit);
  e.validate();
  return e;
}

// ---- schemas -------------------------------------------------------------

using Schema = std::map<std::string, std::set<std::string>>;

const std::set<std::string> kTopKeys = {"seed", "threads", "out"};
const std::set<std::string> kModelKeys = {"N",       "alpha", "gamma", "p",
                                          "epsilon", "debug", "sharp_constant"};
const std::set<std::string> kGridKeys = {"n", "L"};
const std::set<std::string> kSolverKeys = {"petv_tol", "petv_max_iter",
                                           "descent_residual_tol", "descent_max_iter",
                                           "descent_step0"};
const std::set<std::string> kEvoKeys = {"dt", "T", "record_every", "blowup_factor",
                                        "tail_limit"};
const std::set<std::string> kInitialKeys = {"type", "amplitude", "width", "ring_k",
                                            "path", "scale"};

Schema base_schema() { return {{"", kTopKeys}, {"model", kModelKeys}}; }

Schema solver_schema() {
  Schema s = base_schema();
  s["grid"] = kGridKeys;
  s["solver"] = kSolverKeys;
  return s;
}

// ---- shared pieces -------------------------------------------------------

json exponents_json(const DerivedExponents& e) {
  return {{"A", e.A}, {"B", e.B}, {"mu", e.mu}, {"s", e.sigma_exp}};
}

void put_model_results(RunRecord& r, const ModelParams& m, const DerivedExponents& e) {
  r.results["model"] = {{"N", m.dim},         {"alpha", m.alpha}, {"gamma", m.gamma},
                        {"p", m.p},           {"epsilon", m.epsilon}};
  r.results["exponents"] = exponents_json(e);
  r.results["B"] = e.B;  // flat copy for sweep tables
}

json mreport_json(const MReport& mr) {
  json rows = json::array();
  for (const auto& row : mr.pair_K)
    rows.push_back({{"a", row[0]}, {"b", row[1]}, {"K", row[2]}});
  return {{"m", mr.m}, {"pair_K", rows}};
}

struct SolveOutput {
  GroundStateRecord petv;  // Euler-Lagrange route
  GroundStateRecord psi;   // unit-pair J minimizer
  GroundStateRecord resc;  // minimizer mapped back to the equation
  MReport mrep;
};

SolveOutput solve_both(const ModelParams& params, const GridSpec& grid, const Config& cfg,
                       Exec ex) {
  SolveOutput s;
  const Field seed = default_seed(grid, ex);
  s.petv = petviashvili_solve(params, grid, seed, petv_from(cfg), ex);
  s.psi = minimize_J(params, grid, seed, descent_from(cfg), ex);
  s.resc = rescale_minimizer_to_groundstate(s.psi, params, ex);
  s.mrep = compute_m(s.petv, params, default_pairs(), ex);
  return s;
}

json route_json(const GroundStateRecord& g) {
  return {{"residual", g.residual},
          {"iterations", g.iterations},
          {"converged", g.converged},
          {"mass", g.mass},
          {"seminorm", g.seminorm},
          {"nonlinear_integral", g.nonlinear_integral},
          {"action", g.action_value},
          {"beta", g.beta_value}};
}

std::string residuals_csv(const std::vector<double>& hist) {
  std::string out = "iter,residual\n";
  for (std::size_t i = 0; i < hist.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += io::fmt_double(hist[i]);
    out += '\n';
  }
  return out;
}

void add_groundstate_gates(RunRecord& r, const SolveOutput& s) {
  gate_true(r, "petv_converged", s.petv.converged);
  gate_lt(r, "petv_residual", s.petv.residual, 1e-6);
  gate_true(r, "descent_converged", s.psi.converged);
  gate_lt(r, "rescaled_residual", s.resc.residual, 1e-4);
  const double S_p = s.petv.action_value;
  const double S_r = s.resc.action_value;
  gate_le(r, "action_cross_gap", std::abs(S_p - S_r) / std::abs(S_p), 1e-3);
  const double hs2 = s.petv.mass + s.petv.seminorm * s.petv.seminorm;
  double kmax = 0.0;
  for (const auto& row : s.mrep.pair_K) kmax = std::max(kmax, std::abs(row[2]));
  gate_lt(r, "K_pairs_rel", kmax / hs2, 1e-6);
  gate_true(r, "m_positive", s.mrep.m > 0.0);
}

void put_groundstate_results(RunRecord& r, const SolveOutput& s, const GridSpec& grid,
                             Exec ex) {
  r.results["petviashvili"] = route_json(s.petv);
  r.results["minimizer"] = route_json(s.psi);
  r.results["rescaled"] = route_json(s.resc);
  r.results["m"] = mreport_json(s.mrep);
  r.results["petv_residual"] = s.petv.residual;
  r.results["m_value"] = s.mrep.m;
  r.results["action"] = s.petv.action_value;
  r.results["boundary_mass_fraction"] = boundary_mass_fraction(s.petv.profile, ex);
  r.results["spectral_tail_fraction"] = spectral_tail_fraction(s.petv.profile, ex);
  r.results["rotation_asymmetry"] =
      grid.dim > 1 ? rotation_asymmetry(s.petv.profile, ex) : 0.0;
}

void write_groundstate_artifacts(RunRecord& r, const RunContext& ctx, const SolveOutput& s) {
  const std::string phi = join(ctx.out, "phi.fsf");
  const std::string psi = join(ctx.out, "psi.fsf");
  const std::string prof = join(ctx.out, "phi_profile.csv");
  io::write_field(phi, s.petv.profile);
  io::write_field(psi, s.psi.profile);
  io::write_profile_csv(prof, s.petv.profile);
  io::write_text_atomic(join(ctx.out, "petv_residuals.csv"),
                        residuals_csv(s.petv.residual_history));
  io::write_text_atomic(join(ctx.out, "descent_residuals.csv"),
                        residuals_csv(s.psi.residual_history));
  r.artifacts["phi"] = phi;
  r.artifacts["psi"] = psi;
  r.artifacts["phi_profile"] = prof;
  r.artifacts["petv_residuals"] = join(ctx.out, "petv_residuals.csv");
  r.artifacts["descent_residuals"] = join(ctx.out, "descent_residuals.csv");
}

Field amplitude_scaled(const Field& u, double c, Exec ex) {
  return scale_field_amplitude_dilation(u, c, 1.0, ex);
}

Field initial_from(const Config& cfg, const ModelParams& params, const GridSpec& grid,
                   Exec ex) {
  const std::string type = cfg.get_str_or("initial", "type", "gaussian");
  const double amp = cfg.get_real_or("initial", "amplitude", 1.0);
  const double width = cfg.get_real_or("initial", "width", 1.0);
  if (width <= 0.0) throw std::invalid_argument("initial.width must be positive");
  const double c = 1.0 / (2.0 * width * width);
  if (type == "gaussian") return gaussian_field(grid, c, amp, ex);
  if (type == "ring")
    return ring_field(grid, static_cast<int>(cfg.get_int_or("initial", "ring_k", 1)), c, amp,
                      ex);
  if (type == "file") return io::read_field(cfg.get_str("initial", "path"));
  if (type == "groundstate" || type == "scaled_groundstate") {
    GroundStateRecord g =
        petviashvili_solve(params, grid, default_seed(grid, ex), petv_from(cfg), ex);
    if (!g.converged)
      throw std::runtime_error("initial data: ground-state solve did not converge");
    if (type == "groundstate") return g.profile;
    return amplitude_scaled(g.profile, cfg.get_real_or("initial", "scale", 0.9), ex);
  }
  throw std::invalid_argument("unknown initial.type: " + type);
}

struct DriftStats {
  double mass_rel = 0.0;
  double energy_rel = 0.0;
};

DriftStats trace_drifts(const EvolutionTrace& tr) {
  DriftStats d;
  if (tr.mass_series.empty()) return d;
  const double m0 = tr.mass_series.front();
  const double e0 = tr.energy_series.front();
  const double escale = std::max(std::abs(e0), 1e-12);
  for (std::size_t i = 0; i < tr.mass_series.size(); ++i) {
    d.mass_rel = std::max(d.mass_rel, std::abs(tr.mass_series[i] - m0) / m0);
    d.energy_rel = std::max(d.energy_rel, std::abs(tr.energy_series[i] - e0) / escale);
  }
  return d;
}

const char* outcome_name(EvolutionOutcome o) {
  switch (o) {
    case EvolutionOutcome::Completed: return "completed";
    case EvolutionOutcome::BlowupSuspected: return "blowup_suspected";
    default: return "resolution_failure";
  }
}

json trace_summary_json(const EvolutionTrace& tr) {
  double max_hs = 0.0;
  for (double v : tr.hs_series) max_hs = std::max(max_hs, v);
  return {{"outcome", outcome_name(tr.outcome)},
          {"steps", tr.steps_taken},
          {"samples", tr.times.size()},
          {"hs_initial", tr.hs_series.empty() ? 0.0 : tr.hs_series.front()},
          {"hs_final", tr.hs_series.empty() ? 0.0 : tr.hs_series.back()},
          {"hs_max", max_hs}};
}

} // namespace

// ---- derive ---------------------------------------------------------------

RunRecord cmd_derive(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  cfg.require_known(base_schema());
  RunContext ctx = make_context(cfg, cli, "derive");
  RunRecord r = start_record("derive", ctx);

  const ModelParams params = model_from(cfg);
  const DerivedExponents exps = derive_exponents(params);
  std::optional<double> C;
  if (cfg.has("model", "sharp_constant")) C = cfg.get_real("model", "sharp_constant");
  const RegimeReport reg = classify_regime(params, exps, C);

  put_model_results(r, params, exps);
  r.results["regime"] = {{"criticality", to_string(reg.criticality)},
                         {"gn_admissible", reg.gn_admissible},
                         {"gn_strict", reg.gn_strict},
                         {"wellposed_alpha", reg.wellposed_alpha}};
  if (reg.mass_threshold) r.results["regime"]["mass_threshold"] = *reg.mass_threshold;
  r.results["mass_critical_p"] = mass_critical_p(params);
  const double hi = gn_upper_endpoint(params);
  r.results["window"] = {{"s_low", 2.0},
                         {"s_high", std::isinf(hi) ? -1.0 : hi},
                         {"alpha_low", double(params.dim) / (2.0 * params.dim - 1.0)},
                         {"alpha_high", 1.0}};

  gate_le(r, "exponent_identity", std::abs(exps.A + exps.B - (params.p + 1.0)), 1e-12);

  finish_record(r, ctx, t);
  return r;
}

// ---- groundstate ------------------------------------------------------------

RunRecord cmd_groundstate(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  cfg.require_known(solver_schema());
  RunContext ctx = make_context(cfg, cli, "groundstate");
  RunRecord r = start_record("groundstate", ctx);

  const ModelParams params = model_from(cfg);
  const DerivedExponents exps = derive_exponents(params);
  const GridSpec grid = grid_from(cfg, params.dim);
  put_model_results(r, params, exps);
  r.results["grid"] = {{"n", grid.n}, {"L", grid.L}, {"h", grid.h()}};

  SolveOutput s = solve_both(params, grid, cfg, ctx.ex);
  put_groundstate_results(r, s, grid, ctx.ex);
  add_groundstate_gates(r, s);
  write_groundstate_artifacts(r, ctx, s);

  finish_record(r, ctx, t);
  return r;
}

// ---- constant ---------------------------------------------------------------

RunRecord cmd_constant(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  Schema sch = solver_schema();
  sch["battery"] = {"count"};
  cfg.require_known(sch);
  RunContext ctx = make_context(cfg, cli, "constant");
  RunRecord r = start_record("constant", ctx);

  const ModelParams params = model_from(cfg);
  const DerivedExponents exps = derive_exponents(params);
  const GridSpec grid = grid_from(cfg, params.dim);
  const WeightGrid w = make_weight(grid, params.gamma);
  put_model_results(r, params, exps);

  SolveOutput s = solve_both(params, grid, cfg, ctx.ex);
  put_groundstate_results(r, s, grid, ctx.ex);
  add_groundstate_gates(r, s);

  const ConstantReport cr = constant_report(s.petv, s.psi, params, exps, ctx.ex);
  r.results["C_formula"] = cr.C_formula;
  r.results["C_variational"] = cr.C_variational;
  r.results["relative_gap"] = cr.relative_gap;
  if (cr.strauss_C) r.results["strauss_C"] = *cr.strauss_C;
  gate_le(r, "constant_gap", cr.relative_gap, 1e-2);

  const int count = static_cast<int>(cfg.get_int_or("battery", "count", 20));
  const std::vector<Field> battery = standard_battery(grid, ctx.seed, count, ctx.ex);
  const GnVerifyReport ver =
      verify_gn_inequality(battery, params, exps, w, s.psi.beta_value, ctx.ex);
  r.results["battery"] = {{"count", ver.count},
                          {"violations", ver.violations},
                          {"min_J", ver.min_J},
                          {"min_margin", ver.min_margin}};
  gate_zero(r, "battery_violations", ver.violations);

  std::string csv = "N,alpha,gamma,p,C_formula,C_variational,relative_gap,strauss_C\n";
  csv += std::to_string(params.dim) + ',' + io::fmt_double(params.alpha) + ',' +
         io::fmt_double(params.gamma) + ',' + io::fmt_double(params.p) + ',' +
         io::fmt_double(cr.C_formula) + ',' + io::fmt_double(cr.C_variational) + ',' +
         io::fmt_double(cr.relative_gap) + ',' +
         (cr.strauss_C ? io::fmt_double(*cr.strauss_C) : std::string()) + '\n';
  io::write_text_atomic(join(ctx.out, "constants.csv"), csv);
  r.artifacts["constants"] = join(ctx.out, "constants.csv");
  write_groundstate_artifacts(r, ctx, s);

  finish_record(r, ctx, t);
  return r;
}

// ---- evolve -----------------------------------------------------------------

RunRecord cmd_evolve(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  Schema sch = solver_schema();
  sch["evolution"] = kEvoKeys;
  sch["initial"] = kInitialKeys;
  cfg.require_known(sch);
  RunContext ctx = make_context(cfg, cli, "evolve");
  RunRecord r = start_record("evolve", ctx);

  const ModelParams params = model_from(cfg);
  const DerivedExponents exps = derive_exponents(params);
  const GridSpec grid = grid_from(cfg, params.dim);
  const EvolutionConfig ecfg = evo_from(cfg);
  put_model_results(r, params, exps);
  r.results["grid"] = {{"n", grid.n}, {"L", grid.L}, {"h", grid.h()}};

  const Field u0 = initial_from(cfg, params, grid, ctx.ex);
  const EvolutionTrace tr = evolve(u0, params, ecfg, {}, ctx.ex);

  const DriftStats drift = trace_drifts(tr);
  r.results["trace"] = trace_summary_json(tr);
  r.results["mass_drift"] = drift.mass_rel;
  r.results["energy_drift"] = drift.energy_rel;
  r.results["final_boundary_mass"] = boundary_mass_fraction(tr.final_state, ctx.ex);
  r.results["final_spectral_tail"] = spectral_tail_fraction(tr.final_state, ctx.ex);

  gate_true(r, "completed", tr.outcome == EvolutionOutcome::Completed);
  gate_lt(r, "mass_drift", drift.mass_rel, 1e-10);
  gate_lt(r, "energy_drift", drift.energy_rel, 1e-6);

  io::write_trace_csv(join(ctx.out, "trace.csv"), tr);
  io::write_field(join(ctx.out, "final.fsf"), tr.final_state);
  r.artifacts["trace"] = join(ctx.out, "trace.csv");
  r.artifacts["final"] = join(ctx.out, "final.fsf");

  finish_record(r, ctx, t);
  return r;
}

// ---- stability ----------------------------------------------------------------

RunRecord cmd_stability(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  Schema sch = solver_schema();
  sch["evolution"] = kEvoKeys;
  sch["stability"] = {"delta"};
  cfg.require_known(sch);
  RunContext ctx = make_context(cfg, cli, "stability");
  RunRecord r = start_record("stability", ctx);

  const ModelParams params = model_from(cfg);
  const DerivedExponents exps = derive_exponents(params);
  const GridSpec grid = grid_from(cfg, params.dim);
  const EvolutionConfig ecfg = evo_from(cfg);
  const double delta = cfg.get_real_or("stability", "delta", 1e-2);
  put_model_results(r, params, exps);

  gate_lt(r, "B_subcritical", exps.B, 2.0);

  GroundStateRecord g =
      petviashvili_solve(params, grid, default_seed(grid, ctx.ex), petv_from(cfg), ctx.ex);
  gate_true(r, "petv_converged", g.converged);
  gate_lt(r, "petv_residual", g.residual, 1e-6);

  const Field u0 = amplitude_scaled(g.profile, 1.0 + delta, ctx.ex);
  TraceOptions topts;
  topts.orbit_reference = &g.profile;
  const EvolutionTrace tr = evolve(u0, params, ecfg, topts, ctx.ex);

  const auto& dist = tr.orbital_distance_series;
  const double d0 = dist.empty() ? 0.0 : dist.front();
  double dmax = 0.0;
  for (double v : dist) dmax = std::max(dmax, v);
  const DriftStats drift = trace_drifts(tr);

  r.results["trace"] = trace_summary_json(tr);
  r.results["delta"] = delta;
  r.results["dist_initial"] = d0;
  r.results["dist_max"] = dmax;
  r.results["dist_final"] = dist.empty() ? 0.0 : dist.back();
  r.results["dist_ratio"] = d0 > 0.0 ? dmax / d0 : 0.0;
  r.results["mass_drift"] = drift.mass_rel;
  r.results["energy_drift"] = drift.energy_rel;

  gate_true(r, "completed", tr.outcome == EvolutionOutcome::Completed);
  gate_le(r, "orbital_excursion", d0 > 0.0 ? dmax / d0 : 1e308, 10.0);

  io::write_trace_csv(join(ctx.out, "trace.csv"), tr);
  io::write_field(join(ctx.out, "phi.fsf"), g.profile);
  r.artifacts["trace"] = join(ctx.out, "trace.csv");
  r.artifacts["phi"] = join(ctx.out, "phi.fsf");

  finish_record(r, ctx, t);
  return r;
}

// ---- wellcheck ------------------------------------------------------------------

RunRecord cmd_wellcheck(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  Schema sch = solver_schema();
  sch["evolution"] = kEvoKeys;
  sch["well"] = {"a", "b", "scales"};
  cfg.require_known(sch);
  RunContext ctx = make_context(cfg, cli, "wellcheck");
  RunRecord r = start_record("wellcheck", ctx);

  const ModelParams params = model_from(cfg);
  const DerivedExponents exps = derive_exponents(params);
  const GridSpec grid = grid_from(cfg, params.dim);
  const WeightGrid w = make_weight(grid, params.gamma);
  const EvolutionConfig ecfg = evo_from(cfg);
  const double a = cfg.get_real_or("well", "a", 1.0);
  const double b = cfg.get_real_or("well", "b", 0.0);
  const std::vector<double> scales = cfg.get_list_or("well", "scales", {0.5, 0.7, 0.9});
  put_model_results(r, params, exps);

  GroundStateRecord g =
      petviashvili_solve(params, grid, default_seed(grid, ctx.ex), petv_from(cfg), ctx.ex);
  gate_true(r, "petv_converged", g.converged);
  gate_lt(r, "petv_residual", g.residual, 1e-6);

  const MReport mrep = compute_m(g, params, {{a, b}}, ctx.ex);
  const double m = mrep.m;
  r.results["m_value"] = m;
  r.results["pair"] = {{"a", a}, {"b", b}};
  gate_true(r, "m_positive", m > 0.0);

  json runs = json::array();
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double c = scales[i];
    if (!(c > 0.0)) throw std::invalid_argument("well.scales entries must be positive");
    const Field u0 = amplitude_scaled(g.profile, c, ctx.ex);
    const MembershipReport mem = stable_set_membership(u0, params, w, a, b, m, ctx.ex);

    GlobalExistenceSpec spec;
    spec.kind = GlobalExperimentKind::WellTrapping;
    spec.cfg = ecfg;
    spec.a = a;
    spec.b = b;
    spec.m = m;
    const GlobalExistenceOutcome out =
        run_global_existence_experiment(params, u0, spec, ctx.ex);

    const std::string tag = std::to_string(i);
    gate_true(r, "member_initial_" + tag, mem.member);
    gate_true(r, "trapped_" + tag, out.passed);
    runs.push_back({{"scale", c},
                    {"S0", mem.S},
                    {"K0", mem.K},
                    {"member_initial", mem.member},
                    {"membership_preserved", out.membership_preserved},
                    {"max_hs", out.max_hs},
                    {"outcome", outcome_name(out.trace.outcome)}});

    const std::string tpath = join(ctx.out, "trace_" + tag + ".csv");
    io::write_trace_csv(tpath, out.trace);
    r.artifacts["trace_" + tag] = tpath;
  }
  r.results["runs"] = runs;

  io::write_field(join(ctx.out, "phi.fsf"), g.profile);
  r.artifacts["phi"] = join(ctx.out, "phi.fsf");

  finish_record(r, ctx, t);
  return r;
}

// ---- sweep ----------------------------------------------------------------------

namespace {

using CmdFn = RunRecord (*)(const Config&, const CliOverrides&);

CmdFn sweep_target(const std::string& run) {
  if (run == "derive") return &cmd_derive;
  if (run == "groundstate") return &cmd_groundstate;
  if (run == "constant") return &cmd_constant;
  if (run == "evolve") return &cmd_evolve;
  throw std::invalid_argument("sweep.run must be derive|groundstate|constant|evolve, got " +
                              run);
}

std::string point_tag(std::size_t idx) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "pt_%03zu", idx);
  return buf;
}

} // namespace

RunRecord cmd_sweep(const Config& cfg, const CliOverrides& cli) {
  Timer t;
  Schema sch = solver_schema();
  sch["evolution"] = kEvoKeys;
  sch["initial"] = kInitialKeys;
  sch["battery"] = {"count"};
  sch["sweep"] = {"run", "workers", "alphas", "gammas", "ps"};
  cfg.require_known(sch);
  RunContext ctx = make_context(cfg, cli, "sweep");
  RunRecord r = start_record("sweep", ctx);

  const ModelParams base = model_from(cfg);
  const std::string run = cfg.get_str_or("sweep", "run", "derive");
  const CmdFn target = sweep_target(run);
  const auto alphas = cfg.get_list_or("sweep", "alphas", {base.alpha});
  const auto gammas = cfg.get_list_or("sweep", "gammas", {base.gamma});
  const auto ps = cfg.get_list_or("sweep", "ps", {base.p});

  struct Point {
    double alpha, gamma, p;
    Config cfg;
    CliOverrides cli;
  };
  std::vector<Point> points;
  for (double a : alphas)
    for (double gm : gammas)
      for (double p : ps) {
        Point pt{a, gm, p, cfg, {}};
        pt.cfg.set_real("model", "alpha", a);
        pt.cfg.set_real("model", "gamma", gm);
        pt.cfg.set_real("model", "p", p);
        pt.cli.out = join(ctx.out, point_tag(points.size()));
        pt.cli.seed = static_cast<long long>(ctx.seed);
        points.push_back(std::move(pt));
      }

  const std::size_t npts = points.size();
  int workers = static_cast<int>(
      cfg.get_int_or("sweep", "workers", std::max(1, thread_count())));
  workers = std::max(1, std::min<int>(workers, static_cast<int>(npts)));

  std::vector<RunRecord> recs(npts);
  std::vector<std::string> errors(npts);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= npts) return;
      try {
        recs[i] = target(points[i].cfg, points[i].cli);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int k = 0; k < workers; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  // aggregate table: point coordinates + the union of flat numeric results
  std::set<std::string> cols;
  for (std::size_t i = 0; i < npts; ++i) {
    if (!errors[i].empty()) continue;
    for (const auto& [k, v] : recs[i].results.items())
      if (v.is_number()) cols.insert(k);
  }
  std::string csv = "idx,alpha,gamma,p,passed";
  for (const auto& c : cols) csv += ',' + c;
  csv += '\n';
  int npassed = 0;
  json pts_json = json::array();
  for (std::size_t i = 0; i < npts; ++i) {
    const bool ok = errors[i].empty() && recs[i].all_passed();
    if (ok) ++npassed;
    csv += std::to_string(i) + ',' + io::fmt_double(points[i].alpha) + ',' +
           io::fmt_double(points[i].gamma) + ',' + io::fmt_double(points[i].p) + ',' +
           (ok ? "1" : "0");
    for (const auto& c : cols) {
      csv += ',';
      if (errors[i].empty() && recs[i].results.contains(c) && recs[i].results[c].is_number())
        csv += io::fmt_double(recs[i].results[c].get<double>());
    }
    csv += '\n';
    json pj = {{"idx", i},
               {"alpha", points[i].alpha},
               {"gamma", points[i].gamma},
               {"p", points[i].p},
               {"passed", ok},
               {"out", *points[i].cli.out}};
    if (!errors[i].empty()) pj["error"] = errors[i];
    pts_json.push_back(pj);
  }
  io::write_text_atomic(join(ctx.out, "sweep.csv"), csv);
  r.artifacts["table"] = join(ctx.out, "sweep.csv");

  r.results["run"] = run;
  r.results["points"] = pts_json;
  r.results["n_points"] = npts;
  r.results["n_passed"] = npassed;
  r.results["workers"] = workers;

  int nerrors = 0;
  for (const auto& e : errors)
    if (!e.empty()) ++nerrors;
  gate_zero(r, "point_errors", nerrors);
  gate_true(r, "all_points_passed", npassed == static_cast<int>(npts));

  finish_record(r, ctx, t);
  return r;
}

// ---- selftest -------------------------------------------------------------------

RunRecord cmd_selftest(const CliOverrides& cli) {
  Timer t;
  const Config cfg = Config::parse_string("", "<selftest>");
  RunContext ctx = make_context(cfg, cli, "selftest");
  RunRecord r = start_record("selftest", ctx);
  const Exec ex = ctx.ex;

  // gamma function against a closed form
  gate_lt(r, "gamma_half",
          std::abs(gamma_fn(0.5) - std::sqrt(std::numbers::pi)) / std::sqrt(std::numbers::pi),
          1e-14);

  // FFT round trip + Parseval on a random 1-D field
  {
    GridSpec g;
    g.dim = 1;
    g.n = 64;
    g.L = 10.0;
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Field u = Field::zeros(g);
    for (auto& v : u.values) v = {unif(rng), unif(rng)};
    Field v = Field::from_modes(g, u.modes(ex));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      num += std::norm(u.values[i] - v.values[i]);
      den += std::norm(u.values[i]);
    }
    gate_lt(r, "fft_roundtrip", std::sqrt(num / den), 1e-12);

    const double hN = g.h();
    const double dxi = std::numbers::pi / g.L;
    double phys = 0.0, spec = 0.0;
    const auto& modes = u.modes(ex);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      phys += std::norm(u.values[i]) * hN;
      spec += std::norm(modes[i]) * dxi;
    }
    gate_lt(r, "parseval", std::abs(phys - spec) / phys, 1e-12);
  }

  // fractional Laplacian at the origin of a 2-D Gaussian.  alpha = 1 is
  // grid-exact (smooth symbol); alpha = 1/2 carries the O(L^{-(N+2alpha)})
  // periodization error of the free-space comparison, hence the loose gate.
  {
    GridSpec g;
    g.dim = 2;
    g.n = 64;
    g.L = 10.0;
    Field u = gaussian_field(g, 0.5, 1.0, ex);
    const std::size_t origin = g.flatten({g.n / 2, g.n / 2, 0});
    Field lap1 = apply_fractional_laplacian(u, 1.0, ex);
    gate_lt(r, "laplacian_origin", std::abs(lap1.values[origin].real() - 2.0) / 2.0, 1e-12);
    Field lap = apply_fractional_laplacian(u, 0.5, ex);
    const double want = std::sqrt(std::numbers::pi / 2.0);
    gate_lt(r, "half_laplacian_origin",
            std::abs(lap.values[origin].real() - want) / want, 5e-3);
  }

  // chirp-z resampling against the dense transform
  {
    GridSpec g;
    g.dim = 1;
    g.n = 64;
    g.L = 10.0;
    Field u = gaussian_field(g, 0.7, 1.0, ex);
    ScaleOptions dense;
    dense.method = ResampleMethod::Dense;
    Field a = scale_field_amplitude_dilation(u, 1.3, 0.8, ex);
    Field b = scale_field_amplitude_dilation(u, 1.3, 0.8, ex, dense);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      num += std::norm(a.values[i] - b.values[i]);
      den += std::norm(b.values[i]);
    }
    gate_lt(r, "czt_vs_dense", std::sqrt(num / den), 1e-10);

    const double want = 1.3 * 1.3 / 0.8 * l2_norm(u, ex) * l2_norm(u, ex);
    const double got = l2_norm(a, ex) * l2_norm(a, ex);
    gate_lt(r, "scaling_norm_identity", std::abs(got - want) / want, 1e-8);
  }

  // K_{1,0} against a centered difference of S(lambda u)
  {
    GridSpec g;
    g.dim = 2;
    g.n = 32;
    g.L = 10.0;
    ModelParams params;
    params.dim = 2;
    params.alpha = 0.8;
    params.gamma = 0.0;
    params.p = 3.0;
    params.validate();
    const WeightGrid w = make_weight(g, params.gamma);
    Field u = gaussian_field(g, 0.5, 0.7, ex);
    const KHReport kh = K_ab(u, params, w, 1.0, 0.0, ex);
    const double e = 1e-5;
    const double sp = action(amplitude_scaled(u, 1.0 + e, ex), params, w, ex);
    const double sm = action(amplitude_scaled(u, 1.0 - e, ex), params, w, ex);
    const double fd = (sp - sm) / (2.0 * e);
    gate_lt(r, "K_matches_dS", std::abs(kh.K - fd) / std::abs(fd), 1e-7);
  }

  // config round trip
  {
    const Config c = Config::parse_string("x = 2\n[m]\nlist = [1, 2.5]\nflag = true\n");
    const bool ok = c.get_int("", "x") == 2 && c.get_list("m", "list").size() == 2 &&
                    c.get_list("m", "list")[1] == 2.5 && c.get_bool_or("m", "flag", false);
    gate_true(r, "config_parse", ok);
  }

  finish_record(r, ctx, t);
  return r;
}

// ---- dispatch ---------------------------------------------------------------------

RunRecord run_command(const std::string& name, const std::string& config_path,
                      const CliOverrides& cli) {
  Config cfg =
      config_path.empty() ? Config::parse_string("", "<none>") : Config::parse_file(config_path);
  if (cli.threads)
    set_threads(*cli.threads);
  else if (cfg.has("", "threads"))
    set_threads(static_cast<int>(cfg.get_int("", "threads")));

  if (name == "derive") return cmd_derive(cfg, cli);
  if (name == "groundstate") return cmd_groundstate(cfg, cli);
  if (name == "constant") return cmd_constant(cfg, cli);
  if (name == "evolve") return cmd_evolve(cfg, cli);
  if (name == "stability") return cmd_stability(cfg, cli);
  if (name == "wellcheck") return cmd_wellcheck(cfg, cli);
  if (name == "sweep") return cmd_sweep(cfg, cli);
  if (name == "selftest") return cmd_selftest(cli);
  throw std::invalid_argument("unknown command: " + name);
}

} // namespace fslab

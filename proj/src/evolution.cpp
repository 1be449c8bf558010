#include "fslab/evolution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fslab/fft.hpp"
#include "fslab/fieldops.hpp"
#include "fslab/kernels.hpp"

namespace fslab {

void EvolutionConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("EvolutionConfig: dt must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("EvolutionConfig: T must be positive");
  if (record_every < 1) throw std::invalid_argument("EvolutionConfig: record_every must be >= 1");
  if (!(blowup_norm_factor > 1.0))
    throw std::invalid_argument("EvolutionConfig: blowup_norm_factor must exceed 1");
  if (!(spectral_tail_limit > 0.0 && spectral_tail_limit <= 1.0))
    throw std::invalid_argument("EvolutionConfig: spectral_tail_limit must lie in (0,1]");
}

namespace {

// Mode-space linear half-step phase with the inverse-FFT normalization
// folded in, so a step is: raw fwd FFT, multiply, raw bwd FFT.
std::vector<cplx> linear_phase_table(const GridSpec& g, double t, double alpha, Exec ex) {
  const auto& xi2 = xi_squared_table(g);
  std::vector<cplx> table(g.total());
  const double norm = 1.0 / static_cast<double>(g.total());
  kernels::for_blocks(table.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const double m = xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], alpha);
      table[i] = std::polar(norm, -t * m);
    }
  });
  return table;
}

void apply_mode_table(std::vector<cplx>& state, const GridSpec& g,
                      const std::vector<cplx>& table, Exec ex) {
  fft::raw_transform(state.data(), g, fft::kForward, ex);
  kernels::for_blocks(state.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) state[i] *= table[i];
  });
  fft::raw_transform(state.data(), g, fft::kBackward, ex);
}

void apply_nonlinear_phase(std::vector<cplx>& state, const WeightGrid& w, double t, double p,
                           int eps, Exec ex) {
  const double pm1 = p - 1.0;
  kernels::for_blocks(state.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const double a2 = std::norm(state[i]);
      if (a2 == 0.0) continue;
      const double amp = pm1 == 0.0 ? 1.0 : std::pow(a2, 0.5 * pm1);
      state[i] *= std::polar(1.0, eps * t * w.samples[i] * amp);
    }
  });
}

void strang_step_inplace(std::vector<cplx>& state, const GridSpec& g,
                         const std::vector<cplx>& half_table, const WeightGrid& w, double dt,
                         double p, int eps, Exec ex) {
  apply_mode_table(state, g, half_table, ex);
  apply_nonlinear_phase(state, w, dt, p, eps, ex);
  apply_mode_table(state, g, half_table, ex);
}

bool all_finite(const std::vector<cplx>& v, Exec ex) {
  const double bad = kernels::blocked_sum(v.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i)
      if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) acc += 1.0;
    return acc;
  });
  return bad == 0.0;
}

} // namespace

Field linear_propagator_step(const Field& u, double t, double alpha, Exec ex) {
  u.check_valid();
  std::vector<cplx> state(u.values);
  const auto table = linear_phase_table(u.grid, t, alpha, ex);
  apply_mode_table(state, u.grid, table, ex);
  return Field(u.grid, std::move(state));
}

Field nonlinear_phase_step(const Field& u, double t, const WeightGrid& w, double p, int eps,
                           Exec ex) {
  if (!(u.grid == w.grid)) throw std::invalid_argument("nonlinear_phase_step: grid mismatch");
  std::vector<cplx> state(u.values);
  apply_nonlinear_phase(state, w, t, p, eps, ex);
  return Field(u.grid, std::move(state));
}

Field strang_step(const Field& u, double dt, const ModelParams& params, const WeightGrid& w,
                  Exec ex) {
  if (!(u.grid == w.grid)) throw std::invalid_argument("strang_step: grid mismatch");
  std::vector<cplx> state(u.values);
  const auto half = linear_phase_table(u.grid, 0.5 * dt, params.alpha, ex);
  strang_step_inplace(state, u.grid, half, w, dt, params.p, params.epsilon, ex);
  return Field(u.grid, std::move(state));
}

double orbital_distance(const Field& u, const Field& phi, double alpha, Exec ex) {
  const double nu = halpha_norm(u, alpha, ex);
  const double np = halpha_norm(phi, alpha, ex);
  const cplx ip = inner_halpha(u, phi, alpha, ex);
  const double d2 = nu * nu + np * np - 2.0 * std::abs(ip);
  return std::sqrt(std::max(d2, 0.0));
}

MembershipReport stable_set_membership(const Field& u, const ModelParams& params,
                                       const WeightGrid& w, double a, double b, double m,
                                       Exec ex) {
  if (!(m > 0.0)) throw std::invalid_argument("stable_set_membership: m must be positive");
  MembershipReport r;
  r.S = action(u, params, w, ex);
  r.K = K_ab(u, params, w, a, b, ex).K;
  r.member = r.S < m && r.K > 0.0;
  return r;
}

EvolutionTrace evolve(const Field& u0, const ModelParams& params, const EvolutionConfig& cfg,
                      const TraceOptions& topts, Exec ex) {
  params.validate();
  cfg.validate();
  u0.check_valid();
  if (u0.grid.dim != params.dim) throw std::invalid_argument("evolve: grid dim != params dim");
  {
    const DerivedExponents exps = derive_exponents(params);
    const RegimeReport reg = classify_regime(params, exps);
    if (!reg.wellposed_alpha && !params.debug_mode)
      throw std::invalid_argument("evolve: alpha outside the well-posedness window");
  }

  const GridSpec g = u0.grid;
  const WeightGrid w = make_weight(g, params.gamma);
  const long long nsteps = std::max(1LL, std::llround(cfg.T / cfg.dt));
  const double dt = cfg.T / static_cast<double>(nsteps);
  const auto half = linear_phase_table(g, 0.5 * dt, params.alpha, ex);

  EvolutionTrace tr;
  std::vector<cplx> state(u0.values);

  double hs0 = -1.0;
  auto sample = [&](long long step) -> bool {
    // returns false when the run must stop
    if (!all_finite(state, ex)) {
      tr.outcome = EvolutionOutcome::ResolutionFailure;
      return false;
    }
    Field snap(g, state);
    const double M = mass(snap, ex);
    const double gs = hs_seminorm(snap, params.alpha, ex);
    const double P = weighted_power_integral(snap, w, params.p + 1.0, ex);
    const double E = 0.5 * gs * gs - params.epsilon / (params.p + 1.0) * P;
    tr.times.push_back(step * dt);
    tr.mass_series.push_back(M);
    tr.energy_series.push_back(E);
    tr.hs_series.push_back(gs);
    if (topts.orbit_reference)
      tr.orbital_distance_series.push_back(
          orbital_distance(snap, *topts.orbit_reference, params.alpha, ex));
    if (topts.k_pair) {
      const KHReport kh = K_ab(snap, params, w, topts.k_pair->first, topts.k_pair->second, ex);
      tr.K_flags.push_back(kh.K > 0.0 ? 1 : (kh.K < 0.0 ? -1 : 0));
    }
    if (hs0 < 0.0) hs0 = gs;
    if (gs > cfg.blowup_norm_factor * std::max(hs0, 1e-300)) {
      tr.outcome = EvolutionOutcome::BlowupSuspected;
      return false;
    }
    if (spectral_tail_fraction(snap, ex) > cfg.spectral_tail_limit) {
      tr.outcome = EvolutionOutcome::ResolutionFailure;
      return false;
    }
    return true;
  };

  if (!sample(0)) {
    tr.final_state = Field(g, std::move(state));
    return tr;
  }
  for (long long step = 1; step <= nsteps; ++step) {
    strang_step_inplace(state, g, half, w, dt, params.p, params.epsilon, ex);
    tr.steps_taken = step;
    if (step % cfg.record_every == 0 || step == nsteps) {
      if (!sample(step)) {
        tr.final_state = Field(g, std::move(state));
        return tr;
      }
    }
  }
  tr.outcome = EvolutionOutcome::Completed;
  tr.final_state = Field(g, std::move(state));
  return tr;
}

double apriori_hs_bound(const DerivedExponents& exps, double kappa, double energy0, double hs0) {
  const double B = exps.B;
  const double rhs = 2.0 * energy0;
  if (std::abs(B - 2.0) <= 1e-12 * std::max(1.0, std::abs(B))) {
    if (!(kappa < 1.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(std::max(rhs, 0.0) / (1.0 - kappa));
  }
  auto f = [&](double y) { return y * y - kappa * std::pow(y, B) - rhs; };
  double lo = std::max(hs0, 1e-12);
  if (f(lo) > 0.0) return lo;  // already at the barrier
  double hi = lo;
  const double cap = lo * 1e8;
  while (hi < cap) {
    hi *= 1.02;
    if (f(hi) > 0.0) break;
  }
  if (f(hi) <= 0.0) return std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GlobalExistenceOutcome run_global_existence_experiment(const ModelParams& params,
                                                       const Field& u0,
                                                       const GlobalExistenceSpec& spec,
                                                       Exec ex) {
  const DerivedExponents exps = derive_exponents(params);
  GlobalExistenceOutcome out;

  TraceOptions topts;
  if (spec.kind == GlobalExperimentKind::WellTrapping) {
    if (!(spec.m > 0.0))
      throw std::invalid_argument("run_global_existence_experiment: trapping needs m > 0");
    topts.k_pair = std::make_pair(spec.a, spec.b);
  } else {
    if (!(spec.sharp_constant > 0.0))
      throw std::invalid_argument("run_global_existence_experiment: bound kinds need C > 0");
    if (params.epsilon != +1)
      throw std::invalid_argument(
          "run_global_existence_experiment: bound kinds probe the focusing sign");
  }

  out.trace = evolve(u0, params, spec.cfg, topts, ex);

  out.max_hs = 0.0;
  for (double v : out.trace.hs_series) out.max_hs = std::max(out.max_hs, v);

  switch (spec.kind) {
    case GlobalExperimentKind::SubcriticalBound:
    case GlobalExperimentKind::CriticalSubthreshold: {
      const double M0 = out.trace.mass_series.front();
      const double E0 = out.trace.energy_series.front();
      const double hs0 = out.trace.hs_series.front();
      out.kappa = 2.0 * spec.sharp_constant * std::pow(M0, 0.5 * exps.A) / (params.p + 1.0);
      out.apriori_bound = apriori_hs_bound(exps, out.kappa, E0, hs0);
      out.bound_satisfied = std::isfinite(out.apriori_bound);
      for (double v : out.trace.hs_series)
        if (v > out.apriori_bound * 1.01) out.bound_satisfied = false;
      out.passed =
          out.bound_satisfied && out.trace.outcome == EvolutionOutcome::Completed;
      break;
    }
    case GlobalExperimentKind::WellTrapping: {
      out.membership_preserved = !out.trace.K_flags.empty();
      for (std::size_t i = 0; i < out.trace.times.size(); ++i) {
        const double S = out.trace.energy_series[i] + 0.5 * out.trace.mass_series[i];
        if (!(S < spec.m) || out.trace.K_flags[i] <= 0) out.membership_preserved = false;
      }
      out.passed =
          out.membership_preserved && out.trace.outcome == EvolutionOutcome::Completed;
      break;
    }
  }
  return out;
}

} // namespace fslab

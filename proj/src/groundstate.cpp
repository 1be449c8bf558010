#include "fslab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <cstdio>
#include <cstdlib>

#include "fslab/fft.hpp"
#include "fslab/fieldops.hpp"
#include "fslab/functionals.hpp"
#include "fslab/kernels.hpp"

namespace fslab {

namespace {

void require_solver_admissible(const ModelParams& params) {
  params.validate();
  if (params.gamma < 0.0)
    throw std::invalid_argument("groundstate: gamma < 0 is outside the solver hypotheses");
  if (!(params.p > 1.0))
    throw std::invalid_argument("groundstate: p must exceed 1");
  if (params.epsilon != 1)
    throw std::invalid_argument("groundstate: defocusing sign admits no ground state");
  const RegimeReport reg = check_gn_window(params);
  if (!reg.gn_strict)
    throw std::invalid_argument("groundstate: parameters violate the strict admissibility window");
}

// Rotate the global phase so the origin sample is real nonnegative.
void fix_phase(Field& f, Exec ex) {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < f.grid.dim; ++d) idx[d] = f.grid.n / 2;
  const cplx v = f.values[f.grid.flatten(idx)];
  if (std::abs(v) == 0.0) return;
  const cplx rot = std::conj(v) / std::abs(v);
  if (rot == cplx{1.0, 0.0}) return;
  kernels::for_blocks(f.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) f.values[i] *= rot;
  });
  f.drop_modes();
}

// All reported integrals use the dealiased P: it is the quantity the solvers
// below are stationary for, so identities like Nehari and K_{a,b} = 0 hold at
// the converged iterate instead of drifting by the collocation aliasing.
void fill_norms(GroundStateRecord& r, const ModelParams& params, Exec ex) {
  r.mass = mass(r.profile, ex);
  r.seminorm = hs_seminorm(r.profile, params.alpha, ex);
  r.nonlinear_integral = nonlinear_integral_dealiased(r.profile, params, ex);
  r.action_value = 0.5 * (r.mass + r.seminorm * r.seminorm) -
                   r.nonlinear_integral / (params.p + 1.0);
}

} // namespace

Field default_seed(const GridSpec& grid, Exec ex) {
  Field f = Field::from_fn(
      grid,
      [](const std::array<double, 3>& x) {
        return cplx{std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])), 0.0};
      },
      ex);
  const double nrm = l2_norm(f, ex);
  kernels::for_blocks(f.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) f.values[i] /= nrm;
  });
  f.drop_modes();
  return f;
}

const std::vector<std::pair<double, double>>& default_pairs() {
  static const std::vector<std::pair<double, double>> pairs{{1.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}};
  return pairs;
}

GroundStateRecord petviashvili_solve(const ModelParams& params, const GridSpec& grid,
                                     const Field& seed, const PetviashviliOptions& opts,
                                     Exec ex) {
  require_solver_admissible(params);
  grid.validate();
  if (grid.dim != params.dim)
    throw std::invalid_argument("petviashvili_solve: grid dim != params dim");
  seed.check_valid();
  if (!(seed.grid == grid)) throw std::invalid_argument("petviashvili_solve: seed grid mismatch");

  const auto& xi2 = xi_squared_table(grid);
  const double p = params.p;
  const double theta = p / (p - 1.0);
  const double dxi = std::pow(std::numbers::pi / grid.L, grid.dim);
  const std::size_t total = grid.total();

  const double seed_norm = l2_norm(seed, ex);
  if (!(seed_norm > 0.0)) throw std::runtime_error("petviashvili_solve: zero seed");

  // multiplier tables for (I + (-Lap)^alpha) and its inverse
  std::vector<double> sym(total), inv_sym(total);
  kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const double s = 1.0 + (xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], params.alpha));
      sym[i] = s;
      inv_sym[i] = 1.0 / s;
    }
  });

  GroundStateRecord rec;
  rec.kind = ProfileKind::EulerLagrangeUnit;
  // For gamma > 0 the symmetric fixed point repels within the full lattice
  // space: off-origin translates are energetically cheaper, so a symmetry-
  // breaking mode has multiplier > 1 and rounding noise eventually carries
  // the iteration to an off-center state.  Point-group averaging annihilates
  // every translation-like mode while keeping the exact (slightly
  // anisotropic) lattice fixed point inside the subspace -- equal-|x| orbit
  // averaging would not: it merges orbits such as (5,0) and (3,4) that the
  // solution distinguishes, capping the residual well above tol.
  Field phi = symmetrize_point_group(seed, ex);

  for (int it = 0; it < opts.max_iter; ++it) {
    const auto& modes = phi.modes(ex);

    // <(I+(-Lap)^alpha) phi, phi> and the linear image in mode space
    const double quad = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
      double acc = 0.0;
      for (std::size_t i = i0; i < i1; ++i) acc += sym[i] * std::norm(modes[i]);
      return acc;
    }) * dxi;

    // <nl, phi> = P(phi) by Parseval; the band truncation drops nothing
    // against a band-limited phi
    std::vector<cplx> nl_modes = nonlinear_modes_dealiased(phi, params, ex);
    const double pw = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
      double acc = 0.0;
      for (std::size_t i = i0; i < i1; ++i)
        acc += (nl_modes[i] * std::conj(modes[i])).real();
      return acc;
    }) * dxi;

    if (!(pw > 0.0)) throw std::runtime_error("petviashvili_solve: degenerate seed (P = 0)");
    const double stab = quad / pw;

    // phi_next = stab^theta (I+(-Lap)^alpha)^{-1} nl;  residual uses the same
    // transforms: r = ||sym * modes(phi_next) - modes(nl_next)|| / ||phi_next||_{H^alpha}
    const double boost = std::pow(stab, theta);
    std::vector<cplx> next_modes(total);
    kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i) next_modes[i] = boost * inv_sym[i] * nl_modes[i];
    });
    Field next = symmetrize_point_group(Field::from_modes(grid, next_modes, ex), ex);

    const double next_norm = l2_norm(next, ex);
    if (!(next_norm > 1e-14 * seed_norm) || !std::isfinite(next_norm))
      throw std::runtime_error("petviashvili_solve: iteration collapsed to zero");

    // residual of the new iterate
    std::vector<cplx> nl_next_modes = nonlinear_modes_dealiased(next, params, ex);
    const auto& nm = next.modes(ex);
    const double res2 = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
      double acc = 0.0;
      for (std::size_t i = i0; i < i1; ++i) acc += std::norm(sym[i] * nm[i] - nl_next_modes[i]);
      return acc;
    }) * dxi;
    const double hnorm = halpha_norm(next, params.alpha, ex);
    const double res = std::sqrt(res2) / hnorm;

    phi = std::move(next);
    rec.residual_history.push_back(res);
    rec.iterations = it + 1;
    rec.residual = res;
    if (res < opts.tol) {
      rec.converged = true;
      break;
    }
  }

  fix_phase(phi, ex);
  rec.profile = std::move(phi);
  fill_norms(rec, params, ex);
  rec.m_value = rec.action_value;
  return rec;
}

Field normalize_unit_pair(const Field& u, const ModelParams& params, Exec ex) {
  u.check_valid();
  // The closed-form (lambda, mu) is exact in the continuum; on the grid one
  // resampling leaves norm defects at the level of the spectral tail of u
  // (algebraic for gamma != 0).  Iterating the map contracts those defects
  // to rounding; once both norms are unit the dilation degenerates to
  // mu = 1 and the pass is a pure (exact) amplitude scaling.
  Field v = u;
  for (int pass = 0; pass < 5; ++pass) {
    const double nrm = l2_norm(v, ex);
    const double semi = hs_seminorm(v, params.alpha, ex);
    if (!(nrm > 0.0) || !(semi > 0.0))
      throw std::invalid_argument("normalize_unit_pair: degenerate input");
    if (std::abs(nrm - 1.0) < 5e-14 && std::abs(semi - 1.0) < 5e-14) break;
    const double N = params.dim;
    const double mu = std::pow(nrm / semi, 1.0 / params.alpha);
    const double lambda = std::pow(nrm, N / (2.0 * params.alpha) - 1.0) /
                          std::pow(semi, N / (2.0 * params.alpha));
    v = scale_field_amplitude_dilation(v, lambda, mu, ex);
  }
  return v;
}

GroundStateRecord minimize_J(const ModelParams& params, const GridSpec& grid, const Field& seed,
                             const DescentOptions& opts, Exec ex) {
  require_solver_admissible(params);
  grid.validate();
  if (grid.dim != params.dim)
    throw std::invalid_argument("minimize_J: grid dim != params dim");
  seed.check_valid();
  if (!(seed.grid == grid)) throw std::invalid_argument("minimize_J: seed grid mismatch");

  const DerivedExponents exps = derive_exponents(params);
  const double A = exps.A, B = exps.B;
  const auto& xi2 = xi_squared_table(grid);
  const double p = params.p;
  const double dxi = std::pow(std::numbers::pi / grid.L, grid.dim);
  const std::size_t total = grid.total();

  std::vector<double> frac_mult(total);
  kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i)
      frac_mult[i] = xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], params.alpha);
  });

  // The iterate's samples stay on the request grid, but the box is rescaled
  // per step so the unit pair holds exactly.  A dilation on a fixed lattice
  // needs resampling, whose error scales with the iterate's roughness and
  // stalls the search on a noise treadmill; scaling the box instead is exact:
  // every functional of (samples, box sL) is a closed-form power of s times
  // the base-grid functional,
  //   M^2 -> s^N M^2,  G^2 -> s^{N-2a} G^2,  P -> s^{N+gamma} P,
  // and the amplitude factor that re-pins M = G = 1 multiplies the samples
  // pointwise, so it commutes with the index-based class projections.
  double s = 1.0;  // current box = s * grid.L
  const double N = static_cast<double>(grid.dim);

  // J's constituents on the current box; J = G^B M^A / P with M = ||u||,
  // G = |u|_{H^alpha}, both unsquared.  No normalization is assumed anywhere:
  // the gradient below divides by the actual norms.
  struct Pieces {
    double msq = 0.0, gsq = 0.0, P = 0.0;
    double J = std::numeric_limits<double>::infinity();
  };
  auto eval = [&](const Field& u) {
    Pieces q;
    const double nrm = l2_norm(u, ex);
    const double semi = hs_seminorm(u, params.alpha, ex);
    q.msq = std::pow(s, N) * nrm * nrm;
    q.gsq = std::pow(s, N - 2.0 * params.alpha) * semi * semi;
    q.P = std::pow(s, N + params.gamma) * nonlinear_integral_dealiased(u, params, ex);
    if (q.P > 0.0 && std::isfinite(q.msq) && std::isfinite(q.gsq))
      q.J = std::pow(q.gsq, 0.5 * B) * std::pow(q.msq, 0.5 * A) / q.P;
    return q;
  };

  // exact unit-pair renormalization: amplitude times box scale, no resampling
  auto renorm = [&](Field& u) {
    const double nrm = l2_norm(u, ex);
    const double semi = hs_seminorm(u, params.alpha, ex);
    if (!(nrm > 0.0) || !(semi > 0.0))
      throw std::runtime_error("minimize_J: degenerate iterate");
    s = std::pow(semi / nrm, 1.0 / params.alpha);
    const double lam = std::pow(s, -0.5 * N) / nrm;
    kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i) u.values[i] *= lam;
    });
    u.drop_modes();
  };

  // grad ln J = B (-Lap)^alpha psi / G^2 + A psi / M^2 - (p+1) w psi|psi|^{p-1} / P
  // on the current box, exact at any scaling of psi (the unit-pair form is
  // the special case G = M = 1, beta = 1/P).  The box scale folds into the
  // multiplier (s^{-2a}) and the weight (s^gamma); the nonlinear part is the
  // dealiased gradient, the exact partner of the P used in eval above.
  auto euler_modes = [&](const Field& psi, const Pieces& q) {
    const auto& pm = psi.modes(ex);
    const double s2a = std::pow(s, -2.0 * params.alpha);
    const double cB = B / q.gsq, cA = A / q.msq;
    std::vector<cplx> lin(total);
    kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i) lin[i] = (cB * s2a * frac_mult[i] + cA) * pm[i];
    });
    std::vector<cplx> nl_modes = nonlinear_modes_dealiased(psi, params, ex);
    const double c = (p + 1.0) * std::pow(s, params.gamma) / q.P;
    kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i) lin[i] -= c * nl_modes[i];
    });
    return lin;
  };

  GroundStateRecord rec;
  rec.kind = ProfileKind::JMinimizer;

  // The infimum is taken over radial functions with decay, and on the torus
  // both properties must be imposed or the lattice offers escapes below the
  // variational value.  Mass concentrating off the origin sends
  // J ~ eps^gamma -> 0 for gamma > 0 (the centered bump is a saddle along
  // symmetrized-translation modes since Lap|x|^gamma > 0), and any state
  // whose support approaches the box boundary is subsidized: its tails wrap
  // instead of paying decay, the clipped corner orbits at L < |x| < sqrt(N) L
  // carry peak weight with no amplitude dilution, and a support cut close to
  // the boundary costs only an h-underresolved jump.  All of these live
  // within a fixed fraction of the box edge, so phase 1 searches
  // {orbit-averaged, supported in |x| <= 2L/3}: complete orbits only, with a
  // boundary margin that stays proportionally deep at every rescaling of the
  // box bookkeeping.  Trial families (plateaus, rings, tapers) confined to
  // that ball measure J well above the bump at every tested resolution, while
  // the bump itself loses only ~1e-4 of J to the cut.
  //
  // That class cannot finish the job: the exact lattice stationary point is
  // anisotropic at the 1e-4 level (the discrete symbol is not radial), and
  // orbit averaging excludes it -- the defining-equation residual of the
  // averaged minimizer floors at O(1e-2) once |xi|^{2a} amplifies the
  // missing high-frequency content.  A second, local phase therefore
  // releases to the point-group symmetric class, which contains the exact
  // point (and its power-law tails, which a support cut would clip into a
  // residual floor).  That class also admits the translation saddle and the
  // boundary valley, but phase 2 starts from an exactly radial iterate
  // already near the target, so those escape modes enter only at rounding
  // level and the residual tolerance is met orders of magnitude before they
  // could surface.
  const double rcut1 =
      opts.support_radius > 0.0 ? opts.support_radius : 2.0 * grid.L / 3.0;
  auto project = [&](const Field& u, int phase) {
    return phase == 1 ? radialize(u, rcut1, ex) : symmetrize_point_group(u, ex);
  };

  int phase = 1;
  bool phase1_settled = false;
  double res_floor = std::numeric_limits<double>::infinity();
  Field psi = project(seed, phase);
  renorm(psi);
  Pieces q = eval(psi);
  if (!(q.P > 0.0)) throw std::invalid_argument("minimize_J: degenerate seed, P = 0");

  const double h_meas = std::pow(grid.h(), grid.dim);
  double eta_warm = opts.step0;
  Field cand(grid, std::vector<cplx>(total));
  auto make_cand = [&](const Field& base, const Field& dir, double eta) -> const Field& {
    kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i)
        cand.values[i] = base.values[i] - eta * dir.values[i];
    });
    cand.drop_modes();
    return cand;
  };

  for (int it = 0; it < opts.max_iter; ++it) {
    std::vector<cplx> g_modes = euler_modes(psi, q);
    Field e_field = Field::from_modes(grid, g_modes, ex);

    // recorded residual: the defining equation itself, not a projection,
    // relative to the size of its linear part
    const double num2 = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
      double acc = 0.0;
      for (std::size_t i = i0; i < i1; ++i) acc += std::norm(e_field.values[i]);
      return acc;
    }) * h_meas;
    const auto& pm = psi.modes(ex);
    const double s2a = std::pow(s, -2.0 * params.alpha);
    const double cB = B / q.gsq, cA = A / q.msq;
    const double den2 = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
      double acc = 0.0;
      for (std::size_t i = i0; i < i1; ++i)
        acc += std::norm((cA + cB * s2a * frac_mult[i]) * pm[i]);
      return acc;
    }) * dxi;
    const double res = den2 > 0.0 ? std::sqrt(num2 / den2) : std::numeric_limits<double>::infinity();
    rec.residual_history.push_back(res);
    rec.iterations = it + 1;
    rec.residual = res;
    if (res < opts.residual_tol) {
      rec.converged = true;
      break;
    }

    Field er = project(e_field, phase);
    // TEMP TRACE
    if (std::getenv("FSLAB_TRACE") && it < 80) {
      double p2 = 0.0;
      for (std::size_t i = 0; i < total; ++i) p2 += std::norm(er.values[i]);
      p2 *= h_meas;
      std::fprintf(stderr, "it=%3d ph=%d res=%.3e projres=%.3e J=%.9f M=%.6f G=%.6f\n", it, phase,
                   res, std::sqrt(p2 / den2), q.J, std::sqrt(q.msq), std::sqrt(q.gsq));
    }
    if (phase == 1) {
      // Release to phase 2 once the orbit-averaged class is exhausted:
      // either the projected Euler field is L2-negligible against the
      // defining equation's linear part, or J has settled to within the
      // relative tolerance a gradient step can still buy there.
      const double proj2 = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
        double acc = 0.0;
        for (std::size_t i = i0; i < i1; ++i) acc += std::norm(er.values[i]);
        return acc;
      }) * h_meas;
      if (proj2 < 1e-8 * den2 || phase1_settled || it >= opts.max_iter / 2) {
        phase = 2;
        er = project(e_field, phase);
        eta_warm = std::min(eta_warm, opts.step0);
      }
    }

    // preconditioned direction, kept in the current feasible class
    std::vector<cplx> dm = er.modes(ex);
    kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
      for (std::size_t i = i0; i < i1; ++i) dm[i] /= A + B * s2a * frac_mult[i];
    });
    Field dir = project(Field::from_modes(grid, dm, ex), phase);

    // d/deta ln J(psi - eta dir) at 0; > 0 since the preconditioner is SPD
    const double sN = std::pow(s, N);
    const double slope = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
      double acc = 0.0;
      for (std::size_t i = i0; i < i1; ++i)
        acc += (er.values[i] * std::conj(dir.values[i])).real();
      return acc;
    }) * h_meas * sN;

    // Trust region: the displacement per step is capped at a fraction of
    // ||psi|| = 1, and near stationarity the cap contracts with the
    // residual.  The stationary point is a local minimum, but the lattice
    // keeps a genuinely lower valley behind a finite barrier (states whose
    // tails lean on the box boundary wrap instead of paying decay), and a
    // line search that accepts any J-decreasing step can vault that barrier
    // once it extrapolates far enough.  Steps that shrink with the gradient
    // cannot: they cost iterations, not correctness.
    const double dir_norm = std::sqrt(kernels::blocked_sum(
                                total, ex,
                                [&](std::size_t i0, std::size_t i1) {
                                  double acc = 0.0;
                                  for (std::size_t i = i0; i < i1; ++i)
                                    acc += std::norm(dir.values[i]);
                                  return acc;
                                }) *
                            h_meas * sN);
    res_floor = std::min(res_floor, res);
    const double max_disp = std::min(0.1, 3.0 * res_floor);
    const double eta_cap = dir_norm > 0.0 ? max_disp / dir_norm : opts.step0;

    // One-probe line search: J is near-quadratic in eta over many decades, so
    // fit the parabola through J(0), J'(0) = -slope*J and one probe, jump to
    // its vertex, and keep the better point.  A shrink-only search crawls
    // here: the curvature along the preconditioned direction can be tiny and
    // the optimal step routinely sits far above any fixed step0.  The vertex
    // warm-starts the next probe; per-iteration growth is capped so the
    // search cannot vault out of the basin in one move.
    double eta = std::min(eta_warm, eta_cap);
    bool accepted = false;
    double J_acc = q.J;
    double eta_acc = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      const double J1 = eval(make_cand(psi, dir, eta)).J;
      if (J1 < q.J) {
        accepted = true;
        J_acc = J1;
        eta_acc = eta;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // J at rounding floor; the recorded residual decides
    if (slope > 0.0) {
      const double sJ = slope * q.J;
      const double curv = 2.0 * (J_acc - q.J + sJ * eta_acc) / (eta_acc * eta_acc);
      if (curv > 0.0) {
        const double eta_star =
            std::min(std::clamp(sJ / curv, 0.25 * eta_acc, 4.0 * eta_acc), eta_cap);
        if (eta_star != eta_acc) {
          const double J2 = eval(make_cand(psi, dir, eta_star)).J;
          if (J2 < J_acc) {
            J_acc = J2;
            eta_acc = eta_star;
          }
        }
      }
    }
    // class projection first (the step's transform leakage is swept off),
    // then the exact renormalization, which preserves the class
    const double J_prev = q.J;
    psi = project(make_cand(psi, dir, eta_acc), phase);
    renorm(psi);
    q = eval(psi);
    if (phase == 1 && J_prev - q.J < 1e-7 * q.J) phase1_settled = true;
    eta_warm = std::clamp(eta_acc, 1e-12, 1e9);
    // TEMP TRACE
    if (std::getenv("FSLAB_TRACE") && it < 80)
      std::fprintf(stderr, "      eta=%.3e cap=%.3e Jacc=%.9f Jafter=%.9f s=%.6f slope=%.3e\n",
                   eta_acc, eta_cap, J_acc, q.J, s, slope);
  }

  fix_phase(psi, ex);
  // the minimizer lives on the rescaled box; the grid records it
  GridSpec out_grid = grid;
  out_grid.L = s * grid.L;
  rec.profile = Field(out_grid, std::move(psi.values));
  fill_norms(rec, params, ex);
  rec.beta_value = rec.nonlinear_integral > 0.0 ? 1.0 / rec.nonlinear_integral : 0.0;
  return rec;
}

GroundStateRecord rescale_minimizer_to_groundstate(const GroundStateRecord& psi,
                                                   const ModelParams& params, Exec ex) {
  require_solver_admissible(params);
  if (psi.kind != ProfileKind::JMinimizer)
    throw std::invalid_argument("rescale_minimizer_to_groundstate: input must be a J-minimizer");
  if (!psi.converged)
    throw std::invalid_argument("rescale_minimizer_to_groundstate: input not converged");
  const DerivedExponents exps = derive_exponents(params);
  const double A = exps.A, B = exps.B;
  if (!(B > 0.0))
    throw std::invalid_argument("rescale_minimizer_to_groundstate: B must be positive");
  const double beta = psi.beta_value;
  if (!(beta > 0.0))
    throw std::invalid_argument("rescale_minimizer_to_groundstate: beta must be positive");

  const double ratio = A / B;
  const double b = std::pow(ratio, 1.0 / (2.0 * params.alpha));
  const double a = std::pow(std::pow(ratio, params.gamma / (2.0 * params.alpha)) * A /
                                (beta * (1.0 + params.p)),
                            1.0 / (params.p - 1.0));

  // psi = a phi(b .)  =>  phi(x) = (1/a) psi(x/b).  On the lattice this is
  // exact: divide the samples by a and relabel the box L -> b L (the sample
  // at x carries the value psi(x)/a, now read at position b x).  No
  // resampling, so the minimizer's stationarity carries over verbatim to the
  // defining equation's residual.
  GridSpec phi_grid = psi.profile.grid;
  phi_grid.L = b * phi_grid.L;
  std::vector<cplx> phi_vals = psi.profile.values;
  for (auto& v : phi_vals) v /= a;
  Field phi(phi_grid, std::move(phi_vals));

  GroundStateRecord rec;
  rec.kind = ProfileKind::EulerLagrangeUnit;
  rec.profile = std::move(phi);

  const GridSpec grid = rec.profile.grid;
  fill_norms(rec, params, ex);
  rec.m_value = rec.action_value;
  rec.iterations = psi.iterations;
  rec.converged = psi.converged;

  // residual of the target equation
  const auto& xi2 = xi_squared_table(grid);
  const double dxi = std::pow(std::numbers::pi / grid.L, grid.dim);
  const auto& pm = rec.profile.modes(ex);
  std::vector<cplx> nl_modes = nonlinear_modes_dealiased(rec.profile, params, ex);
  const std::size_t total = grid.total();
  double res2 = kernels::blocked_sum(total, ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const double s = 1.0 + (xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], params.alpha));
      acc += std::norm(s * pm[i] - nl_modes[i]);
    }
    return acc;
  }) * dxi;
  const double hnorm = std::sqrt(rec.mass + rec.seminorm * rec.seminorm);
  rec.residual = hnorm > 0.0 ? std::sqrt(res2) / hnorm : std::numeric_limits<double>::infinity();
  rec.residual_history.push_back(rec.residual);

  // consistency value from the printed formula beta = A/(1+p) (A/B)^{-B/2} ||phi||^{p-1}
  rec.beta_value = A / (1.0 + params.p) * std::pow(ratio, -0.5 * B) *
                   std::pow(std::sqrt(rec.mass), params.p - 1.0);
  return rec;
}

MReport compute_m(const GroundStateRecord& phi, const ModelParams& params,
                  const std::vector<std::pair<double, double>>& pairs, Exec ex) {
  if (phi.kind != ProfileKind::EulerLagrangeUnit)
    throw std::invalid_argument("compute_m: record must hold a ground state");
  if (!phi.converged) throw std::invalid_argument("compute_m: record not converged");
  const Field& f = phi.profile;
  const double M = mass(f, ex);
  const double gs = hs_seminorm(f, params.alpha, ex);
  const double P = nonlinear_integral_dealiased(f, params, ex);
  MReport r;
  r.m = 0.5 * (M + gs * gs) - params.epsilon / (params.p + 1.0) * P;
  r.pair_K.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const KHReport kh = K_ab_dealiased(f, params, a, b, ex);
    r.pair_K.push_back({a, b, kh.K});
  }
  return r;
}

} // namespace fslab

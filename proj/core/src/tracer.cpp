#include "seqpath/tracer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "seqpath/rng.hpp"

namespace seqpath {

namespace {

double schedule_log(const SolverConfig& cfg, double t) {
  return cfg.log10_schedule ? std::log10(t) : std::log(t);
}

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

// Rows of the augmented system span many orders of magnitude near t = 0
// (unreached-set rows scale with t). Equilibrate before factoring or the
// solve loses the small rows entirely.
Eigen::VectorXd solve_equilibrated(Eigen::MatrixXd M, Eigen::VectorXd rhs) {
  for (int i = 0; i < M.rows(); ++i) {
    const double s = M.row(i).cwiseAbs().maxCoeff();
    if (s > 0) {
      M.row(i) /= s;
      rhs[i] /= s;
    }
  }
  return M.partialPivLu().solve(rhs);
}

Eigen::VectorXd draw_alpha(int m0, const SolverConfig& cfg, int retry) {
  Rng rng = Rng(cfg.seed).split(0xa1fa).split(static_cast<std::uint64_t>(retry));
  // Later retries shrink the perturbation: a smaller alpha moves the
  // artifact branches of the w-reduction closer to w = 0 and away from the
  // path being traced.
  const double mag = cfg.alpha_max * std::pow(0.3, retry);
  Eigen::VectorXd a(m0);
  for (int k = 0; k < m0; ++k) a[k] = rng.uniform(-mag, mag);
  return a;
}

}  // namespace

double predictor_step_size(const SolverConfig& cfg, double t) {
  return cfg.step_scale * std::pow(10.0, cfg.step_exponent * schedule_log(cfg, t));
}

double corrector_tolerance(const SolverConfig& cfg, double t) {
  return cfg.corrector_scale *
         std::pow(10.0, cfg.corrector_exponent * schedule_log(cfg, t));
}

PathTracer::PathTracer(const GameTree& game, const SolverConfig& config)
    : game_(game), config_(config), system_(game, config) {}

Eigen::VectorXd PathTracer::tangent_at(const HomotopyPoint& point,
                                       const Eigen::VectorXd& orient) const {
  const int m0 = system_.dimension();
  Eigen::MatrixXd M(m0 + 1, m0 + 1);
  M.topRows(m0) = system_.jacobian(point);
  M.bottomRows(1) = orient.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m0 + 1);
  rhs[m0] = 1.0;
  Eigen::VectorXd tan = solve_equilibrated(M, rhs);
  const double err = (M * tan - rhs).norm();
  if (!finite(tan) || !(tan.norm() > 0) || err > 1e-6 * (1 + tan.norm()))
    throw std::runtime_error("rank-deficient Jacobian along the path");
  tan.normalize();
  if (tan.dot(orient) < 0) tan = -tan;  // keep the solve's orientation honest
  return tan;
}

PathTracer::CorrectorResult PathTracer::correct(
    const HomotopyPoint& trial, const Eigen::VectorXd& tangent,
    double tol_override) const {
  const int m0 = system_.dimension();
  CorrectorResult res;
  res.point = trial;

  Eigen::VectorXd x(m0 + 1);
  x.head(m0) = trial.coords;
  x[m0] = trial.t;
  const Eigen::VectorXd anchor = x;

  auto unpack = [&](const Eigen::VectorXd& v) {
    HomotopyPoint p;
    p.coords = v.head(m0);
    p.t = v[m0];
    return p;
  };

  Eigen::VectorXd g;
  double gnorm = 0;
  auto eval = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) -> bool {
    HomotopyPoint p = unpack(v);
    if (p.t <= 0 || p.t > 1.5) return false;
    out = system_.residual(p);
    return finite(out);
  };
  if (!eval(x, g)) return res;
  gnorm = g.lpNorm<Eigen::Infinity>();

  auto tol_at = [&](double t) {
    return tol_override >= 0 ? tol_override : corrector_tolerance(config_, t);
  };
  for (res.iterations = 0; res.iterations <= config_.max_newton;
       ++res.iterations) {
    HomotopyPoint p = unpack(x);
    Eigen::MatrixXd M(m0 + 1, m0 + 1);
    M.topRows(m0) = system_.jacobian(p);
    M.bottomRows(1) = tangent.transpose();
    if (!M.allFinite()) break;
    // Scale rows by their coordinate block: the t-column of an unreached
    // set's row stays O(1) while the rest decays with t, and it must not
    // mask the decay.
    Eigen::VectorXd scales(m0 + 1);
    for (int i = 0; i <= m0; ++i) {
      double s = M.row(i).head(m0).cwiseAbs().maxCoeff();
      if (!(s > 0)) s = M.row(i).cwiseAbs().maxCoeff();
      scales[i] = s > 0 ? s : 1.0;
      M.row(i) /= scales[i];
    }
    // Distance to the path is measured in the row-equilibrated norm; rows of
    // unreached information sets scale with t and would otherwise be
    // invisible next to the O(1) rows. Both the raw and the scaled norm must
    // clear the schedule.
    auto merit = [&](const Eigen::VectorXd& gv, const Eigen::VectorXd& xv) {
      double worst = std::abs(tangent.dot(xv - anchor)) / scales[m0];
      for (int i = 0; i < m0; ++i)
        worst = std::max(worst, std::abs(gv[i]) / scales[i]);
      return worst;
    };
    const double cur_merit = merit(g, x);
    res.converged = std::max(gnorm, cur_merit) <= tol_at(x[m0]);
    // Acceptance uses the schedule, but the iteration keeps refining to the
    // rounding floor: staying essentially exactly on the branch is what
    // keeps the tracker from drifting onto a neighboring one.
    if (cur_merit <= 1e-11) break;
    if (res.iterations == config_.max_newton) break;

    Eigen::VectorXd rhs(m0 + 1);
    rhs.head(m0) = -g;
    rhs[m0] = -tangent.dot(x - anchor);
    rhs.array() /= scales.array();
    const Eigen::VectorXd delta = M.partialPivLu().solve(rhs);
    if (!finite(delta)) break;

    double scale = 1.0;
    bool stepped = false;
    for (int bt = 0; bt < 6; ++bt, scale *= 0.5) {
      Eigen::VectorXd xn = x + scale * delta;
      Eigen::VectorXd gn;
      if (!eval(xn, gn)) continue;
      const double gnn = gn.lpNorm<Eigen::Infinity>();
      if (merit(gn, xn) < cur_merit ||
          std::max(gnn, merit(gn, xn)) <= tol_at(xn[m0])) {
        x = std::move(xn);
        g = std::move(gn);
        gnorm = gnn;
        stepped = true;
        break;
      }
    }
    if (!stepped) break;
  }
  res.point = unpack(x);
  res.residual_norm = gnorm;
  return res;
}

double PathTracer::polish_at(HomotopyPoint& p, double level,
                             double tol) const {
  const int m0 = system_.dimension();
  p.t = level;
  Eigen::VectorXd g = system_.residual(p);
  if (!finite(g)) return std::numeric_limits<double>::infinity();
  double cur_norm = g.lpNorm<Eigen::Infinity>();
  HomotopyPoint best_point = p;
  double best_norm = cur_norm;

  for (int it = 0; it < 2 * config_.max_newton && cur_norm > tol; ++it) {
    Eigen::MatrixXd J = system_.jacobian(p).leftCols(m0);
    Eigen::VectorXd scales(m0), rhs = -g;
    for (int i = 0; i < m0; ++i) {
      const double s = J.row(i).cwiseAbs().maxCoeff();
      scales[i] = s > 0 ? s : 1.0;
      J.row(i) /= scales[i];
      rhs[i] /= scales[i];
    }
    auto merit = [&](const Eigen::VectorXd& gv) {
      return (gv.array() / scales.array()).abs().maxCoeff();
    };
    const double cur = merit(g);

    auto try_step = [&](const Eigen::VectorXd& delta) {
      if (!finite(delta)) return false;
      for (double scale = 1.0; scale > 1e-3; scale *= 0.5) {
        HomotopyPoint trial = p;
        trial.coords += scale * delta;
        const Eigen::VectorXd gn = system_.residual(trial);
        if (!gn.allFinite()) continue;
        if (merit(gn) < cur || gn.lpNorm<Eigen::Infinity>() <= tol) {
          p = trial;
          g = gn;
          cur_norm = g.lpNorm<Eigen::Infinity>();
          if (cur_norm < best_norm) {
            best_norm = cur_norm;
            best_point = p;
          }
          return true;
        }
      }
      return false;
    };

    // The endgame system can be exactly singular when the equilibrium being
    // approached lies on a component with free directions; a minimum-norm
    // step still lands on the solution manifold.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    cod.setThreshold(1e-12);
    bool stepped = try_step(cod.solve(rhs));
    if (!stepped) {
      // Damped fallback for basins the plain Newton direction misses.
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd Jtr = J.transpose() * rhs;
      const double diag = JtJ.diagonal().maxCoeff();
      for (double damp = 1e-8 * std::max(diag, 1e-30);
           !stepped && damp <= 1e4 * std::max(diag, 1e-30); damp *= 100) {
        Eigen::MatrixXd A = JtJ;
        A.diagonal().array() += damp;
        stepped = try_step(A.ldlt().solve(Jtr));
      }
    }
    if (!stepped) break;
  }
  if (best_norm < cur_norm) p = best_point;
  return std::min(best_norm, cur_norm);
}

bool PathTracer::trace_once(PathResult& result) {
  const int m0 = system_.dimension();
  result.trace.steps.clear();
  result.iterations = 0;

  HomotopyPoint x = system_.start_point();
  {
    TraceStep s;
    s.t = x.t;
    s.step_size = 0;
    s.corrector_iters = 0;
    s.beta = system_.strategy(x).probs;
    result.trace.steps.push_back(std::move(s));
  }

  Eigen::VectorXd orient = Eigen::VectorXd::Zero(m0 + 1);
  orient[m0] = -1.0;  // leave t=1 downward
  double h = predictor_step_size(config_, x.t);
  int cheap_streak = 0;

  for (int step = 0; step < config_.max_steps; ++step) {
    result.terminal = x;
    if (x.t < config_.t_end) {
      result.trace.status = "converged";
      return true;
    }
    // Long creep phases (the tangent nearly orthogonal to t) happen when the
    // limit sits on a component of equilibria; the frozen-t descent finishes
    // those runs far more cheaply.
    if (result.iterations >= config_.max_arclength_steps &&
        x.t < config_.t_switch) {
      result.trace.status = "stalled";
      result.failure_reason = "arclength step budget spent";
      return false;
    }
    Eigen::VectorXd tan;
    try {
      tan = tangent_at(x, orient);
    } catch (const std::exception& e) {
      result.trace.status = "singular-jacobian";
      result.failure_reason = e.what();
      return false;
    }

    double h_eff = std::min(h, predictor_step_size(config_, x.t));
    // Do not shoot past the termination band into t <= 0.
    if (tan[m0] < 0) {
      const double h_cross = (x.t - 0.5 * config_.t_end) / (-tan[m0]);
      if (h_eff > h_cross) h_eff = std::max(h_cross, config_.min_step);
    }

    HomotopyPoint trial;
    trial.coords = x.coords + h_eff * tan.head(m0);
    trial.t = x.t + h_eff * tan[m0];

    CorrectorResult corr = correct(trial, tan);
    bool ok = corr.converged && corr.point.t > 0 && corr.point.t < 1.2;
    if (ok && config_.formulation == Formulation::kWSystem)
      ok = (corr.point.coords.array() > 0).all();
    if (ok) {
      x = corr.point;
      orient = tan;
      result.iterations += 1;
      TraceStep s;
      s.t = x.t;
      s.step_size = h_eff;
      s.corrector_iters = corr.iterations;
      s.beta = system_.strategy(x).probs;
      result.trace.steps.push_back(std::move(s));
      if (corr.iterations <= config_.cheap_iters) {
        if (++cheap_streak >= config_.growth_streak) {
          h = h_eff * config_.step_growth;
          cheap_streak = 0;
        } else {
          h = h_eff;
        }
      } else {
        cheap_streak = 0;
        h = h_eff;
      }
    } else {
      cheap_streak = 0;
      h = h_eff / 2;
      if (h < config_.min_step) {
        result.trace.status = "stalled";
        result.failure_reason = "predictor step underflowed after rejections";
        return false;
      }
    }
  }
  result.trace.status = "max-steps";
  result.failure_reason = "step budget exhausted before t_end";
  return false;
}

// Natural-parameter continuation in t, used when the arclength phase has
// already carried the point into the endgame. The perturbation is scaled
// down proportionally with the level, so the system deforms smoothly into
// the unperturbed one instead of jumping near the coalescence at t = 0.
bool PathTracer::descend_to_end(HomotopyPoint& p, PathResult& result,
                                const Eigen::VectorXd& alpha_at_start) {
  const double tight = 1e-13 * std::max(1.0, game_.payoff_range());
  const double t_start = p.t;
  double factor = 0.5;
  while (p.t >= config_.t_end) {
    const double target = std::max(0.5 * config_.t_end, p.t * factor);
    auto attempt = [&](const Eigen::VectorXd& alpha) {
      system_.set_alpha(alpha);
      HomotopyPoint trial = p;
      const double achieved = polish_at(trial, target, tight);
      bool ok = achieved <= corrector_tolerance(config_, target) &&
                finite(trial.coords);
      if (ok && config_.formulation == Formulation::kWSystem)
        ok = (trial.coords.array() > 0).all();
      if (ok) p = trial;
      return ok;
    };
    // The unperturbed stage is preferred (no extraneous near-zero branches
    // in the w-reduction); the proportionally ramped one is the smooth
    // fallback when the jump misses its basin.
    bool ok = attempt(Eigen::VectorXd::Zero(system_.dimension()));
    if (!ok && alpha_at_start.size() > 0 && t_start > 0)
      ok = attempt((target / t_start) * alpha_at_start);
    if (ok) {
      factor = std::max(0.5, factor * factor);
      result.iterations += 1;
      TraceStep s;
      s.t = p.t;
      s.step_size = 0;
      s.corrector_iters = 0;
      s.beta = system_.strategy(p).probs;
      result.trace.steps.push_back(std::move(s));
    } else {
      factor = std::sqrt(factor);
      if (factor > 0.995) return false;
    }
  }
  return true;
}

bool PathTracer::finish_attempt(PathResult& result) {
  // Final correctors on frozen t levels down to the polish level, then
  // round vanishing probabilities and check the terminal assessment.
  // The path perturbation alpha is switched off here: it exists to keep the
  // interior path regular, scales out of the system at the endpoints, and
  // would otherwise bias the strategies and beliefs of unreached
  // information sets by O(alpha).
  const Eigen::VectorXd path_alpha = system_.alpha();
  const double polish_tol = 1e-13 * std::max(1.0, game_.payoff_range());
  HomotopyPoint p = result.terminal;

  system_.set_alpha(Eigen::VectorXd::Zero(system_.dimension()));
  double res_norm = polish_at(p, p.t, polish_tol);
  if (!(res_norm <= 1e-8)) {
    // The jump onto the unperturbed branch missed its basin; ramp the
    // perturbation down instead of switching it off at once.
    p = result.terminal;
    for (double s = 0.5; s > 1e-3; s *= 0.5) {
      system_.set_alpha(s * path_alpha);
      polish_at(p, p.t, polish_tol);
    }
    system_.set_alpha(Eigen::VectorXd::Zero(system_.dimension()));
    res_norm = polish_at(p, p.t, polish_tol);
  }
  if (!(res_norm <= 1e-8)) {
    // Branches coalesce as t -> 0; retry the handoff from a lifted level
    // where they are farther apart, then walk back down.
    for (double lift : {100.0 * result.terminal.t, 1e-3, 1e-2}) {
      if (lift >= config_.t_switch) break;
      p = result.terminal;
      res_norm = polish_at(p, lift, polish_tol);
      if (res_norm <= 1e-8 &&
          descend_to_end(p, result, Eigen::VectorXd())) {
        res_norm = polish_at(p, p.t, polish_tol);
        break;
      }
      res_norm = std::numeric_limits<double>::infinity();
    }
  }
  double level = p.t;
  while (level > config_.polish_t && res_norm <= 1e-8) {
    level = std::max(config_.polish_t, level / 10.0);
    res_norm = polish_at(p, level, polish_tol);
  }
  result.polish_residual = res_norm;
  system_.set_alpha(path_alpha);
  if (!(res_norm <= 1e-8)) {
    result.success = false;
    result.failure_reason = "polish failed to land on the unperturbed branch";
    return false;
  }

  result.terminal = p;
  result.assessment = system_.recover_assessment(p, config_.polish_t);
  result.unrounded_profile = result.assessment.profile;

  // Snap numerically dead actions to zero and renormalize.
  BehavioralProfile& beta = result.assessment.profile;
  for (const InformationSet& is : game_.infosets()) {
    double sum = 0;
    for (int a = 0; a < is.num_actions(); ++a) {
      double& v = beta.probs[is.first_flat_index + a];
      if (v < config_.round_threshold) v = 0;
      sum += v;
    }
    for (int a = 0; a < is.num_actions(); ++a)
      beta.probs[is.first_flat_index + a] /= sum;
  }

  result.verdict = check_sequential(game_, result.assessment,
                                    1e-4 * game_.payoff_range());
  result.success = result.verdict.accepted;
  if (!result.success)
    result.failure_reason =
        "terminal assessment failed the equilibrium check: " +
        result.verdict.reason;
  return result.success;
}

PathResult PathTracer::run() {
  const auto t0 = std::chrono::steady_clock::now();
  PathResult result;
  system_.reset_identity_error();

  const bool alpha_fixed = !config_.alpha.empty();
  for (int retry = 0; retry <= config_.alpha_retries; ++retry) {
    if (retry > 0) {
      if (alpha_fixed) break;  // a caller-pinned alpha is not retried
      system_.set_alpha(draw_alpha(system_.dimension(), config_, retry));
      result.alpha_retries_used = retry;
    }
    bool traced = trace_once(result);
    if (!traced && result.trace.status == "stalled" &&
        result.terminal.t < config_.t_switch && result.terminal.t > 0) {
      const Eigen::VectorXd stalled_alpha = system_.alpha();
      HomotopyPoint p = result.terminal;
      const bool descended = descend_to_end(p, result, stalled_alpha);
      system_.set_alpha(stalled_alpha);
      if (descended) {
        result.terminal = p;
        result.trace.status = "converged";
        result.failure_reason.clear();
        traced = true;
      }
    }
    if (traced && finish_attempt(result)) break;
    if (!traced && result.failure_reason.empty())
      result.failure_reason = "path tracing failed";
  }

  result.alpha_used.assign(system_.alpha().data(),
                           system_.alpha().data() + system_.dimension());
  result.max_identity_error = system_.worst_identity_error();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

PathResult trace(const GameTree& game, const SolverConfig& config) {
  return PathTracer(game, config).run();
}

void write_trace_tsv(std::ostream& os, const GameTree& game,
                     const TraceRecord& record) {
  os << "t\tstep\tcorrector_iters";
  for (const InformationSet& is : game.infosets())
    for (const std::string& a : is.actions)
      os << "\tp" << is.player << "." << is.label << "." << a;
  os << "\n";
  char buf[64];
  for (const TraceStep& s : record.steps) {
    std::snprintf(buf, sizeof buf, "%.17g", s.t);
    os << buf;
    std::snprintf(buf, sizeof buf, "%.17g", s.step_size);
    os << "\t" << buf << "\t" << s.corrector_iters;
    for (double b : s.beta) {
      std::snprintf(buf, sizeof buf, "%.17g", b);
      os << "\t" << buf;
    }
    os << "\n";
  }
}

}  // namespace seqpath

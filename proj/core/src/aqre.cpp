#include "seqpath/aqre.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "profile_eval.hpp"

namespace seqpath {

namespace {

// ubar[k] = P[k] / omega[I(k)]: the conditional payoff of Eq.-style
// normalization. Interior profiles keep omega > 0 whenever the chance law
// has full support.
struct AqreEval {
  Eigen::VectorXd beta, ubar;
  Eigen::MatrixXd dubar;  // d ubar / d v (via beta = exp(v))
};

void eval_aqre(const GameTree& game, const detail::EvalTables& tables,
               const AqrePoint& pt, bool derivs, AqreEval& out) {
  const int m0 = tables.m0;
  out.beta = pt.v.array().exp();
  detail::ProfileEval prof;
  detail::eval_profile(tables, out.beta, derivs, prof);
  out.ubar.resize(m0);
  for (int k = 0; k < m0; ++k) {
    const double om = prof.omega[tables.flat_infoset[k]];
    if (!(om > 0))
      throw AssessmentError(
          "information set '" +
          game.infosets()[tables.flat_infoset[k]].label +
          "' is unreachable under an interior profile");
    out.ubar[k] = prof.P[k] / om;
  }
  if (!derivs) return;
  out.dubar.resize(m0, m0);
  for (int k = 0; k < m0; ++k) {
    const int gi = tables.flat_infoset[k];
    const double om = prof.omega[gi];
    // d/dv_q = (dP/dpi_q - ubar * dOmega/dpi_q)/omega * beta_q
    out.dubar.row(k) =
        ((prof.dP.row(k) - out.ubar[k] * prof.dOmega.row(gi)) / om)
            .cwiseProduct(out.beta.transpose());
  }
}

Eigen::VectorXd residual_impl(const GameTree& game,
                              const detail::EvalTables& tables,
                              const AqrePoint& pt) {
  AqreEval ev;
  eval_aqre(game, tables, pt, false, ev);
  Eigen::VectorXd R(tables.m0);
  int row = 0;
  for (const InformationSet& is : game.infosets()) {
    const int k0 = is.first_flat_index;
    for (int a = 1; a < is.num_actions(); ++a) {
      const int k = k0 + a;
      R[row++] = pt.v[k0] - pt.v[k] - pt.gamma * (ev.ubar[k0] - ev.ubar[k]);
    }
    double sum = 0;
    for (int a = 0; a < is.num_actions(); ++a) sum += ev.beta[k0 + a];
    R[row++] = sum - 1.0;
  }
  return R;
}

// Bayes beliefs straight from the log-strategy variables. Ratios of reach
// probabilities stay well-defined long after exp(v) underflows.
BeliefSystem beliefs_from_v(const GameTree& game, const Eigen::VectorXd& v) {
  BeliefSystem mu;
  mu.by_infoset.resize(game.infosets().size());
  for (const InformationSet& is : game.infosets()) {
    std::vector<double> lr;
    lr.reserve(is.members.size());
    double best = -std::numeric_limits<double>::infinity();
    for (const GameNode* h : is.members) {
      double acc = 0;
      for (const GameNode* n = h; n->parent != nullptr; n = n->parent) {
        const GameNode* p = n->parent;
        acc += p->is_chance()
                   ? std::log(p->chance_probs[n->edge_index])
                   : v[game.flat_index(p->infoset, n->edge_index)];
      }
      lr.push_back(acc);
      best = std::max(best, acc);
    }
    if (!std::isfinite(best))
      throw AssessmentError("information set '" + is.label +
                            "' unreachable under the chance law");
    double denom = 0;
    for (double& x : lr) {
      x = std::exp(x - best);
      denom += x;
    }
    for (double& x : lr) x /= denom;
    mu.by_infoset[is.global_index] = std::move(lr);
  }
  return mu;
}

Eigen::MatrixXd jacobian_impl(const GameTree& game,
                              const detail::EvalTables& tables,
                              const AqrePoint& pt) {
  AqreEval ev;
  eval_aqre(game, tables, pt, true, ev);
  const int m0 = tables.m0;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m0, m0);
  int row = 0;
  for (const InformationSet& is : game.infosets()) {
    const int k0 = is.first_flat_index;
    for (int a = 1; a < is.num_actions(); ++a) {
      const int k = k0 + a;
      J.row(row) = -pt.gamma * (ev.dubar.row(k0) - ev.dubar.row(k));
      J(row, k0) += 1.0;
      J(row, k) -= 1.0;
      ++row;
    }
    for (int a = 0; a < is.num_actions(); ++a)
      J(row, k0 + a) = ev.beta[k0 + a];
    ++row;
  }
  return J;
}

}  // namespace

Eigen::VectorXd aqre_residual(const GameTree& game, const AqrePoint& point) {
  detail::EvalTables tables(game);
  return residual_impl(game, tables, point);
}

Eigen::MatrixXd aqre_jacobian(const GameTree& game, const AqrePoint& point) {
  detail::EvalTables tables(game);
  return jacobian_impl(game, tables, point);
}

AqreResult aqre_trace(const GameTree& game, const AqreConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::EvalTables tables(game);
  const int m0 = tables.m0;

  AqreResult result;
  AqrePoint pt;
  pt.gamma = 0;
  pt.v.resize(m0);
  for (const InformationSet& is : game.infosets())
    for (int a = 0; a < is.num_actions(); ++a)
      pt.v[is.first_flat_index + a] = -std::log(double(is.num_actions()));

  auto record = [&](int iters) {
    AqreStep s;
    s.gamma = pt.gamma;
    s.newton_iters = iters;
    Eigen::VectorXd b = pt.v.array().exp();
    s.beta.assign(b.data(), b.data() + m0);
    result.trace.push_back(std::move(s));
  };
  record(0);

  result.status = "reached-gamma-max";
  AqrePoint last_good = pt;
  while (pt.gamma < cfg.gamma_max) {
    AqrePoint next = pt;
    next.gamma = std::min(cfg.gamma_max,
                          std::max(cfg.growth * pt.gamma, pt.gamma + cfg.add));
    bool converged = false;
    int iters = 0;
    Eigen::VectorXd g = residual_impl(game, tables, next);
    double gnorm = g.lpNorm<Eigen::Infinity>();
    for (; iters < cfg.max_newton; ++iters) {
      if (!g.allFinite()) break;
      if (gnorm <= cfg.newton_tol) {
        converged = true;
        break;
      }
      Eigen::MatrixXd J = jacobian_impl(game, tables, next);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
      Eigen::VectorXd delta = lu.solve(-g);
      if (!delta.allFinite()) break;
      double scale = 1.0;
      bool stepped = false;
      for (int bt = 0; bt < 6; ++bt, scale *= 0.5) {
        AqrePoint trial = next;
        trial.v += scale * delta;
        if (trial.v.maxCoeff() > 60) continue;  // exp overflow guard
        Eigen::VectorXd gn;
        try {
          gn = residual_impl(game, tables, trial);
        } catch (const AssessmentError&) {
          continue;
        }
        if (!gn.allFinite()) continue;
        const double gnn = gn.lpNorm<Eigen::Infinity>();
        if (gnn < gnorm || gnn <= cfg.newton_tol) {
          next.v = trial.v;
          g = std::move(gn);
          gnorm = gnn;
          stepped = true;
          break;
        }
      }
      if (!stepped) break;
    }
    if (!converged) {
      result.status = "corrector-failure at gamma " + std::to_string(next.gamma);
      break;
    }
    pt = next;
    last_good = pt;
    result.iterations += 1;
    record(iters);
  }

  result.reached_gamma_max = last_good.gamma >= cfg.gamma_max;
  result.terminal_gamma = last_good.gamma;
  Eigen::VectorXd b = last_good.v.array().exp();
  result.beta.probs.assign(b.data(), b.data() + m0);
  // Interior profile: renormalize residual dust so validation passes.
  for (const InformationSet& is : game.infosets()) {
    double sum = 0;
    for (int a = 0; a < is.num_actions(); ++a)
      sum += result.beta.probs[is.first_flat_index + a];
    for (int a = 0; a < is.num_actions(); ++a)
      result.beta.probs[is.first_flat_index + a] /= sum;
  }
  result.beliefs = beliefs_from_v(game, last_good.v);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace seqpath

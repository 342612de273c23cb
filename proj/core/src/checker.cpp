#include "seqpath/checker.hpp"

#include <algorithm>
#include <cmath>

namespace seqpath {

namespace {

// Gap test shared by all variants: actions trailing the per-set maximum by
// more than `gamma_like` may carry at most `prob_cap` probability.
CheckVerdict run_gap_check(const GameTree& game, const BehavioralProfile& beta,
                           const BehavioralProfile& payoff_beta,
                           const BeliefSystem& mu, double gamma_like,
                           double prob_cap, bool build_certificate) {
  CheckVerdict verdict;
  verdict.accepted = true;
  Certificate cert;
  cert.lambda.resize(game.num_actions_total());
  cert.zeta.resize(game.infosets().size());

  for (const InformationSet& is : game.infosets()) {
    const int n = is.num_actions();
    std::vector<double> u(n);
    int best = 0;
    for (int a = 0; a < n; ++a) {
      u[a] = conditional_action_payoff(game, payoff_beta, mu, is.global_index,
                                       a);
      if (u[a] > u[best]) best = a;
    }
    cert.zeta[is.global_index] = u[best];
    for (int a = 0; a < n; ++a) {
      const double gap = u[best] - u[a];
      cert.lambda[is.first_flat_index + a] = gap;
      if (gap > gamma_like && beta.probs[is.first_flat_index + a] > prob_cap) {
        verdict.accepted = false;
        if (!verdict.worst || gap > verdict.worst->magnitude)
          verdict.worst = Violation{is.global_index, best, a, gap};
      }
    }
  }
  if (verdict.accepted && build_certificate)
    verdict.certificate = std::move(cert);
  if (!verdict.accepted && verdict.worst) {
    const InformationSet& is = game.infosets()[verdict.worst->infoset];
    verdict.reason = "at information set '" + is.label + "' of player " +
                     std::to_string(is.player) + ", action '" +
                     is.actions[verdict.worst->worse_action] +
                     "' is dominated by '" +
                     is.actions[verdict.worst->better_action] + "' (gap " +
                     std::to_string(verdict.worst->magnitude) +
                     ") but keeps positive probability";
  }
  return verdict;
}

double belief_residual(const GameTree& game, const Assessment& as) {
  const BeliefSystem bayes = bayes_beliefs(game, as.profile);
  double worst = 0;
  for (std::size_t i = 0; i < bayes.by_infoset.size(); ++i)
    for (std::size_t m = 0; m < bayes.by_infoset[i].size(); ++m)
      worst = std::max(worst, std::abs(bayes.by_infoset[i][m] -
                                       as.beliefs.by_infoset[i][m]));
  return worst;
}

}  // namespace

CheckVerdict check_sequential(const GameTree& game, const Assessment& as,
                              double tol) {
  validate_profile(game, as.profile);
  validate_beliefs(game, as.beliefs);
  return run_gap_check(game, as.profile, as.profile, as.beliefs, tol, tol,
                       true);
}

CheckVerdict check_eps_gamma(const GameTree& game, const Assessment& as,
                             double eps, double gamma, double tol) {
  validate_profile(game, as.profile);
  if (!as.profile.totally_mixed())
    throw AssessmentError("check_eps_gamma requires a totally mixed profile");
  const double resid = belief_residual(game, as);
  if (resid > tol) {
    CheckVerdict v;
    v.accepted = false;
    v.worst = Violation{-1, -1, -1, resid};
    v.reason = "beliefs are not the Bayes beliefs of the profile (residual " +
               std::to_string(resid) + ")";
    return v;
  }
  return run_gap_check(game, as.profile, as.profile, as.beliefs, gamma, eps,
                       true);
}

CheckVerdict check_eps_perfect(const GameTree& game, const Assessment& as,
                               double eps, double tol) {
  return check_eps_gamma(game, as, eps, tol, tol);
}

CheckVerdict check_eps_gamma_separated(const GameTree& game,
                                       const BehavioralProfile& beta,
                                       const PerturbationVector& eta,
                                       double gamma, double tol) {
  validate_profile(game, beta);
  const BehavioralProfile mixed = perturb(game, beta, eta);
  const BeliefSystem mu = bayes_beliefs(game, mixed);
  // Gaps at the perturbed profile; the exact-zero test applies to beta.
  return run_gap_check(game, beta, mixed, mu, gamma, tol, true);
}

std::optional<int> match_equilibrium_class(const FixtureGame& fixture,
                                           const Assessment& as,
                                           double margin,
                                           double strict_margin) {
  const GameTree& game = *fixture.game;
  for (std::size_t c = 0; c < fixture.classes.size(); ++c) {
    bool ok = true;
    for (const CoordConstraint& cc : fixture.classes[c].constraints) {
      double v;
      if (cc.target == CoordConstraint::Target::kStrategy)
        v = as.profile.probs[game.flat_index(cc.infoset, cc.index)];
      else
        v = as.beliefs.by_infoset[cc.infoset][cc.index];
      const double lo = cc.lo_open ? cc.lo + strict_margin : cc.lo - margin;
      const double hi = cc.hi_open ? cc.hi - strict_margin : cc.hi + margin;
      if (!(v >= lo && v <= hi)) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<int>(c);
  }
  return std::nullopt;
}

}  // namespace seqpath

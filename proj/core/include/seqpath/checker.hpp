#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqpath/assessment.hpp"
#include "seqpath/fixtures.hpp"
#include "seqpath/game.hpp"

namespace seqpath {

// Feasibility witness: zeta is the per-set value, lambda the per-action slack.
struct Certificate {
  std::vector<double> lambda;  // flat layout, >= 0
  std::vector<double> zeta;    // per information set
};

struct Violation {
  int infoset = -1;
  int better_action = -1;
  int worse_action = -1;
  double magnitude = 0;  // payoff gap (or residual for belief mismatches)
};

struct CheckVerdict {
  bool accepted = false;
  std::optional<Violation> worst;
  std::optional<Certificate> certificate;
  std::string reason;
};

// Local sequential rationality of a (presumed consistent) assessment: every
// action whose conditional payoff trails the best by more than tol must
// carry probability at most tol.
CheckVerdict check_sequential(const GameTree& game, const Assessment& as,
                              double tol = 1e-6);

// Totally mixed assessment; beliefs must be Bayes beliefs of the profile
// (residual <= tol) and actions dominated by more than gamma must carry
// probability <= eps.
CheckVerdict check_eps_gamma(const GameTree& game, const Assessment& as,
                             double eps, double gamma, double tol = 1e-6);

// gamma = 0 variant: any strictly dominated action (gap > tol) is capped
// at eps.
CheckVerdict check_eps_perfect(const GameTree& game, const Assessment& as,
                               double eps, double tol = 1e-6);

// Perturbation separated from strategies: payoffs and beliefs are evaluated
// at the perturbed profile, and dominated actions must carry *zero* base
// probability (<= tol).
CheckVerdict check_eps_gamma_separated(const GameTree& game,
                                       const BehavioralProfile& beta,
                                       const PerturbationVector& eta,
                                       double gamma, double tol = 1e-6);

// Index of the first class whose constraints all hold, or nullopt. Closed
// bounds are relaxed by margin; open bounds must hold strictly with
// strict_margin of room.
std::optional<int> match_equilibrium_class(const FixtureGame& fixture,
                                           const Assessment& as,
                                           double margin = 1e-4,
                                           double strict_margin = 1e-9);

}  // namespace seqpath

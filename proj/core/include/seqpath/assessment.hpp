#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqpath/game.hpp"

namespace seqpath {

// One probability per (information set, action), in flat layout order.
struct BehavioralProfile {
  std::vector<double> probs;

  double operator()(const GameTree& game, int infoset, int action) const {
    return probs[game.flat_index(infoset, action)];
  }
  bool totally_mixed() const {
    for (double p : probs)
      if (!(p > 0)) return false;
    return true;
  }
};

// One probability per member history of each information set.
struct BeliefSystem {
  std::vector<std::vector<double>> by_infoset;
};

struct Assessment {
  BehavioralProfile profile;
  BeliefSystem beliefs;
};

// Per-action tremble weights: entries strictly positive, per-set sums < 1.
struct PerturbationVector {
  std::vector<double> eta;  // flat layout

  double tau(const GameTree& game, int infoset) const;
};

class AssessmentError : public GameError {
 public:
  using GameError::GameError;
};

// Thrown when Bayes beliefs are requested at an unreachable set.
class UndefinedBeliefError : public AssessmentError {
 public:
  UndefinedBeliefError(const std::string& what, int infoset)
      : AssessmentError(what), infoset_index(infoset) {}
  int infoset_index;
};

BehavioralProfile uniform_profile(const GameTree& game);

// Throws unless every vector is nonnegative and sums to 1 within 1e-12.
void validate_profile(const GameTree& game, const BehavioralProfile& beta);
void validate_beliefs(const GameTree& game, const BeliefSystem& mu);

// Realization probability of history h under beta (chance law included).
double reach_probability(const GameTree& game, const BehavioralProfile& beta,
                         const GameNode& h);

// Same product with the factor at any prefix inside `infoset` skipped.
double reach_probability_excluding(const GameTree& game,
                                   const BehavioralProfile& beta, int infoset,
                                   int action, const GameNode& h);

double infoset_reach_probability(const GameTree& game,
                                 const BehavioralProfile& beta, int infoset);

// Bayes beliefs at every information set; throws UndefinedBeliefError if any
// set has zero realization probability.
BeliefSystem bayes_beliefs(const GameTree& game, const BehavioralProfile& beta);

// Bayes belief vector of a single reachable information set.
std::vector<double> bayes_beliefs_at(const GameTree& game,
                                     const BehavioralProfile& beta,
                                     int infoset);

double expected_payoff(const GameTree& game, const BehavioralProfile& beta,
                       PlayerId player);

// Conditional expected payoff of the owning player on `infoset` when playing
// `action` there, with weights nu(h | a, beta^{-I}, mu).
double conditional_action_payoff(const GameTree& game,
                                 const BehavioralProfile& beta,
                                 const BeliefSystem& mu, int infoset,
                                 int action);

// Conditional expected payoff on `infoset` under beta itself.
double conditional_profile_payoff(const GameTree& game,
                                  const BehavioralProfile& beta,
                                  const BeliefSystem& mu, int infoset);

// Unconditional expected payoff along terminals through `infoset`; with an
// action, the factor at the set itself is replaced by 1.
double partial_payoff(const GameTree& game, const BehavioralProfile& beta,
                      int infoset, std::optional<int> action = std::nullopt);

// (1 - tau) * beta + eta, per information set. Throws if any tau >= 1.
BehavioralProfile perturb(const GameTree& game, const BehavioralProfile& beta,
                          const PerturbationVector& eta);

// Homotopy tremble eta(t) = t * prior, so tau = t and the perturbed profile
// is (1 - t) * beta + t * prior.
BehavioralProfile perturb_toward(const GameTree& game,
                                 const BehavioralProfile& beta,
                                 const BehavioralProfile& prior, double t);

}  // namespace seqpath

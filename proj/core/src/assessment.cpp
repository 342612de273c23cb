#include "seqpath/assessment.hpp"

#include <cmath>
#include <sstream>

namespace seqpath {

namespace {

constexpr double kProbTol = 1e-12;

// Expected payoff of `player` in the subtree under `node` when everyone
// follows beta below it.
double downstream_value(const GameTree& game, const BehavioralProfile& beta,
                        const GameNode& node, PlayerId player) {
  if (node.is_terminal()) return node.payoffs[player - 1];
  double value = 0;
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    const double p = node.is_chance()
                         ? node.chance_probs[k]
                         : beta.probs[game.flat_index(node.infoset,
                                                      static_cast<int>(k))];
    if (p != 0) value += p * downstream_value(game, beta, *node.children[k], player);
  }
  return value;
}

}  // namespace

double PerturbationVector::tau(const GameTree& game, int infoset) const {
  const InformationSet& is = game.infosets()[infoset];
  double sum = 0;
  for (int a = 0; a < is.num_actions(); ++a)
    sum += eta[is.first_flat_index + a];
  return sum;
}

BehavioralProfile uniform_profile(const GameTree& game) {
  BehavioralProfile beta;
  beta.probs.resize(game.num_actions_total());
  for (const InformationSet& is : game.infosets()) {
    const double p = 1.0 / is.num_actions();
    for (int a = 0; a < is.num_actions(); ++a)
      beta.probs[is.first_flat_index + a] = p;
  }
  return beta;
}

void validate_profile(const GameTree& game, const BehavioralProfile& beta) {
  if (static_cast<int>(beta.probs.size()) != game.num_actions_total())
    throw AssessmentError("profile has wrong dimension");
  for (const InformationSet& is : game.infosets()) {
    double sum = 0;
    for (int a = 0; a < is.num_actions(); ++a) {
      const double p = beta.probs[is.first_flat_index + a];
      if (!(p >= 0)) throw AssessmentError("negative strategy probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol)
      throw AssessmentError("strategy vector at '" + is.label +
                            "' does not sum to 1");
  }
}

void validate_beliefs(const GameTree& game, const BeliefSystem& mu) {
  if (mu.by_infoset.size() != game.infosets().size())
    throw AssessmentError("belief system has wrong dimension");
  for (const InformationSet& is : game.infosets()) {
    const auto& v = mu.by_infoset[is.global_index];
    if (v.size() != is.members.size())
      throw AssessmentError("belief vector at '" + is.label +
                            "' has wrong dimension");
    double sum = 0;
    for (double p : v) {
      if (!(p >= 0)) throw AssessmentError("negative belief");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol)
      throw AssessmentError("belief vector at '" + is.label +
                            "' does not sum to 1");
  }
}

double reach_probability(const GameTree& game, const BehavioralProfile& beta,
                         const GameNode& h) {
  double prod = 1;
  for (const GameNode* n = &h; n->parent != nullptr; n = n->parent) {
    const GameNode* p = n->parent;
    prod *= p->is_chance()
                ? p->chance_probs[n->edge_index]
                : beta.probs[game.flat_index(p->infoset, n->edge_index)];
  }
  return prod;
}

double reach_probability_excluding(const GameTree& game,
                                   const BehavioralProfile& beta, int infoset,
                                   int action, const GameNode& h) {
  const InformationSet& is = game.infosets()[infoset];
  if (action < 0 || action >= is.num_actions())
    throw AssessmentError("action outside A(I)");
  double prod = 1;
  for (const GameNode* n = &h; n->parent != nullptr; n = n->parent) {
    const GameNode* p = n->parent;
    if (p->is_decision() && p->infoset == infoset) continue;
    prod *= p->is_chance()
                ? p->chance_probs[n->edge_index]
                : beta.probs[game.flat_index(p->infoset, n->edge_index)];
  }
  return prod;
}

double infoset_reach_probability(const GameTree& game,
                                 const BehavioralProfile& beta, int infoset) {
  double sum = 0;
  for (const GameNode* h : game.infosets()[infoset].members)
    sum += reach_probability(game, beta, *h);
  return sum;
}

std::vector<double> bayes_beliefs_at(const GameTree& game,
                                     const BehavioralProfile& beta,
                                     int infoset) {
  const InformationSet& is = game.infosets()[infoset];
  std::vector<double> numer;
  numer.reserve(is.members.size());
  double denom = 0;
  for (const GameNode* h : is.members) {
    numer.push_back(reach_probability(game, beta, *h));
    denom += numer.back();
  }
  if (!(denom > 0)) {
    throw UndefinedBeliefError(
        "undefined belief: information set '" + is.label + "' of player " +
            std::to_string(is.player) + " has zero realization probability",
        is.global_index);
  }
  for (double& p : numer) p /= denom;
  return numer;
}

BeliefSystem bayes_beliefs(const GameTree& game,
                           const BehavioralProfile& beta) {
  BeliefSystem mu;
  mu.by_infoset.resize(game.infosets().size());
  for (const InformationSet& is : game.infosets())
    mu.by_infoset[is.global_index] =
        bayes_beliefs_at(game, beta, is.global_index);
  return mu;
}

double expected_payoff(const GameTree& game, const BehavioralProfile& beta,
                       PlayerId player) {
  if (player < 1 || player > game.num_players())
    throw AssessmentError("unknown player");
  return downstream_value(game, beta, game.root(), player);
}

double conditional_action_payoff(const GameTree& game,
                                 const BehavioralProfile& beta,
                                 const BeliefSystem& mu, int infoset,
                                 int action) {
  const InformationSet& is = game.infosets()[infoset];
  if (action < 0 || action >= is.num_actions())
    throw AssessmentError("action outside A(I)");
  double value = 0;
  for (std::size_t m = 0; m < is.members.size(); ++m) {
    const double w = mu.by_infoset[infoset][m];
    if (w == 0) continue;
    value += w * downstream_value(game, beta, *is.members[m]->children[action],
                                  is.player);
  }
  return value;
}

double conditional_profile_payoff(const GameTree& game,
                                  const BehavioralProfile& beta,
                                  const BeliefSystem& mu, int infoset) {
  const InformationSet& is = game.infosets()[infoset];
  double value = 0;
  for (std::size_t m = 0; m < is.members.size(); ++m) {
    const double w = mu.by_infoset[infoset][m];
    if (w == 0) continue;
    value += w * downstream_value(game, beta, *is.members[m], is.player);
  }
  return value;
}

double partial_payoff(const GameTree& game, const BehavioralProfile& beta,
                      int infoset, std::optional<int> action) {
  const InformationSet& is = game.infosets()[infoset];
  double value = 0;
  for (const GameNode* h : is.members) {
    const double reach = reach_probability(game, beta, *h);
    if (reach == 0) continue;
    if (action.has_value()) {
      if (*action < 0 || *action >= is.num_actions())
        throw AssessmentError("action outside A(I)");
      value += reach * downstream_value(game, beta, *h->children[*action],
                                        is.player);
    } else {
      value += reach * downstream_value(game, beta, *h, is.player);
    }
  }
  return value;
}

BehavioralProfile perturb(const GameTree& game, const BehavioralProfile& beta,
                          const PerturbationVector& eta) {
  if (eta.eta.size() != beta.probs.size())
    throw AssessmentError("perturbation has wrong dimension");
  BehavioralProfile out;
  out.probs.resize(beta.probs.size());
  for (const InformationSet& is : game.infosets()) {
    double tau = 0;
    for (int a = 0; a < is.num_actions(); ++a) {
      const double e = eta.eta[is.first_flat_index + a];
      if (!(e > 0)) throw AssessmentError("perturbation entries must be > 0");
      tau += e;
    }
    if (!(tau < 1))
      throw AssessmentError("perturbation mass tau >= 1 at '" + is.label + "'");
    for (int a = 0; a < is.num_actions(); ++a) {
      const int k = is.first_flat_index + a;
      out.probs[k] = (1 - tau) * beta.probs[k] + eta.eta[k];
    }
  }
  return out;
}

BehavioralProfile perturb_toward(const GameTree& game,
                                 const BehavioralProfile& beta,
                                 const BehavioralProfile& prior, double t) {
  BehavioralProfile out;
  out.probs.resize(beta.probs.size());
  for (std::size_t k = 0; k < beta.probs.size(); ++k)
    out.probs[k] = (1 - t) * beta.probs[k] + t * prior.probs[k];
  (void)game;
  return out;
}

}  // namespace seqpath

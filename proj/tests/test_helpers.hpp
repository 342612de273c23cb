#pragma once

#include <vector>

#include "doctest.h"
#include "seqpath/assessment.hpp"
#include "seqpath/fixtures.hpp"
#include "seqpath/game.hpp"
#include "seqpath/rng.hpp"

namespace testutil {

using namespace seqpath;

// Totally mixed profile with entries bounded away from zero.
inline BehavioralProfile random_profile(const GameTree& g, Rng& rng,
                                        double floor = 0.05) {
  BehavioralProfile beta;
  beta.probs.resize(g.num_actions_total());
  for (const InformationSet& is : g.infosets()) {
    double sum = 0;
    for (int a = 0; a < is.num_actions(); ++a) {
      const double v = floor + rng.uniform();
      beta.probs[is.first_flat_index + a] = v;
      sum += v;
    }
    for (int a = 0; a < is.num_actions(); ++a)
      beta.probs[is.first_flat_index + a] /= sum;
  }
  return beta;
}

inline BeliefSystem random_beliefs(const GameTree& g, Rng& rng,
                                   double floor = 0.05) {
  BeliefSystem mu;
  mu.by_infoset.resize(g.infosets().size());
  for (const InformationSet& is : g.infosets()) {
    std::vector<double> v(is.members.size());
    double sum = 0;
    for (double& x : v) {
      x = floor + rng.uniform();
      sum += x;
    }
    for (double& x : v) x /= sum;
    mu.by_infoset[is.global_index] = std::move(v);
  }
  return mu;
}

inline int flat(const GameTree& g, PlayerId player, const std::string& infoset,
                const std::string& action) {
  const InformationSet* is = g.find_infoset(player, infoset);
  REQUIRE(is != nullptr);
  for (int a = 0; a < is->num_actions(); ++a)
    if (is->actions[a] == action)
      return g.flat_index(is->global_index, a);
  REQUIRE(false);
  return -1;
}

inline int iset(const GameTree& g, PlayerId player, const std::string& label) {
  const InformationSet* is = g.find_infoset(player, label);
  REQUIRE(is != nullptr);
  return is->global_index;
}

}  // namespace testutil

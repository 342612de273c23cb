#pragma once

// Brute-force reference implementations used only by tests. Everything here
// enumerates explicit root-to-leaf factor lists and applies the defining
// formulas literally; none of it shares code with the library's evaluation
// paths.

#include <optional>
#include <vector>

#include "seqpath/assessment.hpp"
#include "seqpath/game.hpp"

namespace oracle {

using seqpath::Assessment;
using seqpath::BehavioralProfile;
using seqpath::BeliefSystem;
using seqpath::GameNode;
using seqpath::GameTree;

inline std::vector<const GameNode*> path_to(const GameNode& node) {
  std::vector<const GameNode*> rev;
  for (const GameNode* n = &node; n != nullptr; n = n->parent)
    rev.push_back(n);
  return {rev.rbegin(), rev.rend()};
}

inline double step_prob(const GameTree& g, const BehavioralProfile& beta,
                        const GameNode& from, const GameNode& to) {
  if (from.is_chance()) return from.chance_probs[to.edge_index];
  return beta.probs[g.flat_index(from.infoset, to.edge_index)];
}

inline double reach(const GameTree& g, const BehavioralProfile& beta,
                    const GameNode& h) {
  const auto path = path_to(h);
  double p = 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    p *= step_prob(g, beta, *path[i], *path[i + 1]);
  return p;
}

inline double reach_excluding(const GameTree& g, const BehavioralProfile& beta,
                              int infoset, const GameNode& h) {
  const auto path = path_to(h);
  double p = 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i]->is_decision() && path[i]->infoset == infoset) continue;
    p *= step_prob(g, beta, *path[i], *path[i + 1]);
  }
  return p;
}

inline double infoset_reach(const GameTree& g, const BehavioralProfile& beta,
                            int infoset) {
  double p = 0;
  for (const GameNode* h : g.infosets()[infoset].members)
    p += reach(g, beta, *h);
  return p;
}

inline double expected_payoff(const GameTree& g, const BehavioralProfile& beta,
                              int player) {
  double total = 0;
  for (const GameNode* z : g.terminals())
    total += z->payoffs[player - 1] * reach(g, beta, *z);
  return total;
}

// Index of the member of `infoset` on z's path, if any.
inline std::optional<std::pair<std::size_t, int>> subhistory_in(
    const GameTree& g, int infoset, const std::vector<const GameNode*>& path) {
  const auto& members = g.infosets()[infoset].members;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (std::size_t m = 0; m < members.size(); ++m)
      if (members[m] == path[i]) return std::make_pair(i, static_cast<int>(m));
  }
  return std::nullopt;
}

inline double conditional_action_payoff(const GameTree& g,
                                        const BehavioralProfile& beta,
                                        const BeliefSystem& mu, int infoset,
                                        int action) {
  const int player = g.infosets()[infoset].player;
  double total = 0;
  for (const GameNode* z : g.terminals()) {
    const auto path = path_to(*z);
    const auto hit = subhistory_in(g, infoset, path);
    if (!hit) continue;
    const auto [i, m] = *hit;
    if (path[i + 1]->edge_index != action) continue;
    double p = mu.by_infoset[infoset][m];
    for (std::size_t k = i + 1; k + 1 < path.size(); ++k)
      p *= step_prob(g, beta, *path[k], *path[k + 1]);
    total += z->payoffs[player - 1] * p;
  }
  return total;
}

inline double conditional_profile_payoff(const GameTree& g,
                                         const BehavioralProfile& beta,
                                         const BeliefSystem& mu, int infoset) {
  const int player = g.infosets()[infoset].player;
  double total = 0;
  for (const GameNode* z : g.terminals()) {
    const auto path = path_to(*z);
    const auto hit = subhistory_in(g, infoset, path);
    if (!hit) continue;
    const auto [i, m] = *hit;
    double p = mu.by_infoset[infoset][m];
    for (std::size_t k = i; k + 1 < path.size(); ++k)
      p *= step_prob(g, beta, *path[k], *path[k + 1]);
    total += z->payoffs[player - 1] * p;
  }
  return total;
}

inline double partial_payoff(const GameTree& g, const BehavioralProfile& beta,
                             int infoset, std::optional<int> action) {
  const int player = g.infosets()[infoset].player;
  double total = 0;
  for (const GameNode* z : g.terminals()) {
    const auto path = path_to(*z);
    const auto hit = subhistory_in(g, infoset, path);
    if (!hit) continue;
    const auto [i, m] = *hit;
    if (action && path[i + 1]->edge_index != *action) continue;
    double p = 1;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (action && k == i) continue;  // the set's own factor becomes 1
      p *= step_prob(g, beta, *path[k], *path[k + 1]);
    }
    total += z->payoffs[player - 1] * p;
  }
  return total;
}

}  // namespace oracle

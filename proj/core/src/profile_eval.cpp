#include "profile_eval.hpp"

#include <algorithm>

namespace seqpath::detail {

namespace {

// Decision-edge flat indices and chance mass along the path root -> node.
void collect_path(const GameTree& game, const GameNode& node,
                  EvalTables::Path& path) {
  std::vector<int> rev;
  for (const GameNode* n = &node; n->parent != nullptr; n = n->parent) {
    const GameNode* p = n->parent;
    if (p->is_chance())
      path.chance_prod *= p->chance_probs[n->edge_index];
    else
      rev.push_back(game.flat_index(p->infoset, n->edge_index));
  }
  path.flat.assign(rev.rbegin(), rev.rend());
}

}  // namespace

EvalTables::EvalTables(const GameTree& game) {
  m0 = game.num_actions_total();
  num_infosets = game.num_infosets();
  flat_player.resize(m0);
  flat_infoset.resize(m0);
  for (const InformationSet& is : game.infosets()) {
    for (int a = 0; a < is.num_actions(); ++a) {
      flat_player[is.first_flat_index + a] = is.player;
      flat_infoset[is.first_flat_index + a] = is.global_index;
    }
  }
  terminals.reserve(game.terminals().size());
  for (const GameNode* z : game.terminals()) {
    TerminalPath tp;
    tp.node = z;
    collect_path(game, *z, tp);
    max_path_len = std::max(max_path_len, static_cast<int>(tp.flat.size()));
    terminals.push_back(std::move(tp));
  }
  for (const InformationSet& is : game.infosets()) {
    for (const GameNode* h : is.members) {
      MemberPath mp;
      mp.infoset = is.global_index;
      collect_path(game, *h, mp);
      max_path_len = std::max(max_path_len, static_cast<int>(mp.flat.size()));
      members.push_back(std::move(mp));
    }
  }
}

void eval_profile(const EvalTables& tables, const Eigen::VectorXd& pi,
                  bool derivatives, ProfileEval& out) {
  const int m0 = tables.m0;
  out.P.setZero(m0);
  out.omega.setZero(tables.num_infosets);
  if (derivatives) {
    out.dP.setZero(m0, m0);
    out.dOmega.setZero(tables.num_infosets, m0);
  }

  const int cap = tables.max_path_len + 1;
  std::vector<double> pre(cap), suf(cap), pre2(cap), suf2(cap), y(cap);

  for (const EvalTables::TerminalPath& tp : tables.terminals) {
    const int len = static_cast<int>(tp.flat.size());
    pre[0] = 1;
    for (int i = 0; i < len; ++i) pre[i + 1] = pre[i] * pi[tp.flat[i]];
    suf[len] = 1;
    for (int i = len - 1; i >= 0; --i) suf[i] = suf[i + 1] * pi[tp.flat[i]];

    for (int p = 0; p < len; ++p) {
      const int kp = tp.flat[p];
      const double u = tp.node->payoffs[tables.flat_player[kp] - 1];
      if (u == 0 && !derivatives) continue;
      const double contrib = tp.chance_prod * pre[p] * suf[p + 1];
      out.P[kp] += u * contrib;
      if (!derivatives || u == 0) continue;
      // Exclude position p, then take single-exclusion products of the rest.
      for (int i = 0; i < len; ++i) y[i] = i == p ? 1.0 : pi[tp.flat[i]];
      pre2[0] = 1;
      for (int i = 0; i < len; ++i) pre2[i + 1] = pre2[i] * y[i];
      suf2[len] = 1;
      for (int i = len - 1; i >= 0; --i) suf2[i] = suf2[i + 1] * y[i];
      for (int q = 0; q < len; ++q) {
        if (q == p) continue;
        out.dP(kp, tp.flat[q]) += u * tp.chance_prod * pre2[q] * suf2[q + 1];
      }
    }
  }

  for (const EvalTables::MemberPath& mp : tables.members) {
    const int len = static_cast<int>(mp.flat.size());
    pre[0] = 1;
    for (int i = 0; i < len; ++i) pre[i + 1] = pre[i] * pi[mp.flat[i]];
    out.omega[mp.infoset] += mp.chance_prod * pre[len];
    if (!derivatives) continue;
    suf[len] = 1;
    for (int i = len - 1; i >= 0; --i) suf[i] = suf[i + 1] * pi[mp.flat[i]];
    for (int q = 0; q < len; ++q)
      out.dOmega(mp.infoset, mp.flat[q]) += mp.chance_prod * pre[q] * suf[q + 1];
  }
}

}  // namespace seqpath::detail

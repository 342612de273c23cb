#pragma once

#include <Eigen/Dense>
#include <vector>

#include "seqpath/game.hpp"

namespace seqpath::detail {

// Flattened per-terminal and per-member path data. Every information set
// appears at most once on a root-to-leaf path (perfect recall), so reach
// probabilities are multilinear in the flat strategy entries and the
// prefix/suffix-product trick yields exact first derivatives.
struct EvalTables {
  struct Path {
    double chance_prod = 1.0;
    std::vector<int> flat;  // flat strategy index per decision edge, in order
  };
  struct TerminalPath : Path {
    const GameNode* node = nullptr;
  };
  struct MemberPath : Path {
    int infoset = -1;
  };

  explicit EvalTables(const GameTree& game);

  std::vector<TerminalPath> terminals;
  std::vector<MemberPath> members;
  std::vector<int> flat_player;   // owning player per flat index
  std::vector<int> flat_infoset;  // owning set per flat index
  int m0 = 0;
  int num_infosets = 0;
  int max_path_len = 0;
};

// P[k]: expected payoff of the owner of flat action k along terminals that
// pass through k's information set taking k, with the set's own factor
// replaced by 1 and every other move priced at pi.
// omega[i]: realization probability of information set i under pi.
struct ProfileEval {
  Eigen::VectorXd P;
  Eigen::VectorXd omega;
  Eigen::MatrixXd dP;      // dP(k, q) = dP[k]/dpi[q]
  Eigen::MatrixXd dOmega;  // dOmega(i, q)
};

void eval_profile(const EvalTables& tables, const Eigen::VectorXd& pi,
                  bool derivatives, ProfileEval& out);

}  // namespace seqpath::detail

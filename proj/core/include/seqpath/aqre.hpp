#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "seqpath/assessment.hpp"
#include "seqpath/game.hpp"

namespace seqpath {

// Log-strategy point of the logit response system: beta(a) = exp(v(a)).
struct AqrePoint {
  Eigen::VectorXd v;
  double gamma = 0;
};

struct AqreConfig {
  double gamma_max = 1e4;
  double growth = 1.15;    // gamma_{k+1} = max(growth*gamma, gamma + add)
  double add = 0.1;
  int max_newton = 30;
  double newton_tol = 1e-10;
};

struct AqreStep {
  double gamma = 0;
  int newton_iters = 0;
  std::vector<double> beta;
};

struct AqreResult {
  bool reached_gamma_max = false;
  double terminal_gamma = 0;
  BehavioralProfile beta;
  BeliefSystem beliefs;
  std::vector<AqreStep> trace;
  int iterations = 0;
  double wall_seconds = 0;
  std::string status;
};

// Rows per information set: v(a0) - v(a) - gamma * (ubar(a0) - ubar(a)) for
// each non-reference action, then the normalization row sum_a exp(v(a)) - 1.
Eigen::VectorXd aqre_residual(const GameTree& game, const AqrePoint& point);
Eigen::MatrixXd aqre_jacobian(const GameTree& game, const AqrePoint& point);

// Natural-parameter continuation in gamma from the uniform profile, warm
// starting each Newton solve. Stops at gamma_max or on corrector failure,
// whichever comes first; the last converged point is reported either way.
AqreResult aqre_trace(const GameTree& game, const AqreConfig& config = {});

}  // namespace seqpath

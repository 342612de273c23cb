#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqpath/checker.hpp"
#include "seqpath/homotopy.hpp"

namespace seqpath {

struct TraceStep {
  double t = 0;
  double step_size = 0;
  int corrector_iters = 0;
  std::vector<double> beta;  // recovered strategy, flat layout
};

struct TraceRecord {
  std::vector<TraceStep> steps;
  std::string status;
};

struct PathResult {
  bool success = false;
  HomotopyPoint terminal;
  Assessment assessment;  // rounded profile, path-witness beliefs
  BehavioralProfile unrounded_profile;
  CheckVerdict verdict;
  TraceRecord trace;
  int iterations = 0;  // accepted predictor-corrector steps
  double wall_seconds = 0;
  int alpha_retries_used = 0;
  double polish_residual = 0;
  double max_identity_error = 0;  // z-formulation w*lambda == t check
  std::vector<double> alpha_used;
  std::string failure_reason;
  std::optional<std::string> matched_class;  // filled by callers
};

double predictor_step_size(const SolverConfig& config, double t);
double corrector_tolerance(const SolverConfig& config, double t);

class PathTracer {
 public:
  PathTracer(const GameTree& game, const SolverConfig& config);

  struct CorrectorResult {
    HomotopyPoint point;
    int iterations = 0;
    bool converged = false;
    double residual_norm = 0;
  };

  // Unit kernel vector of the m0 x (m0+1) Jacobian, oriented so that
  // <orient, tangent> > 0. Throws on a rank-deficient Jacobian.
  Eigen::VectorXd tangent_at(const HomotopyPoint& point,
                             const Eigen::VectorXd& orient) const;

  // Newton iteration on the residual plus the hyperplane through `trial`
  // orthogonal to `tangent`. A nonnegative tol overrides the t-dependent
  // acceptance schedule.
  CorrectorResult correct(const HomotopyPoint& trial,
                          const Eigen::VectorXd& tangent,
                          double tol_override = -1) const;

  PathResult run();

  const HomotopySystem& system() const { return system_; }

 private:
  bool trace_once(PathResult& result);
  // Frozen-t Newton to tight tolerance; returns the final residual norm.
  double polish_at(HomotopyPoint& p, double level, double tol) const;
  // Adaptive frozen-t continuation from p down through t_end, ramping the
  // perturbation to zero along the way.
  bool descend_to_end(HomotopyPoint& p, PathResult& result,
                      const Eigen::VectorXd& alpha_at_start);
  // Unperturbed polish, rounding, and the terminal equilibrium check.
  bool finish_attempt(PathResult& result);

  const GameTree& game_;
  SolverConfig config_;
  HomotopySystem system_;
};

// Follow the perturbed homotopy path from t=1 down through t_end, polish,
// round, and check the terminal assessment.
PathResult trace(const GameTree& game, const SolverConfig& config);

// Header line plus one row per accepted step: t, step, corrector_iters, and
// the flat strategy coordinates. Full double precision, deterministic.
void write_trace_tsv(std::ostream& os, const GameTree& game,
                     const TraceRecord& record);

}  // namespace seqpath

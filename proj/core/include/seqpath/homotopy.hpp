#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "seqpath/assessment.hpp"
#include "seqpath/game.hpp"

namespace seqpath {

enum class Formulation { kZSystem, kWSystem };

struct SolverConfig {
  Formulation formulation = Formulation::kWSystem;
  double kappa0 = 3.0;        // barrier exponent, must exceed 2
  std::vector<double> prior;  // totally mixed; empty means uniform
  std::vector<double> alpha;  // path perturbation; empty means draw per solve
  double alpha_max = 1e-2;
  std::uint64_t seed = 20240917ull;

  // Termination and polish levels for the tracer.
  double t_end = 1e-5;
  double polish_t = 1e-8;
  double round_threshold = 1e-8;

  // Predictor/corrector schedules: step = step_scale * 10^(step_exponent *
  // log t), acceptance threshold = corrector_scale * 10^(corrector_exponent *
  // log t). Natural log by default; base-10 behind the flag.
  bool log10_schedule = false;
  double step_scale = 0.2;
  double step_exponent = 0.2;
  double corrector_scale = 0.1;
  double corrector_exponent = 0.5;
  double step_growth = 1.2;
  int growth_streak = 3;   // consecutive cheap acceptances before growing
  int cheap_iters = 4;     // "cheap" corrector iteration count
  double min_step = 1e-12;
  int max_newton = 20;
  int max_steps = 200000;
  int alpha_retries = 5;

  // Endgame handoff: once the path has descended below t_switch, a stalled
  // or creeping arclength phase finishes by frozen-t continuation on the
  // unperturbed system instead of burning retries.
  double t_switch = 0.5;
  int max_arclength_steps = 1000;
};

struct HomotopyPoint {
  Eigen::VectorXd coords;  // z or w, flat layout, length m0
  double t = 1.0;
};

// Per-action derived multipliers of the z-formulation; w*lambda == t.
struct Multipliers {
  Eigen::VectorXd w;
  Eigen::VectorXd lambda;
};

// Barrier transform: exp(1 - 1/v) for v > 0, else 0. Monotone, continuous,
// smooth on v > 0, range [0, e).
double transform_d(double v);
double transform_d_deriv(double v);

// psi1 = ((tau + sqrt(tau^2 + 4*gamma0*theta)) / 2)^kappa0, psi2 the same
// with -tau; psi1 * psi2 == (gamma0 * theta)^kappa0. Both factors computed
// cancellation-free.
std::pair<double, double> psi(double tau, double theta, double kappa0,
                              double gamma0);

// One homotopy system bound to a game and configuration. Residual rows are
// laid out per information set: the action gap rows (reference action
// skipped) followed by the normalization row.
class HomotopySystem {
 public:
  HomotopySystem(const GameTree& game, const SolverConfig& config);
  ~HomotopySystem();
  HomotopySystem(HomotopySystem&&) noexcept;

  const GameTree& game() const;
  const SolverConfig& config() const { return config_; }
  int dimension() const;  // m0

  // Effective perturbation vector (drawn from the seed when the config left
  // it empty). Indexed by residual row.
  const Eigen::VectorXd& alpha() const;
  void set_alpha(Eigen::VectorXd alpha);

  const BehavioralProfile& prior() const;

  HomotopyPoint start_point() const;
  Eigen::VectorXd residual(const HomotopyPoint& point) const;
  // m0 x (m0+1): partials with respect to the coords and, last column, t.
  Eigen::MatrixXd jacobian(const HomotopyPoint& point) const;

  Multipliers multipliers(const HomotopyPoint& point) const;

  // Strategy profile encoded by the point (normalized per information set).
  BehavioralProfile strategy(const HomotopyPoint& point) const;
  // Full assessment: beliefs are Bayes beliefs of the perturbed profile at
  // level belief_t (point.t when negative).
  Assessment recover_assessment(const HomotopyPoint& point,
                                double belief_t = -1) const;

  // Worst relative |w*lambda - t| seen across all residual/jacobian
  // evaluations (z-formulation instrumentation).
  double worst_identity_error() const;
  void reset_identity_error();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SolverConfig config_;
};

}  // namespace seqpath

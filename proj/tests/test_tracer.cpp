#include <cmath>
#include <sstream>

#include "doctest.h"
#include "seqpath/checker.hpp"
#include "seqpath/fixtures.hpp"
#include "seqpath/tracer.hpp"
#include "test_helpers.hpp"

using namespace seqpath;

namespace {

SolverConfig tracer_config(Formulation form, std::uint64_t seed = 20240917ull) {
  SolverConfig cfg;
  cfg.formulation = form;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("tracer");

TEST_CASE("step size schedule") {
  const SolverConfig cfg;
  CHECK(predictor_step_size(cfg, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(predictor_step_size(cfg, 1e-5) ==
        doctest::Approx(9.9632e-4).epsilon(1e-4));
  CHECK(corrector_tolerance(cfg, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
  SUBCASE("base-10 variant only rescales the decay") {
    SolverConfig ten;
    ten.log10_schedule = true;
    CHECK(predictor_step_size(ten, 1.0) == doctest::Approx(0.2));
    CHECK(predictor_step_size(ten, 1e-5) ==
          doctest::Approx(0.2 * std::pow(10.0, -1.0)).epsilon(1e-12));
  }
}

TEST_CASE("tangent at the start moves t downward with unit norm") {
  const GameTree& g = *fixture("F3").game;
  for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
    PathTracer tracer(g, tracer_config(form));
    const HomotopyPoint start = tracer.system().start_point();
    Eigen::VectorXd orient =
        Eigen::VectorXd::Zero(tracer.system().dimension() + 1);
    orient[tracer.system().dimension()] = -1.0;
    const Eigen::VectorXd tan = tracer.tangent_at(start, orient);
    CHECK(tan.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tan[tracer.system().dimension()] < 0);
  }
}

TEST_CASE("corrector accepts the start point unchanged") {
  const GameTree& g = *fixture("F3").game;
  PathTracer tracer(g, tracer_config(Formulation::kWSystem));
  const HomotopyPoint start = tracer.system().start_point();
  Eigen::VectorXd orient =
      Eigen::VectorXd::Zero(tracer.system().dimension() + 1);
  orient[tracer.system().dimension()] = -1.0;
  const Eigen::VectorXd tan = tracer.tangent_at(start, orient);
  const PathTracer::CorrectorResult res = tracer.correct(start, tan);
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK((res.point.coords - start.coords).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("successive tangents keep a nonnegative inner product") {
  const GameTree& g = *fixture("F3").game;
  PathTracer tracer(g, tracer_config(Formulation::kWSystem));
  HomotopyPoint x = tracer.system().start_point();
  const int m0 = tracer.system().dimension();
  Eigen::VectorXd orient = Eigen::VectorXd::Zero(m0 + 1);
  orient[m0] = -1.0;
  Eigen::VectorXd prev;
  for (int step = 0; step < 8; ++step) {
    const Eigen::VectorXd tan = tracer.tangent_at(x, orient);
    if (prev.size()) CHECK(tan.dot(prev) >= 0);
    HomotopyPoint trial;
    trial.coords = x.coords + 0.05 * tan.head(m0);
    trial.t = x.t + 0.05 * tan[m0];
    const auto corr = tracer.correct(trial, tan);
    REQUIRE(corr.converged);
    x = corr.point;
    prev = tan;
    orient = tan;
  }
}

TEST_CASE("full trace on the horse") {
  const FixtureGame& f3 = fixture("F3");
  for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
    CAPTURE(form == Formulation::kZSystem ? "z" : "w");
    const PathResult res = trace(*f3.game, tracer_config(form));
    REQUIRE(res.success);
    CHECK(res.trace.status == "converged");
    CHECK(res.terminal.t <= 1e-5);
    CHECK(res.verdict.accepted);
    CHECK(res.iterations > 0);
    const auto matched = match_equilibrium_class(f3, res.assessment, 1e-4);
    CHECK(matched.has_value());
    if (form == Formulation::kZSystem)
      CHECK(res.max_identity_error <= 1e-12);

    SUBCASE("t decreases along accepted steps") {
      for (std::size_t i = 1; i < res.trace.steps.size(); ++i)
        CHECK(res.trace.steps[i].t < res.trace.steps[i - 1].t + 1e-12);
    }
    SUBCASE("strategy stays interior along the path") {
      // Entries decay like exp(-gap/t) near the end and eventually fall
      // below double precision; strict interiority is checked while they
      // are representable.
      for (const TraceStep& s : res.trace.steps) {
        for (double b : s.beta) {
          CHECK(b >= 0.0);
          CHECK(b <= 1.0);
          if (s.t > 0.05) {
            CHECK(b > 0.0);
            CHECK(b < 1.0);
          }
        }
      }
    }
    SUBCASE("belief witness: terminal beliefs are Bayes of the perturbed "
            "unrounded profile") {
      const BehavioralProfile mixed = perturb_toward(
          *f3.game, res.unrounded_profile,
          uniform_profile(*f3.game), 1e-8);
      const BeliefSystem mu = bayes_beliefs(*f3.game, mixed);
      for (std::size_t i = 0; i < mu.by_infoset.size(); ++i)
        for (std::size_t m = 0; m < mu.by_infoset[i].size(); ++m)
          CHECK(res.assessment.beliefs.by_infoset[i][m] ==
                doctest::Approx(mu.by_infoset[i][m]).epsilon(1e-12));
    }
  }
}

TEST_CASE("traces are bitwise deterministic") {
  const GameTree& g = *fixture("F4").game;
  const PathResult a = trace(g, tracer_config(Formulation::kWSystem, 99));
  const PathResult b = trace(g, tracer_config(Formulation::kWSystem, 99));
  REQUIRE(a.success);
  REQUIRE(b.success);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
    CHECK(a.trace.steps[i].t == b.trace.steps[i].t);
    CHECK(a.trace.steps[i].step_size == b.trace.steps[i].step_size);
    CHECK(a.trace.steps[i].beta == b.trace.steps[i].beta);
  }
  std::ostringstream ta, tb;
  write_trace_tsv(ta, g, a.trace);
  write_trace_tsv(tb, g, b.trace);
  CHECK(ta.str() == tb.str());
  CHECK(ta.str().substr(0, 24) == "t\tstep\tcorrector_iters\tp");
}

TEST_CASE("terminal residual satisfies the normalization rows tightly") {
  const GameTree& g = *fixture("F3").game;
  SolverConfig cfg = tracer_config(Formulation::kWSystem);
  PathTracer tracer(g, cfg);
  PathResult res = tracer.run();
  REQUIRE(res.success);
  const Eigen::VectorXd r = tracer.system().residual(res.terminal);
  // Normalization rows sit after each set's gap rows; all rows are tiny at
  // the polished terminal, which is stronger than the 1e-8 contract.
  CHECK(r.lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("games with chance moves trace cleanly") {
  const GameTree& g = *fixture("FN").game;
  for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
    const PathResult res = trace(g, tracer_config(form));
    REQUIRE(res.success);
    CHECK(res.verdict.accepted);
  }
}

TEST_CASE("a constant-payoff game traces to the prior") {
  NodeSpec root = NodeSpec::decision(
      1, "only", {"l", "r"},
      {NodeSpec::terminal({2.0}), NodeSpec::terminal({2.0})});
  GameTree flat_game("flat", {"1"}, root);
  const PathResult res = trace(flat_game, tracer_config(Formulation::kWSystem));
  REQUIRE(res.success);
  // Everything is optimal, so the path never leaves the uniform prior.
  CHECK(res.assessment.profile.probs[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("step budget failure is reported, not thrown") {
  const GameTree& g = *fixture("F3").game;
  SolverConfig cfg = tracer_config(Formulation::kWSystem);
  cfg.max_steps = 1;
  cfg.alpha_retries = 0;
  const PathResult res = trace(g, cfg);
  CHECK_FALSE(res.success);
  CHECK(res.trace.status == "max-steps");
  CHECK_FALSE(res.failure_reason.empty());
}

TEST_SUITE_END();

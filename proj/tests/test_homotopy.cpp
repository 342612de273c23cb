#include <cmath>

#include "doctest.h"
#include "seqpath/fixtures.hpp"
#include "seqpath/homotopy.hpp"
#include "test_helpers.hpp"

using namespace seqpath;

namespace {

SolverConfig config_for(Formulation form, const GameTree& g,
                        std::vector<double> prior = {},
                        bool zero_alpha = true) {
  SolverConfig cfg;
  cfg.formulation = form;
  cfg.prior = std::move(prior);
  if (zero_alpha) cfg.alpha.assign(g.num_actions_total(), 0.0);
  return cfg;
}

HomotopyPoint random_interior_point(const HomotopySystem& sys, Rng& rng) {
  HomotopyPoint p;
  p.t = rng.uniform(0.3, 0.9);
  p.coords.resize(sys.dimension());
  const bool zsys = sys.config().formulation == Formulation::kZSystem;
  for (int k = 0; k < sys.dimension(); ++k)
    p.coords[k] = zsys ? rng.uniform(-1.0, 2.0) : rng.uniform(0.05, 1.5);
  return p;
}

// Newton on the residual with t frozen, to tight tolerance. Test-local so
// the comparison between the two formulations does not reuse tracer code.
HomotopyPoint newton_at_t(const HomotopySystem& sys, HomotopyPoint p,
                          double t_target) {
  const int m0 = sys.dimension();
  double level = p.t;
  while (true) {
    level = std::max(t_target, level - 0.05);
    p.t = level;
    for (int it = 0; it < 60; ++it) {
      const Eigen::VectorXd g = sys.residual(p);
      if (g.lpNorm<Eigen::Infinity>() < 1e-13) break;
      const Eigen::MatrixXd J = sys.jacobian(p).leftCols(m0);
      const Eigen::VectorXd step = J.partialPivLu().solve(-g);
      REQUIRE(step.allFinite());
      p.coords += step;
    }
    REQUIRE(sys.residual(p).lpNorm<Eigen::Infinity>() < 1e-10);
    if (level <= t_target) return p;
  }
}

}  // namespace

TEST_SUITE_BEGIN("homotopy");

TEST_CASE("barrier transform") {
  CHECK(transform_d(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(transform_d(-1.0) == 0.0);
  CHECK(transform_d(0.0) == 0.0);
  CHECK(transform_d(0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  SUBCASE("monotone and continuous at zero") {
    double prev = 0;
    for (double v = 1e-9; v < 5; v *= 1.7) {
      const double cur = transform_d(v);
      CHECK(cur >= prev);
      CHECK(cur < std::exp(1.0));
      prev = cur;
    }
  }
  SUBCASE("derivative matches finite differences") {
    for (double v : {0.2, 0.5, 1.0, 2.0, 7.0}) {
      const double h = 1e-6 * v;
      const double fd = (transform_d(v + h) - transform_d(v - h)) / (2 * h);
      CHECK(transform_d_deriv(v) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("psi pair") {
  SUBCASE("symmetric point") {
    auto [p1, p2] = psi(0.0, 1.0, 3.0, 1.0);
    CHECK(p1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p2 == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("product identity") {
    Rng rng(9001);
    for (int i = 0; i < 200; ++i) {
      const double tau = rng.uniform(-5.0, 5.0);
      const double theta = rng.uniform(0.0, 2.0);
      const double k = rng.uniform(2.1, 5.0);
      auto [p1, p2] = psi(tau, theta, k, 1.0);
      const double expect = std::pow(theta, k);
      CHECK(p1 * p2 ==
            doctest::Approx(expect).epsilon(1e-12).scale(expect + 1e-300));
    }
  }
  SUBCASE("theta = 0 collapses psi2") {
    auto [p1, p2] = psi(1.7, 0.0, 3.0, 1.0);
    CHECK(p2 == 0.0);
    CHECK(p1 == doctest::Approx(std::pow(1.7, 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("start point values") {
  const GameTree& g = *fixture("F3").game;  // all sets have two actions
  SUBCASE("w formulation, uniform prior") {
    HomotopySystem sys(g, config_for(Formulation::kWSystem, g));
    const HomotopyPoint p = sys.start_point();
    for (int k = 0; k < sys.dimension(); ++k)
      CHECK(p.coords[k] ==
            doctest::Approx(1.0 / (1.0 + std::log(2.0))).epsilon(1e-14));
    CHECK(p.coords[0] == doctest::Approx(0.590616).epsilon(1e-6));
  }
  SUBCASE("z formulation, uniform prior, kappa0 = 3") {
    HomotopySystem sys(g, config_for(Formulation::kZSystem, g));
    const HomotopyPoint p = sys.start_point();
    const double c = 1.0 + std::log(2.0);
    const double expect = std::pow(c, -1.0 / 3.0) - std::pow(c, 1.0 / 3.0);
    for (int k = 0; k < sys.dimension(); ++k)
      CHECK(p.coords[k] == doctest::Approx(expect).epsilon(1e-14));
    // psi1 at the start recovers the w-formulation start.
    const Multipliers m = sys.multipliers(p);
    for (int k = 0; k < sys.dimension(); ++k) {
      CHECK(m.w[k] == doctest::Approx(1.0 / c).epsilon(1e-12));
      CHECK(m.lambda[k] == doctest::Approx(c).epsilon(1e-12));
    }
  }
  SUBCASE("recovered assessment at t=1 is the prior with its Bayes beliefs") {
    Rng rng(9002);
    for (const FixtureGame& f : fixtures()) {
      const GameTree& game = *f.game;
      const BehavioralProfile prior = testutil::random_profile(game, rng);
      for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
        HomotopySystem sys(game, config_for(form, game, prior.probs));
        const Assessment as = sys.recover_assessment(sys.start_point());
        for (int k = 0; k < sys.dimension(); ++k)
          CHECK(as.profile.probs[k] ==
                doctest::Approx(prior.probs[k]).epsilon(1e-12));
        const BeliefSystem mu = bayes_beliefs(game, prior);
        for (std::size_t i = 0; i < mu.by_infoset.size(); ++i)
          for (std::size_t m = 0; m < mu.by_infoset[i].size(); ++m)
            CHECK(as.beliefs.by_infoset[i][m] ==
                  doctest::Approx(mu.by_infoset[i][m]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("start point zeroes the residual for random priors") {
  Rng rng(9003);
  for (const FixtureGame& f : fixtures()) {
    const GameTree& g = *f.game;
    for (int rep = 0; rep < 20; ++rep) {
      const BehavioralProfile prior = testutil::random_profile(g, rng);
      for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
        // A nonzero alpha must not matter at t = 1.
        SolverConfig cfg = config_for(form, g, prior.probs, false);
        cfg.seed = rng.next_u64();
        HomotopySystem sys(g, cfg);
        const Eigen::VectorXd r = sys.residual(sys.start_point());
        CHECK(r.lpNorm<Eigen::Infinity>() <= 1e-12);
      }
    }
  }
}

TEST_CASE("alpha only acts strictly inside (0,1)") {
  const GameTree& g = *fixture("F4").game;
  Rng rng(9004);
  for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
    SolverConfig with = config_for(form, g, {}, false);
    with.seed = 77;
    HomotopySystem sys_alpha(g, with);
    HomotopySystem sys_zero(g, config_for(form, g));
    for (double t : {1.0, 0.0}) {
      HomotopyPoint p;
      p.t = t;
      p.coords.resize(sys_zero.dimension());
      for (int k = 0; k < p.coords.size(); ++k)
        p.coords[k] = form == Formulation::kZSystem ? rng.uniform(-1.0, 1.0)
                                                    : rng.uniform(0.1, 1.0);
      const Eigen::VectorXd ra = sys_alpha.residual(p);
      const Eigen::VectorXd rz = sys_zero.residual(p);
      CHECK((ra - rz).lpNorm<Eigen::Infinity>() == 0.0);
    }
    // And it does act in the interior.
    HomotopyPoint mid = sys_zero.start_point();
    mid.t = 0.5;
    CHECK((sys_alpha.residual(mid) - sys_zero.residual(mid))
              .lpNorm<Eigen::Infinity>() > 1e-6);
  }
}

TEST_CASE("w times lambda equals t along evaluations") {
  const GameTree& g = *fixture("F3").game;
  HomotopySystem sys(g, config_for(Formulation::kZSystem, g));
  Rng rng(9005);
  for (int rep = 0; rep < 50; ++rep) {
    const HomotopyPoint p = random_interior_point(sys, rng);
    (void)sys.residual(p);
    const Multipliers m = sys.multipliers(p);
    for (int k = 0; k < sys.dimension(); ++k)
      CHECK(m.w[k] * m.lambda[k] ==
            doctest::Approx(p.t).epsilon(1e-12));
  }
  CHECK(sys.worst_identity_error() <= 1e-12);
}

TEST_CASE("jacobian matches central finite differences") {
  Rng rng(9006);
  for (const FixtureGame& f : fixtures()) {
    const GameTree& g = *f.game;
    for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
      SolverConfig cfg = config_for(form, g, {}, false);
      cfg.seed = 1234;
      HomotopySystem sys(g, cfg);
      const int m0 = sys.dimension();
      for (int rep = 0; rep < 20; ++rep) {
        const HomotopyPoint p = random_interior_point(sys, rng);
        const Eigen::MatrixXd J = sys.jacobian(p);
        for (int col = 0; col <= m0; ++col) {
          const double base = col < m0 ? p.coords[col] : p.t;
          const double h = 1e-6 * std::max(1.0, std::abs(base));
          HomotopyPoint hi = p, lo = p;
          if (col < m0) {
            hi.coords[col] += h;
            lo.coords[col] -= h;
          } else {
            hi.t += h;
            lo.t -= h;
          }
          const Eigen::VectorXd fd =
              (sys.residual(hi) - sys.residual(lo)) / (2 * h);
          for (int row = 0; row < m0; ++row) {
            const double denom =
                std::max({1.0, std::abs(J(row, col)), std::abs(fd[row])});
            CHECK(std::abs(J(row, col) - fd[row]) / denom <= 1e-5);
          }
        }
      }
    }
  }
}

TEST_CASE("jacobian is healthy at the start point") {
  for (const FixtureGame& f : fixtures()) {
    const GameTree& g = *f.game;
    for (Formulation form : {Formulation::kZSystem, Formulation::kWSystem}) {
      HomotopySystem sys(g, config_for(form, g));
      const Eigen::MatrixXd J = sys.jacobian(sys.start_point());
      CHECK(J.allFinite());
      const Eigen::MatrixXd square = J.leftCols(sys.dimension());
      Eigen::FullPivLU<Eigen::MatrixXd> lu(square);
      CHECK(lu.isInvertible());
    }
  }
}

TEST_CASE("both formulations encode the same strategy path") {
  Rng rng(9007);
  for (const char* name : {"F3", "F4"}) {
    const GameTree& g = *fixture(name).game;
    const BehavioralProfile prior = testutil::random_profile(g, rng);
    HomotopySystem zsys(g, config_for(Formulation::kZSystem, g, prior.probs));
    HomotopySystem wsys(g, config_for(Formulation::kWSystem, g, prior.probs));
    for (double t_target : {0.8, 0.5, 0.3}) {
      const HomotopyPoint pz = newton_at_t(zsys, zsys.start_point(), t_target);
      const HomotopyPoint pw = newton_at_t(wsys, wsys.start_point(), t_target);
      const BehavioralProfile bz = zsys.strategy(pz);
      const BehavioralProfile bw = wsys.strategy(pw);
      for (int k = 0; k < zsys.dimension(); ++k)
        CHECK(bz.probs[k] == doctest::Approx(bw.probs[k]).epsilon(1e-6));
    }
  }
}

TEST_CASE("configuration validation") {
  const GameTree& g = *fixture("F3").game;
  SUBCASE("kappa0 must exceed 2") {
    SolverConfig cfg = config_for(Formulation::kZSystem, g);
    cfg.kappa0 = 2.0;
    CHECK_THROWS_AS(HomotopySystem(g, cfg), AssessmentError);
  }
  SUBCASE("prior must be totally mixed") {
    SolverConfig cfg = config_for(Formulation::kWSystem, g);
    cfg.prior.assign(g.num_actions_total(), 0.0);
    cfg.prior[0] = 1;
    cfg.prior[2] = 1;
    cfg.prior[4] = 1;
    CHECK_THROWS_AS(HomotopySystem(g, cfg), AssessmentError);
  }
}

TEST_SUITE_END();

#include <cmath>

#include "doctest.h"
#include "seqpath/aqre.hpp"
#include "seqpath/fixtures.hpp"
#include "test_helpers.hpp"

using namespace seqpath;
using testutil::iset;

TEST_SUITE_BEGIN("aqre");

TEST_CASE("gamma = 0 is solved by the uniform profile") {
  const GameTree& g = *fixture("F3").game;
  AqrePoint pt;
  pt.gamma = 0;
  pt.v.resize(g.num_actions_total());
  for (const InformationSet& is : g.infosets())
    for (int a = 0; a < is.num_actions(); ++a)
      pt.v[is.first_flat_index + a] = -std::log(double(is.num_actions()));
  CHECK(aqre_residual(g, pt).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("non-normalized v shows up in the normalization rows") {
  const GameTree& g = *fixture("F3").game;
  AqrePoint pt;
  pt.gamma = 0;
  pt.v = Eigen::VectorXd::Constant(g.num_actions_total(), -0.2);
  const Eigen::VectorXd r = aqre_residual(g, pt);
  // Rows come in per-set blocks: gap rows first, then the normalization row.
  int row = 0;
  for (const InformationSet& is : g.infosets()) {
    for (int a = 1; a < is.num_actions(); ++a)
      CHECK(r[row++] == doctest::Approx(0.0));  // equal v, gamma = 0
    CHECK(std::abs(r[row++]) > 0.1);
  }
}

TEST_CASE("jacobian matches finite differences") {
  const GameTree& g = *fixture("F4").game;
  Rng rng(9101);
  for (int rep = 0; rep < 10; ++rep) {
    AqrePoint pt;
    pt.gamma = rng.uniform(0.0, 3.0);
    pt.v.resize(g.num_actions_total());
    for (int k = 0; k < pt.v.size(); ++k) pt.v[k] = rng.uniform(-2.0, -0.1);
    const Eigen::MatrixXd J = aqre_jacobian(g, pt);
    for (int col = 0; col < pt.v.size(); ++col) {
      const double h = 1e-6;
      AqrePoint hi = pt, lo = pt;
      hi.v[col] += h;
      lo.v[col] -= h;
      const Eigen::VectorXd fd =
          (aqre_residual(g, hi) - aqre_residual(g, lo)) / (2 * h);
      for (int row = 0; row < J.rows(); ++row) {
        const double denom =
            std::max({1.0, std::abs(J(row, col)), std::abs(fd[row])});
        CHECK(std::abs(J(row, col) - fd[row]) / denom <= 1e-6);
      }
    }
  }
}

TEST_CASE("residual zeros solve the logit fixed point") {
  const GameTree& g = *fixture("F3").game;
  AqreConfig cfg;
  cfg.gamma_max = 2.0;
  const AqreResult res = aqre_trace(g, cfg);
  REQUIRE(res.reached_gamma_max);
  CHECK(res.terminal_gamma == doctest::Approx(2.0));
  // beta(a) proportional to exp(gamma * ubar(a)), with ubar from the
  // assessment module's partial payoffs (independent code path).
  for (const InformationSet& is : g.infosets()) {
    const int gi = is.global_index;
    const double omega = infoset_reach_probability(g, res.beta, gi);
    REQUIRE(omega > 0);
    double z = 0;
    std::vector<double> logit(is.num_actions());
    for (int a = 0; a < is.num_actions(); ++a) {
      const double ubar = partial_payoff(g, res.beta, gi, a) / omega;
      logit[a] = std::exp(res.terminal_gamma * ubar);
      z += logit[a];
    }
    for (int a = 0; a < is.num_actions(); ++a)
      CHECK(res.beta.probs[is.first_flat_index + a] ==
            doctest::Approx(logit[a] / z).epsilon(1e-10));
  }
}

TEST_CASE("normalization holds at every accepted point") {
  const GameTree& g = *fixture("F1").game;
  AqreConfig cfg;
  cfg.gamma_max = 50.0;
  const AqreResult res = aqre_trace(g, cfg);
  for (const AqreStep& s : res.trace) {
    for (const InformationSet& is : g.infosets()) {
      double sum = 0;
      for (int a = 0; a < is.num_actions(); ++a)
        sum += s.beta[is.first_flat_index + a];
      CHECK(std::abs(sum - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("the baseline lands near the known equilibria") {
  SUBCASE("F1") {
    const GameTree& g = *fixture("F1").game;
    const AqreResult res = aqre_trace(g);
    CHECK(res.status == "reached-gamma-max");
    const int i21 = iset(g, 1, "I2_1");
    const int i12 = iset(g, 2, "I1_2");
    CHECK(std::abs(res.beta(g, i21, 0) - 2.0 / 7.0) <= 2e-3);
    CHECK(std::abs(res.beta(g, i12, 0) - 1.0 / 8.0) <= 2e-3);
    // Not exactly on it at a finite cutoff, though.
    CHECK(std::abs(res.beta(g, i12, 0) - 1.0 / 8.0) > 1e-9);
  }
  SUBCASE("F2") {
    const GameTree& g = *fixture("F2").game;
    const AqreResult res = aqre_trace(g);
    const int i21 = iset(g, 1, "I2_1");
    const int i12 = iset(g, 2, "I1_2");
    CHECK(std::abs(res.beta(g, i21, 0) - 2.0 / 3.0) <= 2e-3);
    CHECK(std::abs(res.beta(g, i12, 0) - 2.0 / 3.0) <= 2e-3);
  }
}

TEST_SUITE_END();

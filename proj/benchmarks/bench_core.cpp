#include <benchmark/benchmark.h>

#include "seqpath/assessment.hpp"
#include "seqpath/fixtures.hpp"
#include "seqpath/generator.hpp"
#include "seqpath/homotopy.hpp"
#include "seqpath/tracer.hpp"

namespace {

using namespace seqpath;

GameTree make_bench_game(int actions3) {
  GenSpec spec;
  spec.kind = GameType::kTypeA;
  spec.num_players = 3;
  spec.actions_per_player = {2, actions3, actions3};
  spec.seed = 12345;
  return generate(spec);
}

void BM_Residual(benchmark::State& state) {
  const GameTree game = make_bench_game(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  HomotopySystem sys(game, cfg);
  HomotopyPoint p = sys.start_point();
  p.t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.residual(p));
  }
  state.SetLabel("m0=" + std::to_string(game.num_actions_total()));
}
BENCHMARK(BM_Residual)->Arg(3)->Arg(10)->Arg(15);

void BM_Jacobian(benchmark::State& state) {
  const GameTree game = make_bench_game(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  HomotopySystem sys(game, cfg);
  HomotopyPoint p = sys.start_point();
  p.t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.jacobian(p));
  }
  state.SetLabel("m0=" + std::to_string(game.num_actions_total()));
}
BENCHMARK(BM_Jacobian)->Arg(3)->Arg(10)->Arg(15);

void BM_BayesBeliefs(benchmark::State& state) {
  const GameTree& game = *fixture("FN").game;
  const BehavioralProfile beta = uniform_profile(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bayes_beliefs(game, beta));
  }
}
BENCHMARK(BM_BayesBeliefs);

void BM_TraceHorse(benchmark::State& state) {
  const GameTree& game = *fixture("F3").game;
  SolverConfig cfg;
  cfg.formulation = state.range(0) == 0 ? Formulation::kZSystem
                                        : Formulation::kWSystem;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace(game, cfg));
  }
  state.SetLabel(state.range(0) == 0 ? "entb-z" : "entb-w");
}
BENCHMARK(BM_TraceHorse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

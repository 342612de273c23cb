// seqpath: sequential-equilibrium solver and checker for extensive-form
// games. Subcommands: solve, check, generate, bench, fixtures.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqpath/aqre.hpp"
#include "seqpath/checker.hpp"
#include "seqpath/fixtures.hpp"
#include "seqpath/game_io.hpp"
#include "seqpath/generator.hpp"
#include "seqpath/tracer.hpp"

namespace {

using json = nlohmann::json;
using namespace seqpath;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInput = 2;
constexpr int kExitTraceFailure = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SEQPATH_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ParseError("SEQPATH_SEED is not an unsigned integer");
    }
  }
  return 20240917ull;
}

std::string format_prob(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void print_strategy(std::ostream& os, const GameTree& g,
                    const BehavioralProfile& beta) {
  os << "strategy:\n";
  for (const InformationSet& is : g.infosets()) {
    os << "  player " << is.player << " infoset " << is.label << ":";
    for (int a = 0; a < is.num_actions(); ++a)
      os << " " << is.actions[a] << "="
         << format_prob(beta.probs[is.first_flat_index + a]);
    os << "\n";
  }
}

void print_beliefs(std::ostream& os, const GameTree& g,
                   const BeliefSystem& mu) {
  os << "beliefs:\n";
  for (const InformationSet& is : g.infosets()) {
    os << "  player " << is.player << " infoset " << is.label << ":";
    for (std::size_t m = 0; m < is.members.size(); ++m) {
      std::string key = g.history_key(*is.members[m]);
      if (key.empty()) key = "<root>";
      os << " " << key << "=" << format_prob(mu.by_infoset[is.global_index][m]);
    }
    os << "\n";
  }
}

// --- assessment file ------------------------------------------------------

Assessment read_assessment(const GameTree& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open assessment file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("assessment syntax error: ") + e.what());
  }
  Assessment as;
  as.profile.probs.assign(g.num_actions_total(), 0.0);
  if (!j.contains("profile") || !j["profile"].is_array())
    throw ParseError("assessment needs a \"profile\" array");
  std::vector<bool> seen(g.num_infosets(), false);
  for (const auto& entry : j["profile"]) {
    const int player = entry.at("player").get<int>();
    const std::string label = entry.at("infoset").get<std::string>();
    const InformationSet* is = g.find_infoset(player, label);
    if (is == nullptr)
      throw ParseError("unknown infoset '" + label + "' of player " +
                       std::to_string(player));
    seen[is->global_index] = true;
    const auto& probs = entry.at("probs");
    for (int a = 0; a < is->num_actions(); ++a) {
      if (!probs.contains(is->actions[a]))
        throw ParseError("missing probability for action '" + is->actions[a] +
                         "' at infoset '" + label + "'");
      as.profile.probs[is->first_flat_index + a] =
          probs.at(is->actions[a]).get<double>();
    }
  }
  for (const InformationSet& is : g.infosets())
    if (!seen[is.global_index])
      throw ParseError("profile is missing infoset '" + is.label +
                       "' of player " + std::to_string(is.player));
  validate_profile(g, as.profile);

  if (j.contains("beliefs")) {
    as.beliefs.by_infoset.resize(g.num_infosets());
    for (const InformationSet& is : g.infosets())
      as.beliefs.by_infoset[is.global_index].assign(is.members.size(),
                                                    is.members.size() == 1
                                                        ? 1.0
                                                        : 0.0);
    for (const auto& entry : j["beliefs"]) {
      const int player = entry.at("player").get<int>();
      const std::string label = entry.at("infoset").get<std::string>();
      const InformationSet* is = g.find_infoset(player, label);
      if (is == nullptr)
        throw ParseError("unknown infoset '" + label + "' in beliefs");
      const auto& probs = entry.at("probs");
      for (std::size_t m = 0; m < is->members.size(); ++m) {
        const std::string key = g.history_key(*is->members[m]);
        if (probs.contains(key))
          as.beliefs.by_infoset[is->global_index][m] =
              probs.at(key).get<double>();
      }
    }
    validate_beliefs(g, as.beliefs);
  } else {
    as.beliefs = bayes_beliefs(g, as.profile);  // needs positive reach
  }
  return as;
}

json assessment_to_json(const GameTree& g, const Assessment& as) {
  json j;
  j["profile"] = json::array();
  for (const InformationSet& is : g.infosets()) {
    json probs;
    for (int a = 0; a < is.num_actions(); ++a)
      probs[is.actions[a]] = as.profile.probs[is.first_flat_index + a];
    j["profile"].push_back({{"player", is.player},
                            {"infoset", is.label},
                            {"probs", std::move(probs)}});
  }
  j["beliefs"] = json::array();
  for (const InformationSet& is : g.infosets()) {
    json probs;
    for (std::size_t m = 0; m < is.members.size(); ++m)
      probs[g.history_key(*is.members[m])] =
          as.beliefs.by_infoset[is.global_index][m];
    j["beliefs"].push_back({{"player", is.player},
                            {"infoset", is.label},
                            {"probs", std::move(probs)}});
  }
  return j;
}

// --- solve ----------------------------------------------------------------

struct SolveOptions {
  std::string game_path;
  std::string method = "entb-w";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double kappa0 = 3.0;
  double t_end = 1e-5;
  double gamma_max = 1e4;
  bool log10_schedule = false;
  std::string trace_path;
  std::string out_path;
};

int run_solve(const SolveOptions& opt) {
  GameTree game = load_game(opt.game_path);
  const std::uint64_t seed = opt.seed_set ? opt.seed : default_seed();

  std::cout << "game: " << game.name() << "\n"
            << "players: " << game.num_players() << "\n"
            << "actions: " << game.num_actions_total() << "\n"
            << "method: " << opt.method << "\n"
            << "seed: " << seed << "\n";

  if (opt.method == "aqre") {
    AqreConfig cfg;
    cfg.gamma_max = opt.gamma_max;
    const AqreResult res = aqre_trace(game, cfg);
    Assessment as;
    as.profile = res.beta;
    as.beliefs = res.beliefs;
    const CheckVerdict verdict =
        check_sequential(game, as, 1e-4 * game.payoff_range());
    std::cout << "status: " << res.status << "\n"
              << "terminal_gamma: " << res.terminal_gamma << "\n"
              << "iterations: " << res.iterations << "\n";
    print_strategy(std::cout, game, res.beta);
    print_beliefs(std::cout, game, res.beliefs);
    std::cout << "verdict: " << (verdict.accepted ? "accepted" : "rejected")
              << "\n";
    if (!verdict.accepted) std::cout << "reason: " << verdict.reason << "\n";
    if (!opt.out_path.empty()) {
      std::ofstream out(opt.out_path);
      out << assessment_to_json(game, as).dump(2) << "\n";
    }
    if (!opt.trace_path.empty()) {
      std::ofstream out(opt.trace_path);
      out << "gamma\tnewton_iters";
      for (const InformationSet& is : game.infosets())
        for (const std::string& a : is.actions)
          out << "\tp" << is.player << "." << is.label << "." << a;
      out << "\n";
      char buf[64];
      for (const AqreStep& s : res.trace) {
        std::snprintf(buf, sizeof buf, "%.17g", s.gamma);
        out << buf << "\t" << s.newton_iters;
        for (double b : s.beta) {
          std::snprintf(buf, sizeof buf, "%.17g", b);
          out << "\t" << buf;
        }
        out << "\n";
      }
    }
    return verdict.accepted ? kExitOk : kExitTraceFailure;
  }

  SolverConfig cfg;
  if (opt.method == "entb-z")
    cfg.formulation = Formulation::kZSystem;
  else if (opt.method == "entb-w")
    cfg.formulation = Formulation::kWSystem;
  else
    throw ParseError("unknown method '" + opt.method +
                     "' (expected entb-z, entb-w, or aqre)");
  cfg.seed = seed;
  cfg.kappa0 = opt.kappa0;
  cfg.t_end = opt.t_end;
  cfg.log10_schedule = opt.log10_schedule;

  const PathResult res = trace(game, cfg);
  std::cout << "status: "
            << (res.success ? "accepted" : ("failed (" + res.trace.status + ")"))
            << "\n"
            << "iterations: " << res.iterations << "\n"
            << "terminal_t: " << res.terminal.t << "\n"
            << "alpha_retries: " << res.alpha_retries_used << "\n";
  if (res.success || !res.assessment.profile.probs.empty()) {
    print_strategy(std::cout, game, res.assessment.profile);
    print_beliefs(std::cout, game, res.assessment.beliefs);
  }
  std::cout << "verdict: " << (res.verdict.accepted ? "accepted" : "rejected")
            << "\n";
  if (!res.success) std::cout << "reason: " << res.failure_reason << "\n";

  if (!opt.trace_path.empty()) {
    std::ofstream out(opt.trace_path);
    write_trace_tsv(out, game, res.trace);
  }
  if (res.success && !opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    out << assessment_to_json(game, res.assessment).dump(2) << "\n";
  }
  return res.success ? kExitOk : kExitTraceFailure;
}

// --- check ----------------------------------------------------------------

int run_check(const std::string& game_path, const std::string& assess_path,
              double tol, double gamma, double eps, bool have_gamma,
              bool have_eps) {
  GameTree game = load_game(game_path);
  const Assessment as = read_assessment(game, assess_path);
  CheckVerdict verdict;
  if (have_gamma || have_eps) {
    const double e = have_eps ? eps : tol;
    verdict = have_gamma ? check_eps_gamma(game, as, e, gamma, tol)
                         : check_eps_perfect(game, as, e, tol);
  } else {
    verdict = check_sequential(game, as, tol);
  }
  std::cout << "game: " << game.name() << "\n"
            << "verdict: " << (verdict.accepted ? "accepted" : "rejected")
            << "\n";
  if (!verdict.accepted) {
    std::cout << "reason: " << verdict.reason << "\n";
    if (verdict.worst && verdict.worst->infoset >= 0) {
      const InformationSet& is = game.infosets()[verdict.worst->infoset];
      std::cout << "violation: infoset " << is.label << " ("
                << is.actions[verdict.worst->better_action] << " over "
                << is.actions[verdict.worst->worse_action] << ", gap "
                << verdict.worst->magnitude << ")\n";
    }
  }
  return verdict.accepted ? kExitOk : kExitRejected;
}

// --- generate / bench -----------------------------------------------------

GenSpec spec_from_flags(const std::string& type, int n,
                        const std::vector<int>& actions, int layers,
                        const std::vector<int>& m_check, std::uint64_t seed,
                        int payoff_low, int payoff_high, double zero_max,
                        bool per_entry) {
  GenSpec spec;
  if (type == "A" || type == "a")
    spec.kind = GameType::kTypeA;
  else if (type == "B" || type == "b")
    spec.kind = GameType::kTypeB;
  else if (type == "C" || type == "c")
    spec.kind = GameType::kTypeC;
  else
    throw ParseError("unknown game type '" + type + "'");
  spec.num_players = n;
  spec.actions_per_player = actions;
  spec.layers = layers;
  spec.seed = seed;
  spec.payoff_low = payoff_low;
  spec.payoff_high = payoff_high;
  spec.zero_prob_max = zero_max;
  spec.zero_per_entry = per_entry;
  validate_spec(spec);
  if (!m_check.empty() && expected_infoset_counts(spec) != m_check)
    throw ParseError("--m does not match the information-set counts implied "
                     "by the family rule");
  return spec;
}

struct BenchCell {
  bool success = false;
  double seconds = 0;
  int iterations = 0;
};

int run_bench(const GenSpec& spec, int count,
              const std::vector<std::string>& methods, int jobs,
              bool omit_time, const std::string& out_path) {
  for (const std::string& m : methods)
    if (m != "entb-z" && m != "entb-w" && m != "aqre")
      throw ParseError("unknown method '" + m + "'");

  const auto batch = generate_batch(spec, count);
  struct Task {
    int game_index;
    int method_index;
  };
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < methods.size(); ++m)
    for (int i = 0; i < count; ++i)
      tasks.push_back({i, static_cast<int>(m)});
  std::vector<BenchCell> cells(tasks.size());

  auto run_cell = [&](const GameTree& game, const Task& task,
                      std::uint64_t seed) {
    BenchCell cell;
    if (methods[task.method_index] == "aqre") {
      const AqreResult res = aqre_trace(game);
      Assessment as;
      as.profile = res.beta;
      as.beliefs = res.beliefs;
      cell.success =
          res.reached_gamma_max &&
          check_sequential(game, as, 1e-4 * game.payoff_range()).accepted;
      cell.seconds = res.wall_seconds;
      cell.iterations = res.iterations;
    } else {
      SolverConfig cfg;
      cfg.formulation = methods[task.method_index] == "entb-z"
                            ? Formulation::kZSystem
                            : Formulation::kWSystem;
      cfg.seed = seed;
      const PathResult res = trace(game, cfg);
      cell.success = res.success && res.terminal.t < cfg.t_end;
      cell.seconds = res.wall_seconds;
      cell.iterations = res.iterations;
    }
    return cell;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task& task = tasks[idx];
      try {
        cells[idx] = run_cell(batch[task.game_index].game, task,
                              batch[task.game_index].seed);
      } catch (const std::exception&) {
        cells[idx] = BenchCell{};
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "spec,method,time_avg,time_min,time_max,iters_avg,iters_min,"
         "iters_max,successes,total\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  for (std::size_t m = 0; count > 0 && m < methods.size(); ++m) {
    double tsum = 0, tmin = 0, tmax = 0;
    long isum = 0;
    int imin = 0, imax = 0, successes = 0;
    for (int i = 0; i < count; ++i) {
      const BenchCell& cell = cells[m * count + i];
      if (i == 0) {
        tmin = tmax = cell.seconds;
        imin = imax = cell.iterations;
      } else {
        tmin = std::min(tmin, cell.seconds);
        tmax = std::max(tmax, cell.seconds);
        imin = std::min(imin, cell.iterations);
        imax = std::max(imax, cell.iterations);
      }
      tsum += cell.seconds;
      isum += cell.iterations;
      successes += cell.success ? 1 : 0;
    }
    const double denom = count > 0 ? count : 1;
    if (omit_time) {
      tsum = tmin = tmax = 0;
    }
    csv << spec.label() << "," << methods[m] << "," << num(tsum / denom)
        << "," << num(count ? tmin : 0) << "," << num(count ? tmax : 0) << ","
        << num(double(isum) / denom) << "," << (count ? imin : 0) << ","
        << (count ? imax : 0) << "," << successes << "," << count << "\n";
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    out << csv.str();
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential equilibria of extensive-form games via an "
               "entropy-barrier homotopy path"};
  app.require_subcommand(1);

  // solve
  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "trace a game to equilibrium");
  solve->add_option("game", solve_opt.game_path, "game JSON file")->required();
  solve->add_option("--method", solve_opt.method,
                    "entb-z | entb-w | aqre (default entb-w)");
  auto* seed_opt = solve->add_option("--seed", solve_opt.seed, "rng seed");
  solve->add_option("--kappa0", solve_opt.kappa0, "barrier exponent (> 2)");
  solve->add_option("--t-end", solve_opt.t_end, "termination level");
  solve->add_option("--gamma-max", solve_opt.gamma_max,
                    "aqre precision cutoff");
  solve->add_flag("--log10-schedule", solve_opt.log10_schedule,
                  "read the step schedules with log10 instead of ln");
  solve->add_option("--trace", solve_opt.trace_path, "write the path TSV");
  solve->add_option("--out", solve_opt.out_path,
                    "write the terminal assessment JSON");

  // check
  std::string check_game, check_assessment;
  double check_tol = 1e-6, check_gamma = 0, check_eps = 0;
  CLI::App* check = app.add_subcommand("check", "verify an assessment");
  check->add_option("game", check_game, "game JSON file")->required();
  check->add_option("assessment", check_assessment, "assessment JSON file")
      ->required();
  check->add_option("--tol", check_tol, "numerical tolerance");
  auto* gamma_opt =
      check->add_option("--gamma", check_gamma, "payoff-gap slack");
  auto* eps_opt =
      check->add_option("--eps", check_eps, "probability cap for dominated "
                                            "actions (totally mixed check)");

  // generate
  std::string gen_type = "A", gen_out;
  int gen_n = 2, gen_layers = 1, gen_lo = -10, gen_hi = 10;
  std::vector<int> gen_actions, gen_m;
  double gen_zero = 0.5;
  bool gen_per_entry = false;
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  CLI::App* gen = app.add_subcommand("generate", "emit a random game");
  gen->add_option("--type", gen_type, "A | B | C")->required();
  gen->add_option("--n", gen_n, "number of players")->required();
  gen->add_option("--a", gen_actions, "actions per player, comma separated")
      ->required()
      ->delimiter(',');
  gen->add_option("--layers", gen_layers, "layers (type C)");
  gen->add_option("--m", gen_m, "expected infoset counts (verified)")
      ->delimiter(',');
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--payoff-low", gen_lo, "payoff lower bound");
  gen->add_option("--payoff-high", gen_hi, "payoff upper bound");
  gen->add_option("--zero-max", gen_zero, "zeroing probability cap");
  gen->add_flag("--per-entry-zero", gen_per_entry,
                "redraw the zeroing probability per payoff entry");
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  // bench
  std::string bench_type = "A", bench_out;
  int bench_n = 2, bench_layers = 1, bench_count = 10, bench_jobs = 1;
  std::vector<int> bench_actions, bench_m;
  std::vector<std::string> bench_methods = {"entb-z", "entb-w"};
  std::uint64_t bench_seed = 0;
  bool bench_seed_set = false, bench_omit_time = false;
  CLI::App* bench = app.add_subcommand(
      "bench", "generate a batch of games and solve them");
  bench->add_option("--type", bench_type, "A | B | C")->required();
  bench->add_option("--n", bench_n, "number of players")->required();
  bench->add_option("--a", bench_actions, "actions per player")
      ->required()
      ->delimiter(',');
  bench->add_option("--layers", bench_layers, "layers (type C)");
  bench->add_option("--m", bench_m, "expected infoset counts (verified)")
      ->delimiter(',');
  bench->add_option("--count", bench_count, "games per batch");
  bench->add_option("--methods", bench_methods, "methods to run")
      ->delimiter(',');
  auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "rng seed");
  bench->add_option("--jobs", bench_jobs, "worker threads");
  bench->add_flag("--omit-time", bench_omit_time,
                  "zero the wall-time columns (reproducible CSV)");
  bench->add_option("--out", bench_out, "CSV file (stdout when omitted)");

  // fixtures
  std::string fixtures_dir, fixtures_name;
  CLI::App* fix = app.add_subcommand("fixtures", "list or export the "
                                                 "built-in games");
  fix->add_option("--out-dir", fixtures_dir, "write each game's JSON here");
  fix->add_option("--name", fixtures_name, "restrict to one fixture");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      solve_opt.seed_set = seed_opt->count() > 0;
      return run_solve(solve_opt);
    }
    if (check->parsed()) {
      return run_check(check_game, check_assessment, check_tol, check_gamma,
                       check_eps, gamma_opt->count() > 0,
                       eps_opt->count() > 0);
    }
    if (gen->parsed()) {
      gen_seed_set = gen_seed_opt->count() > 0;
      const GenSpec spec = spec_from_flags(
          gen_type, gen_n, gen_actions, gen_layers, gen_m,
          gen_seed_set ? gen_seed : default_seed(), gen_lo, gen_hi, gen_zero,
          gen_per_entry);
      const GameTree game = generate(spec);
      const std::string doc = serialize_game(game);
      if (gen_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream out(gen_out);
        out << doc;
        std::cout << "wrote " << gen_out << " (" << spec.label() << ", m0="
                  << game.num_actions_total() << ")\n";
      }
      return kExitOk;
    }
    if (bench->parsed()) {
      bench_seed_set = bench_seed_opt->count() > 0;
      const GenSpec spec = spec_from_flags(
          bench_type, bench_n, bench_actions, bench_layers, bench_m,
          bench_seed_set ? bench_seed : default_seed(), -10, 10, 0.5, false);
      return run_bench(spec, bench_count, bench_methods, bench_jobs,
                       bench_omit_time, bench_out);
    }
    if (fix->parsed()) {
      for (const FixtureGame& f : fixtures()) {
        if (!fixtures_name.empty() && f.name != fixtures_name) continue;
        std::cout << f.name << ": " << f.title << " (players "
                  << f.game->num_players() << ", m0 "
                  << f.game->num_actions_total() << ", classes "
                  << f.classes.size() << ")\n";
        if (!fixtures_dir.empty()) {
          const std::string path = fixtures_dir + "/" + f.name + ".json";
          std::ofstream out(path);
          if (!out) throw ParseError("cannot write " + path);
          out << serialize_game(*f.game);
          std::cout << "  wrote " << path << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTraceFailure;
  }
  return kExitInput;
}

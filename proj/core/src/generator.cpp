#include "seqpath/generator.hpp"

#include <sstream>

#include "seqpath/rng.hpp"

namespace seqpath {

namespace {

int stages_total(const GenSpec& spec) {
  const int layers = spec.kind == GameType::kTypeC ? spec.layers : 1;
  return spec.num_players * layers;
}

int mover_at(const GenSpec& spec, int stage) {
  return stage % spec.num_players + 1;
}

// Infoset key of the history prefix feeding the decision at `stage`.
// Type A/C: everything but the last move; type B: only the last move.
std::string infoset_key(const GenSpec& spec, int stage,
                        const std::vector<int>& prefix) {
  std::ostringstream os;
  os << "s" << stage << "|";
  if (spec.kind == GameType::kTypeB) {
    if (stage > 0) os << prefix.back();
  } else {
    for (int i = 0; i + 1 < static_cast<int>(prefix.size()); ++i)
      os << prefix[i] << ".";
  }
  return os.str();
}

NodeSpec build_stage(const GenSpec& spec, Rng& payoff_rng, double zero_prob,
                     int stage, std::vector<int>& prefix) {
  if (stage == stages_total(spec)) {
    std::vector<double> u(spec.num_players);
    for (int i = 0; i < spec.num_players; ++i) {
      const double v = static_cast<double>(
          payoff_rng.uniform_int(spec.payoff_low, spec.payoff_high));
      const double p = spec.zero_per_entry
                           ? payoff_rng.uniform(0.0, spec.zero_prob_max)
                           : zero_prob;
      u[i] = payoff_rng.uniform() < p ? 0.0 : v;
    }
    return NodeSpec::terminal(std::move(u));
  }
  const int player = mover_at(spec, stage);
  const int num_actions = spec.actions_per_player[player - 1];
  std::vector<std::string> labels(num_actions);
  std::vector<NodeSpec> children;
  children.reserve(num_actions);
  for (int a = 0; a < num_actions; ++a) {
    labels[a] = "a" + std::to_string(a + 1);
    prefix.push_back(a);
    children.push_back(build_stage(spec, payoff_rng, zero_prob, stage + 1,
                                   prefix));
    prefix.pop_back();
  }
  return NodeSpec::decision(player, infoset_key(spec, stage, prefix),
                            std::move(labels), std::move(children));
}

}  // namespace

void validate_spec(const GenSpec& spec) {
  if (spec.num_players < 2) throw GameError("generator: need >= 2 players");
  if (static_cast<int>(spec.actions_per_player.size()) != spec.num_players)
    throw GameError("generator: one action count per player required");
  for (int a : spec.actions_per_player)
    if (a < 2) throw GameError("generator: action counts must be >= 2");
  if (spec.kind == GameType::kTypeC && spec.layers < 1)
    throw GameError("generator: type C needs >= 1 layer");
  if (!(spec.payoff_low <= spec.payoff_high))
    throw GameError("generator: empty payoff range");
  if (!(spec.zero_prob_max >= 0 && spec.zero_prob_max <= 1))
    throw GameError("generator: zero_prob_max must lie in [0,1]");
}

std::vector<int> expected_infoset_counts(const GenSpec& spec) {
  validate_spec(spec);
  std::vector<int> counts(spec.num_players, 0);
  if (spec.kind == GameType::kTypeB) {
    counts[0] = 1;
    for (int i = 1; i < spec.num_players; ++i)
      counts[i] = spec.actions_per_player[i - 1];
    return counts;
  }
  // A/C: distinct pooled prefixes at each stage, i.e. the product of all
  // action counts up to two stages back.
  const int total = stages_total(spec);
  long long pooled = 1;  // product over stages <= stage-2
  for (int stage = 0; stage < total; ++stage) {
    counts[mover_at(spec, stage) - 1] += static_cast<int>(pooled);
    if (stage >= 1) {
      const int back = mover_at(spec, stage - 1);
      pooled *= spec.actions_per_player[back - 1];
    }
  }
  return counts;
}

std::string GenSpec::label() const {
  const std::vector<int> m = expected_infoset_counts(*this);
  std::ostringstream os;
  switch (kind) {
    case GameType::kTypeA: os << "A"; break;
    case GameType::kTypeB: os << "B"; break;
    case GameType::kTypeC: os << "C"; break;
  }
  os << "," << num_players << ",(";
  for (std::size_t i = 0; i < m.size(); ++i)
    os << (i ? "," : "") << m[i];
  os << "),(";
  for (std::size_t i = 0; i < actions_per_player.size(); ++i)
    os << (i ? "," : "") << actions_per_player[i];
  os << ")";
  if (kind == GameType::kTypeC) os << "," << layers;
  return os.str();
}

GameTree generate(const GenSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  const double zero_prob = rng.uniform(0.0, spec.zero_prob_max);
  std::vector<int> prefix;
  NodeSpec root = build_stage(spec, rng, zero_prob, 0, prefix);
  std::vector<std::string> players(spec.num_players);
  for (int i = 0; i < spec.num_players; ++i)
    players[i] = std::to_string(i + 1);
  GameTree game(spec.label() + "#" + std::to_string(spec.seed),
                std::move(players), root);
  return game;
}

std::vector<BatchEntry> generate_batch(const GenSpec& spec, int count) {
  validate_spec(spec);
  Rng master(spec.seed);
  std::vector<BatchEntry> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    GenSpec child = spec;
    child.seed = master.split(static_cast<std::uint64_t>(i)).next_u64();
    out.push_back(BatchEntry{generate(child), child.seed});
  }
  return out;
}

}  // namespace seqpath

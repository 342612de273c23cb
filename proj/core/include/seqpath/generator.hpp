#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqpath/game.hpp"

namespace seqpath {

enum class GameType { kTypeA, kTypeB, kTypeC };

// Benchmark game family. Players move in sequence (repeated over layers for
// type C). Type A/C movers observe everything except the immediately
// preceding move; type B movers observe only the immediately preceding move.
struct GenSpec {
  GameType kind = GameType::kTypeA;
  int num_players = 2;
  std::vector<int> actions_per_player;
  int layers = 1;  // type C only
  int payoff_low = -10;
  int payoff_high = 10;
  double zero_prob_max = 0.5;
  bool zero_per_entry = false;  // redraw the zeroing probability per payoff
  std::uint64_t seed = 1;

  // "A,(1,1,2),(2,3,3)" style label with the derived information-set counts.
  std::string label() const;
};

void validate_spec(const GenSpec& spec);

// Information sets per player implied by the family's observation rule.
std::vector<int> expected_infoset_counts(const GenSpec& spec);

GameTree generate(const GenSpec& spec);

struct BatchEntry {
  GameTree game;
  std::uint64_t seed;
};

// Deterministic child seeds derived from spec.seed.
std::vector<BatchEntry> generate_batch(const GenSpec& spec, int count);

}  // namespace seqpath

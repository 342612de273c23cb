#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqpath/assessment.hpp"
#include "seqpath/game.hpp"
#include "seqpath/rng.hpp"

namespace seqpath {

// Interval constraint on a single strategy or belief coordinate. Open bounds
// encode strict inequalities; equalities are degenerate closed intervals.
struct CoordConstraint {
  enum class Target { kStrategy, kBelief };
  Target target = Target::kStrategy;
  int infoset = 0;  // global index
  int index = 0;    // action index (strategy) or member index (belief)
  double lo = 0.0;
  double hi = 1.0;
  bool lo_open = false;
  bool hi_open = false;
};

// One analytically enumerated family of sequential equilibria. `sample`
// draws an interior representative (free coordinates uniform inside their
// ranges, beliefs chosen consistently with the family).
struct EquilibriumClass {
  std::string label;
  std::vector<CoordConstraint> constraints;
  std::function<Assessment(Rng&)> sample;
};

struct FixtureGame {
  std::string name;   // F1, F2, F3, F4, FA1, FA2, FN
  std::string title;
  std::shared_ptr<const GameTree> game;
  std::vector<EquilibriumClass> classes;
  std::vector<std::string> notes;  // filler-payoff provenance and caveats
};

// The built-in benchmark games. Construction is deterministic; the list is
// built once and shared.
const std::vector<FixtureGame>& fixtures();
const FixtureGame& fixture(const std::string& name);

}  // namespace seqpath

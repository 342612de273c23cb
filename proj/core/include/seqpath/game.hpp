#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqpath {

// Strategic players are 1-based; the chance mover is a distinguished id
// outside the player set.
using PlayerId = int;
constexpr PlayerId kChancePlayer = 0;

class GameError : public std::runtime_error {
 public:
  explicit GameError(const std::string& what) : std::runtime_error(what) {}
};

// Structural defects (bad arity, unnormalized chance law, mismatched action
// lists). Distinct from a perfect-recall violation, which is a verdict.
class GameStructureError : public GameError {
 public:
  using GameError::GameError;
};

struct GameNode {
  int id = -1;
  const GameNode* parent = nullptr;
  int edge_index = -1;  // action index at parent leading here
  std::string edge_label;
  PlayerId mover = -1;  // kChancePlayer, a player id, or -1 for terminals
  int infoset = -1;     // global infoset index; -1 for chance/terminal nodes
  int depth = 0;
  std::vector<std::string> actions;
  std::vector<double> chance_probs;        // chance nodes only
  std::vector<const GameNode*> children;   // empty at terminals
  std::vector<double> payoffs;             // terminals only, one per player

  bool is_terminal() const { return children.empty(); }
  bool is_chance() const { return mover == kChancePlayer && !is_terminal(); }
  bool is_decision() const { return mover > 0; }
};

struct InformationSet {
  PlayerId player = 0;
  std::string label;
  int index_in_player = 0;  // 0-based position within the player's list
  int global_index = 0;
  std::vector<const GameNode*> members;
  std::vector<std::string> actions;
  int first_flat_index = 0;  // offset of action 0 in the flat layout

  int num_actions() const { return static_cast<int>(actions.size()); }
};

// Recursive construction recipe; mirrors the on-disk format one to one.
struct NodeSpec {
  enum class Kind { kChance, kDecision, kTerminal };
  Kind kind = Kind::kTerminal;
  PlayerId player = 0;        // decision nodes
  std::string infoset_label;  // decision nodes
  std::vector<std::string> action_labels;
  std::vector<double> chance_probs;  // chance nodes, aligned with labels
  std::vector<NodeSpec> children;
  std::vector<double> payoffs;  // terminal nodes

  static NodeSpec terminal(std::vector<double> u) {
    NodeSpec s;
    s.kind = Kind::kTerminal;
    s.payoffs = std::move(u);
    return s;
  }
  static NodeSpec decision(PlayerId player, std::string infoset,
                           std::vector<std::string> labels,
                           std::vector<NodeSpec> kids) {
    NodeSpec s;
    s.kind = Kind::kDecision;
    s.player = player;
    s.infoset_label = std::move(infoset);
    s.action_labels = std::move(labels);
    s.children = std::move(kids);
    return s;
  }
  static NodeSpec chance(std::vector<std::string> labels,
                         std::vector<double> probs,
                         std::vector<NodeSpec> kids) {
    NodeSpec s;
    s.kind = Kind::kChance;
    s.action_labels = std::move(labels);
    s.chance_probs = std::move(probs);
    s.children = std::move(kids);
    return s;
  }
};

// Immutable extensive-form game. Nodes live in a deque so references stay
// valid; all queries are const and safe to share across threads.
class GameTree {
 public:
  GameTree(std::string name, std::vector<std::string> players,
           const NodeSpec& root);

  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  void set_description(std::string d) { description_ = std::move(d); }

  int num_players() const { return static_cast<int>(players_.size()); }
  const std::vector<std::string>& player_names() const { return players_; }

  const GameNode& root() const { return *root_; }
  const std::deque<GameNode>& nodes() const { return nodes_; }
  const std::vector<const GameNode*>& terminals() const { return terminals_; }
  const std::vector<InformationSet>& infosets() const { return infosets_; }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }

  // m0: total action count over all information sets.
  int num_actions_total() const { return total_actions_; }

  // Flat layout: (infoset, action) <-> contiguous index in [0, m0).
  int flat_index(int infoset, int action) const {
    return infosets_[infoset].first_flat_index + action;
  }
  std::pair<int, int> infoset_action(int flat) const;
  int infoset_of_flat(int flat) const { return flat_owner_[flat]; }

  const InformationSet* find_infoset(PlayerId player,
                                     const std::string& label) const;

  // "C/d" style key: edge labels from the root joined by '/'.
  std::string history_key(const GameNode& node) const;
  const GameNode* find_history(const std::string& key) const;

  double max_payoff() const { return max_payoff_; }
  double min_payoff() const { return min_payoff_; }
  double payoff_range() const {
    double r = max_payoff_ - min_payoff_;
    return r > 0 ? r : 1.0;
  }
  int max_depth() const { return max_depth_; }

 private:
  const GameNode* build(const NodeSpec& spec, const GameNode* parent,
                        int edge_index, std::string edge_label, int depth,
                        std::vector<std::string>& labels);
  void finalize(const std::vector<std::string>& labels);

  std::string name_;
  std::string description_;
  std::vector<std::string> players_;
  std::deque<GameNode> nodes_;
  const GameNode* root_ = nullptr;
  std::vector<const GameNode*> terminals_;
  std::vector<InformationSet> infosets_;
  std::vector<int> flat_owner_;
  int total_actions_ = 0;
  int max_depth_ = 0;
  double max_payoff_ = 0;
  double min_payoff_ = 0;
};

// One (information set, action index) step of a player's own past play.
struct ExperienceRecord {
  std::vector<std::pair<int, int>> steps;  // (global infoset index, action)
  bool operator==(const ExperienceRecord&) const = default;
};

ExperienceRecord experience_record(const GameTree& game, PlayerId player,
                                   const GameNode& h);

struct RecallViolation {
  int infoset;  // global index
  const GameNode* first;
  const GameNode* second;
};

struct RecallReport {
  std::vector<RecallViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Perfect recall holds when all members of each information set carry the
// same experience record for the owning player.
RecallReport validate_perfect_recall(const GameTree& game);

}  // namespace seqpath

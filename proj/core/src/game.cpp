#include "seqpath/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace seqpath {

namespace {
constexpr double kProbTol = 1e-12;
}

GameTree::GameTree(std::string name, std::vector<std::string> players,
                   const NodeSpec& root)
    : name_(std::move(name)), players_(std::move(players)) {
  if (players_.empty()) throw GameStructureError("game needs at least one player");
  std::vector<std::string> labels;  // infoset label per node id, "" elsewhere
  root_ = build(root, nullptr, -1, "", 0, labels);
  finalize(labels);
}

const GameNode* GameTree::build(const NodeSpec& spec, const GameNode* parent,
                                int edge_index, std::string edge_label,
                                int depth, std::vector<std::string>& labels) {
  nodes_.emplace_back();
  GameNode& node = nodes_.back();
  node.id = static_cast<int>(nodes_.size()) - 1;
  node.parent = parent;
  node.edge_index = edge_index;
  node.edge_label = std::move(edge_label);
  node.depth = depth;
  max_depth_ = std::max(max_depth_, depth);
  labels.emplace_back();

  switch (spec.kind) {
    case NodeSpec::Kind::kTerminal: {
      node.mover = -1;
      if (spec.payoffs.size() != players_.size()) {
        std::ostringstream os;
        os << "terminal payoff vector has " << spec.payoffs.size()
           << " entries, expected " << players_.size();
        throw GameStructureError(os.str());
      }
      node.payoffs = spec.payoffs;
      break;
    }
    case NodeSpec::Kind::kChance: {
      node.mover = kChancePlayer;
      if (spec.action_labels.empty())
        throw GameStructureError("chance node with no actions");
      if (spec.action_labels.size() != spec.children.size() ||
          spec.action_labels.size() != spec.chance_probs.size())
        throw GameStructureError("chance node arity mismatch");
      double sum = 0;
      for (double p : spec.chance_probs) {
        if (!(p >= 0)) throw GameStructureError("negative chance probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kProbTol)
        throw GameStructureError("chance law not normalized");
      node.actions = spec.action_labels;
      node.chance_probs = spec.chance_probs;
      break;
    }
    case NodeSpec::Kind::kDecision: {
      if (spec.player < 1 ||
          spec.player > static_cast<PlayerId>(players_.size()))
        throw GameStructureError("decision node with unknown player");
      if (spec.action_labels.empty())
        throw GameStructureError("decision node with no actions");
      if (spec.action_labels.size() != spec.children.size())
        throw GameStructureError("decision node arity mismatch");
      node.mover = spec.player;
      node.actions = spec.action_labels;
      labels[node.id] = spec.infoset_label;
      break;
    }
  }

  const int node_id = node.id;
  std::vector<const GameNode*> children;
  children.reserve(spec.children.size());
  for (std::size_t k = 0; k < spec.children.size(); ++k) {
    children.push_back(build(spec.children[k], &nodes_[node_id],
                             static_cast<int>(k), spec.action_labels[k],
                             depth + 1, labels));
  }
  nodes_[node_id].children = std::move(children);
  return &nodes_[node_id];
}

void GameTree::finalize(const std::vector<std::string>& labels) {
  min_payoff_ = std::numeric_limits<double>::infinity();
  max_payoff_ = -std::numeric_limits<double>::infinity();

  // (player, label) -> provisional infoset index in preorder discovery order.
  std::map<std::pair<PlayerId, std::string>, int> seen;
  for (GameNode& node : nodes_) {
    if (node.is_terminal()) {
      terminals_.push_back(&node);
      for (double u : node.payoffs) {
        min_payoff_ = std::min(min_payoff_, u);
        max_payoff_ = std::max(max_payoff_, u);
      }
      continue;
    }
    if (!node.is_decision()) continue;
    const std::string& label = labels[node.id];
    auto key = std::make_pair(node.mover, label);
    auto it = seen.find(key);
    if (it == seen.end()) {
      int gi = static_cast<int>(infosets_.size());
      seen.emplace(std::move(key), gi);
      InformationSet is;
      is.player = node.mover;
      is.label = label;
      is.global_index = gi;
      is.actions = node.actions;
      is.members.push_back(&node);
      infosets_.push_back(std::move(is));
      node.infoset = gi;
    } else {
      InformationSet& is = infosets_[it->second];
      if (is.actions != node.actions)
        throw GameStructureError("information set '" + label +
                                 "' has mismatched action lists");
      is.members.push_back(&node);
      node.infoset = it->second;
    }
  }
  if (!std::isfinite(min_payoff_))
    throw GameStructureError("game has no terminal history");

  // Stable layout: players ascending, discovery order within a player.
  std::vector<int> order(infosets_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
    return infosets_[a].player < infosets_[b].player;
  });
  std::vector<InformationSet> sorted;
  sorted.reserve(infosets_.size());
  std::vector<int> remap(infosets_.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    remap[order[pos]] = static_cast<int>(pos);
    sorted.push_back(std::move(infosets_[order[pos]]));
  }
  infosets_ = std::move(sorted);

  std::vector<int> per_player(players_.size() + 1, 0);
  total_actions_ = 0;
  for (std::size_t pos = 0; pos < infosets_.size(); ++pos) {
    InformationSet& is = infosets_[pos];
    is.global_index = static_cast<int>(pos);
    is.index_in_player = per_player[is.player]++;
    is.first_flat_index = total_actions_;
    total_actions_ += is.num_actions();
    for (int a = 0; a < is.num_actions(); ++a)
      flat_owner_.push_back(is.global_index);
  }
  for (GameNode& node : nodes_) {
    if (node.is_decision()) node.infoset = remap[node.infoset];
  }
}

std::pair<int, int> GameTree::infoset_action(int flat) const {
  const int gi = flat_owner_.at(flat);
  return {gi, flat - infosets_[gi].first_flat_index};
}

const InformationSet* GameTree::find_infoset(PlayerId player,
                                             const std::string& label) const {
  for (const InformationSet& is : infosets_)
    if (is.player == player && is.label == label) return &is;
  return nullptr;
}

std::string GameTree::history_key(const GameNode& node) const {
  std::vector<const std::string*> labels;
  for (const GameNode* n = &node; n->parent != nullptr; n = n->parent)
    labels.push_back(&n->edge_label);
  std::string key;
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    if (!key.empty()) key += '/';
    key += **it;
  }
  return key;
}

const GameNode* GameTree::find_history(const std::string& key) const {
  const GameNode* node = root_;
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t next = key.find('/', pos);
    if (next == std::string::npos) next = key.size();
    const std::string label = key.substr(pos, next - pos);
    const GameNode* child = nullptr;
    for (std::size_t k = 0; k < node->actions.size(); ++k) {
      if (node->actions[k] == label) {
        child = node->children[k];
        break;
      }
    }
    if (child == nullptr) return nullptr;
    node = child;
    pos = next + (next < key.size() ? 1 : 0);
  }
  return node;
}

ExperienceRecord experience_record(const GameTree& game, PlayerId player,
                                   const GameNode& h) {
  if (player < 1 || player > game.num_players())
    throw GameError("experience_record: unknown player");
  std::vector<std::pair<int, int>> rev;
  for (const GameNode* n = &h; n->parent != nullptr; n = n->parent) {
    const GameNode* p = n->parent;
    if (p->mover == player) rev.emplace_back(p->infoset, n->edge_index);
  }
  ExperienceRecord rec;
  rec.steps.assign(rev.rbegin(), rev.rend());
  return rec;
}

RecallReport validate_perfect_recall(const GameTree& game) {
  RecallReport report;
  for (const InformationSet& is : game.infosets()) {
    if (is.members.empty())
      throw GameStructureError("information set with no member history");
    const ExperienceRecord ref =
        experience_record(game, is.player, *is.members.front());
    for (std::size_t m = 1; m < is.members.size(); ++m) {
      const ExperienceRecord rec =
          experience_record(game, is.player, *is.members[m]);
      if (!(rec == ref)) {
        report.violations.push_back(
            {is.global_index, is.members.front(), is.members[m]});
      }
    }
  }
  return report;
}

}  // namespace seqpath

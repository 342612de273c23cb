#include "seqpath/game_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace seqpath {

namespace {

using nlohmann::json;

// nlohmann reports byte offsets; map one back to line/column for diagnostics.
std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

NodeSpec parse_node(const json& j) {
  if (!j.is_object()) throw ParseError("node must be a JSON object");
  const std::string kind = j.value("kind", "");
  if (kind == "terminal") {
    if (!j.contains("payoffs") || !j["payoffs"].is_array())
      throw ParseError("terminal node needs a \"payoffs\" array");
    std::vector<double> u;
    for (const auto& v : j["payoffs"]) {
      if (!v.is_number()) throw ParseError("payoff entries must be numbers");
      u.push_back(v.get<double>());
    }
    return NodeSpec::terminal(std::move(u));
  }
  if (kind == "chance" || kind == "decision") {
    if (!j.contains("actions") || !j["actions"].is_array() ||
        j["actions"].empty())
      throw ParseError(kind + " node needs a nonempty \"actions\" array");
    std::vector<std::string> labels;
    std::vector<double> probs;
    std::vector<NodeSpec> children;
    for (const auto& a : j["actions"]) {
      if (!a.is_object() || !a.contains("label") || !a.contains("child"))
        throw ParseError("action entries need \"label\" and \"child\"");
      labels.push_back(a["label"].get<std::string>());
      if (kind == "chance") {
        if (!a.contains("prob") || !a["prob"].is_number())
          throw ParseError("chance actions need a numeric \"prob\"");
        probs.push_back(a["prob"].get<double>());
      }
      children.push_back(parse_node(a["child"]));
    }
    if (kind == "chance")
      return NodeSpec::chance(std::move(labels), std::move(probs),
                              std::move(children));
    if (!j.contains("player") || !j["player"].is_number_integer())
      throw ParseError("decision node needs an integer \"player\"");
    if (!j.contains("infoset") || !j["infoset"].is_string())
      throw ParseError("decision node needs a string \"infoset\"");
    return NodeSpec::decision(j["player"].get<int>(),
                              j["infoset"].get<std::string>(),
                              std::move(labels), std::move(children));
  }
  throw ParseError("node \"kind\" must be chance, decision, or terminal");
}

json node_to_json(const GameTree& game, const GameNode& node) {
  json j;
  if (node.is_terminal()) {
    j["kind"] = "terminal";
    j["payoffs"] = node.payoffs;
    return j;
  }
  json actions = json::array();
  for (std::size_t k = 0; k < node.actions.size(); ++k) {
    json a;
    a["label"] = node.actions[k];
    if (node.is_chance()) a["prob"] = node.chance_probs[k];
    a["child"] = node_to_json(game, *node.children[k]);
    actions.push_back(std::move(a));
  }
  if (node.is_chance()) {
    j["kind"] = "chance";
  } else {
    j["kind"] = "decision";
    j["player"] = node.mover;
    j["infoset"] = game.infosets()[node.infoset].label;
  }
  j["actions"] = std::move(actions);
  return j;
}

bool nodes_isomorphic(const GameTree& ga, const GameNode& a, const GameTree& gb,
                      const GameNode& b) {
  if (a.is_terminal() != b.is_terminal()) return false;
  if (a.is_terminal()) return a.payoffs == b.payoffs;
  if (a.mover != b.mover || a.actions != b.actions) return false;
  if (a.is_chance() && a.chance_probs != b.chance_probs) return false;
  if (a.is_decision()) {
    if (ga.infosets()[a.infoset].label != gb.infosets()[b.infoset].label)
      return false;
  }
  for (std::size_t k = 0; k < a.children.size(); ++k)
    if (!nodes_isomorphic(ga, *a.children[k], gb, *b.children[k])) return false;
  return true;
}

}  // namespace

GameTree parse_game(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(document, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(std::string("syntax error: ") + e.what(), line, col);
  }
  if (!j.is_object()) throw ParseError("top level must be a JSON object");
  if (!j.contains("players") || !j["players"].is_array() ||
      j["players"].empty())
    throw ParseError("game needs a nonempty \"players\" array");
  std::vector<std::string> players;
  for (const auto& p : j["players"]) players.push_back(p.get<std::string>());
  if (!j.contains("root")) throw ParseError("game needs a \"root\" node");

  NodeSpec root = parse_node(j["root"]);
  GameTree game(j.value("name", std::string("unnamed")), std::move(players),
                root);
  game.set_description(j.value("description", std::string()));

  RecallReport recall = validate_perfect_recall(game);
  if (!recall.ok()) {
    const RecallViolation& v = recall.violations.front();
    throw GameError("perfect recall violated at information set '" +
                    game.infosets()[v.infoset].label + "': histories '" +
                    game.history_key(*v.first) + "' and '" +
                    game.history_key(*v.second) +
                    "' give the player different experience records");
  }
  return game;
}

GameTree load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

std::string serialize_game(const GameTree& game) {
  json j;
  j["name"] = game.name();
  if (!game.description().empty()) j["description"] = game.description();
  j["players"] = game.player_names();
  j["root"] = node_to_json(game, game.root());
  return j.dump(2) + "\n";
}

bool games_isomorphic(const GameTree& a, const GameTree& b) {
  if (a.player_names() != b.player_names()) return false;
  return nodes_isomorphic(a, a.root(), b, b.root());
}

}  // namespace seqpath

#pragma once

#include <iosfwd>
#include <string>

#include "seqpath/game.hpp"

namespace seqpath {

class ParseError : public GameError {
 public:
  ParseError(const std::string& what, int line, int column)
      : GameError(what + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
        line(line),
        column(column) {}
  explicit ParseError(const std::string& what)
      : GameError(what), line(0), column(0) {}
  int line;
  int column;
};

// Parses the documented JSON game format. Surfaces syntax errors with
// line/column, structural defects, and perfect-recall violations.
GameTree parse_game(const std::string& document);
GameTree load_game(const std::string& path);

std::string serialize_game(const GameTree& game);

// Label-preserving equality of two games (structure, chance laws, payoffs,
// information-set grouping). The round-trip contract for serialize/parse.
bool games_isomorphic(const GameTree& a, const GameTree& b);

}  // namespace seqpath

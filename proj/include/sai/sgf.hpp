#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sai/board.hpp"

namespace sai {

class SgfError : public std::runtime_error {
public:
    explicit SgfError(const std::string& what) : std::runtime_error(what) {}
};

// A complete game as stored in an SGF file (FF[4], properties SZ KM PB PW RE
// B W AB). Files written by sgf_write round-trip byte-exactly through
// sgf_parse + sgf_write.
struct SgfGame {
    int size = 9;
    double komi = 7.5;
    std::string black_name;
    std::string white_name;
    std::string result;  // e.g. "B+3.5", "W+R", "0", or empty if unknown
    std::vector<Vertex> setup_black;           // AB
    std::vector<std::pair<Color, Vertex>> moves;
};

std::string sgf_write(const SgfGame& game);
SgfGame sgf_parse(const std::string& text);

// Replays the game, returning the final position. Throws on illegal moves.
Position sgf_replay(const SgfGame& game);

SgfGame sgf_from_position(const Position& final_pos,
                          const std::string& black_name,
                          const std::string& white_name,
                          const std::string& result);

std::string format_result(const GameResult& r);

}  // namespace sai

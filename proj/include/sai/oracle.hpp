#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sai/board.hpp"

namespace sai {

class OracleTooLargeError : public std::runtime_error {
public:
    explicit OracleTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive score-optimal solver for boards up to 4x4. Both players maximize
// their own area lead; komi is a constant offset and does not affect optimal
// play. The solved game mirrors the self-play game: double pass ends it, games
// are truncated at 6*N*N total moves and scored as they stand, and repetition
// is barred by the simple-ko rule (a move may not recreate the whole-board
// position of the previous turn). Full positional superko is not modeled --
// the state would no longer be finite -- so solved values can differ from the
// played game in long ko cycles; optimal_moves() only ever reports moves that
// are legal in the actual game. States are memoized on (board, previous
// board, to move, pass flag, moves left), which makes the recursion acyclic
// and the cache sound.
class ScoreSolver {
public:
    explicit ScoreSolver(int size);

    // Optimal lead (no komi) for the player to move at p under the solver
    // game; p's move count fixes the remaining-move budget.
    int best_lead(const Position& p);
    // All game-legal moves achieving the optimal lead.
    std::vector<Vertex> optimal_moves(const Position& p);

    int size() const { return size_; }

private:
    int solve(const std::vector<int8_t>& board, uint64_t prev_key, Color to_move,
              bool passed, int remaining);
    uint64_t board_key(const std::vector<int8_t>& board) const;
    uint64_t prev_board_key(const Position& p) const;

    int size_;
    int move_cap_;
    std::unordered_map<uint64_t, int8_t> memo_;
};

}  // namespace sai

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sai {

enum class Color : int8_t { Empty = 0, Black = 1, White = 2 };

inline Color opponent(Color c) {
    return c == Color::Black ? Color::White : Color::Black;
}

// A move: either a board intersection or the pass move. Intersections are
// indexed row-major (idx = y * N + x); pass is index N*N, the last policy slot.
class Vertex {
public:
    Vertex() : idx_(-1) {}
    static Vertex pass() { Vertex v; v.idx_ = -2; return v; }
    static Vertex point(int x, int y, int size) {
        if (x < 0 || y < 0 || x >= size || y >= size) {
            throw std::out_of_range("vertex off board");
        }
        Vertex v;
        v.idx_ = y * size + x;
        return v;
    }
    static Vertex from_index(int idx, int size) {
        if (idx == size * size) return pass();
        if (idx < 0 || idx > size * size) throw std::out_of_range("bad vertex index");
        Vertex v;
        v.idx_ = idx;
        return v;
    }

    bool is_pass() const { return idx_ == -2; }
    int x(int size) const { return idx_ % size; }
    int y(int size) const { return idx_ / size; }
    // Policy-vector slot: 0..N*N-1 for points, N*N for pass.
    int index(int size) const { return is_pass() ? size * size : idx_; }

    bool operator==(const Vertex& o) const { return idx_ == o.idx_; }
    bool operator!=(const Vertex& o) const { return idx_ != o.idx_; }

private:
    int idx_;
};

enum class Outcome : int8_t { BlackWin, WhiteWin, Draw };
enum class Termination : int8_t { DoublePass, Resignation };

struct GameResult {
    Outcome outcome;
    double margin = 0.0;   // non-negative half-integer, 0 iff draw
    Termination termination = Termination::DoublePass;
    bool has_margin = true;  // resigned games carry no margin unless scored
};

class IllegalMoveError : public std::runtime_error {
public:
    explicit IllegalMoveError(const std::string& what) : std::runtime_error(what) {}
};

namespace rules {
// Places a stone and removes captures in place. Returns false (board restored
// not guaranteed) if the point is occupied or the move would be suicide.
// Superko is not checked here.
bool apply_move(std::vector<int8_t>& board, int size, Vertex m, Color who);
// Area lead (stones + exclusive empty regions), Black minus White, no komi.
int area_lead(const std::vector<int8_t>& board, int size);
}  // namespace rules

// Complete Go game state: stones, player to move, komi, and the full board
// history needed for positional superko and the last-4-position features.
// Positions are immutable values; play() returns a new one.
class Position {
public:
    explicit Position(int size = 9, double komi = 7.5);
    // Handicap setup: pre-placed black stones, White moves first.
    static Position with_setup(int size, double komi, const std::vector<Vertex>& black_stones);

    int size() const { return size_; }
    double komi() const { return komi_; }
    Color to_move() const { return to_move_; }
    int pass_count() const { return pass_count_; }
    bool is_terminal() const { return pass_count_ >= 2; }
    // k_s: komi from the current player's perspective.
    double signed_komi() const { return to_move_ == Color::White ? komi_ : -komi_; }

    Color stone(int idx) const { return static_cast<Color>(board_[idx]); }
    Color stone(int x, int y) const { return stone(y * size_ + x); }
    const std::vector<int8_t>& board() const { return board_; }
    uint64_t board_hash() const { return history_hashes_.back(); }

    bool is_legal(Vertex m) const;
    std::vector<Vertex> legal_moves() const;
    Position play(Vertex m) const;

    // Tromp-Taylor area score, Black perspective, komi included.
    double tromp_taylor_score() const;
    // Board-only lead (stones + exclusive territory), Black perspective, no komi.
    int area_lead() const;
    GameResult score_game() const;

    // History: entry 0 is the initial board, the last entry is the current one.
    size_t history_size() const { return history_boards_.size(); }
    const std::vector<int8_t>& board_at(size_t i) const { return history_boards_[i]; }
    Color to_move_at(size_t i) const { return static_cast<Color>(history_to_move_[i]); }
    const std::vector<uint64_t>& history_hashes() const { return history_hashes_; }
    // Legal moves as of history entry i (superko checked against its prefix).
    std::vector<bool> legal_map_at(size_t i) const;

    const std::vector<Vertex>& moves() const { return moves_; }
    const std::vector<Vertex>& setup_stones() const { return setup_stones_; }

private:
    bool legal_on(const std::vector<int8_t>& board, Vertex m, Color who,
                  const uint64_t* hashes, size_t n_hashes) const;
    static uint64_t hash_board(const std::vector<int8_t>& board);

    int size_;
    double komi_;
    Color to_move_;
    int pass_count_;
    std::vector<int8_t> board_;
    std::vector<std::vector<int8_t>> history_boards_;
    std::vector<int8_t> history_to_move_;
    std::vector<uint64_t> history_hashes_;
    std::vector<Vertex> moves_;
    std::vector<Vertex> setup_stones_;
};

}  // namespace sai

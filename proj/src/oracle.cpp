#include "sai/oracle.hpp"

#include <algorithm>

#include "sai/random.hpp"

namespace sai {

ScoreSolver::ScoreSolver(int size) : size_(size), move_cap_(6 * size * size) {
    if (size > 4) {
        throw OracleTooLargeError("oracle solver limited to 4x4 boards");
    }
}

uint64_t ScoreSolver::board_key(const std::vector<int8_t>& board) const {
    // Offset by one so the empty board never collides with the "no previous
    // board" sentinel 0.
    uint64_t k = 0;
    for (int8_t c : board) k = k * 3 + static_cast<uint64_t>(c) + 1;
    return k;
}

int ScoreSolver::solve(const std::vector<int8_t>& board, uint64_t prev_key,
                       Color to_move, bool passed, int remaining) {
    int sign = to_move == Color::Black ? 1 : -1;
    if (remaining <= 0) return sign * rules::area_lead(board, size_);
    uint64_t bk = board_key(board);
    uint64_t key = mix64(mix64(bk) ^ prev_key);
    key = mix64(key ^ static_cast<uint64_t>(remaining));
    key = key * 4 + (to_move == Color::White ? 2 : 0) + (passed ? 1 : 0);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    int best;
    // Pass: ends the game if the opponent just passed, else hands over the turn.
    if (passed) {
        best = sign * rules::area_lead(board, size_);
    } else {
        best = -solve(board, prev_key, opponent(to_move), true, remaining - 1);
    }
    for (int v = 0; v < size_ * size_; ++v) {
        if (board[v] != 0) continue;
        std::vector<int8_t> child = board;
        if (!rules::apply_move(child, size_, Vertex::from_index(v, size_), to_move)) continue;
        if (board_key(child) == prev_key) continue;  // simple ko
        best = std::max(best, -solve(child, bk, opponent(to_move), false, remaining - 1));
    }
    memo_[key] = static_cast<int8_t>(best);
    return best;
}

// Board of the previous turn, with the ko ban persisting through passes:
// the most recent history board that differs from the current one.
uint64_t ScoreSolver::prev_board_key(const Position& p) const {
    for (size_t i = p.history_size() - 1; i-- > 0;) {
        if (p.board_at(i) != p.board()) return board_key(p.board_at(i));
    }
    return 0;
}

int ScoreSolver::best_lead(const Position& p) {
    int remaining = std::max(0, move_cap_ - static_cast<int>(p.moves().size()));
    return solve(p.board(), prev_board_key(p), p.to_move(), p.pass_count() >= 1, remaining);
}

std::vector<Vertex> ScoreSolver::optimal_moves(const Position& p) {
    int remaining = std::max(0, move_cap_ - static_cast<int>(p.moves().size()));
    bool passed = p.pass_count() >= 1;
    uint64_t bk = board_key(p.board());
    int sign = p.to_move() == Color::Black ? 1 : -1;
    int best = -2 * size_ * size_;
    std::vector<std::pair<Vertex, int>> vals;
    for (Vertex m : p.legal_moves()) {
        int val;
        if (remaining <= 0) {
            // Move budget exhausted: every continuation scores as it stands.
            val = sign * rules::area_lead(p.board(), size_);
        } else if (m.is_pass()) {
            if (passed) {
                val = sign * rules::area_lead(p.board(), size_);
            } else {
                val = -solve(p.board(), prev_board_key(p), opponent(p.to_move()), true,
                             remaining - 1);
            }
        } else {
            std::vector<int8_t> child = p.board();
            rules::apply_move(child, size_, m, p.to_move());
            val = -solve(child, bk, opponent(p.to_move()), false, remaining - 1);
        }
        vals.emplace_back(m, val);
        best = std::max(best, val);
    }
    std::vector<Vertex> out;
    for (const auto& [m, val] : vals) {
        if (val == best) out.push_back(m);
    }
    return out;
}

}  // namespace sai

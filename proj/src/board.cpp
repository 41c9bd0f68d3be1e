#include "sai/board.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace sai {

namespace {

constexpr int kMaxSize = 19;

// Zobrist keys, fixed seed so hashes are stable across runs.
struct ZobristTable {
    std::array<std::array<uint64_t, kMaxSize * kMaxSize>, 3> keys;
    ZobristTable() {
        std::mt19937_64 gen(0x5a1b0a7d00c0ffeeULL);
        for (auto& plane : keys)
            for (auto& k : plane) k = gen();
    }
};

const ZobristTable& zobrist() {
    static ZobristTable t;
    return t;
}

}  // namespace

Position::Position(int size, double komi)
    : size_(size), komi_(komi), to_move_(Color::Black), pass_count_(0),
      board_(size * size, 0) {
    if (size < 2 || size > kMaxSize) throw std::invalid_argument("board size out of range");
    if (std::abs(komi * 2 - std::round(komi * 2)) > 1e-9) {
        throw std::invalid_argument("komi must be a multiple of 0.5");
    }
    history_boards_.push_back(board_);
    history_to_move_.push_back(static_cast<int8_t>(to_move_));
    history_hashes_.push_back(hash_board(board_));
}

Position Position::with_setup(int size, double komi, const std::vector<Vertex>& black_stones) {
    Position p(size, komi);
    for (Vertex v : black_stones) {
        if (v.is_pass() || p.board_[v.index(size)] != 0) {
            throw std::invalid_argument("bad setup stone");
        }
        p.board_[v.index(size)] = static_cast<int8_t>(Color::Black);
    }
    p.to_move_ = Color::White;
    p.setup_stones_ = black_stones;
    p.history_boards_.back() = p.board_;
    p.history_to_move_.back() = static_cast<int8_t>(Color::White);
    p.history_hashes_.back() = hash_board(p.board_);
    return p;
}

uint64_t Position::hash_board(const std::vector<int8_t>& board) {
    uint64_t h = 0;
    const auto& z = zobrist();
    for (size_t i = 0; i < board.size(); ++i) {
        if (board[i] != 0) h ^= z.keys[board[i]][i];
    }
    return h;
}

namespace rules {

// Removes the group at `start` if it has no liberties. Returns stones removed.
static int remove_if_dead(std::vector<int8_t>& board, int size, int start) {
    int8_t color = board[start];
    std::vector<int> group;
    std::vector<bool> seen(board.size(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        group.push_back(v);
        int x = v % size, y = v / size;
        const int nx[4] = {x - 1, x + 1, x, x};
        const int ny[4] = {y, y, y - 1, y + 1};
        for (int d = 0; d < 4; ++d) {
            if (nx[d] < 0 || ny[d] < 0 || nx[d] >= size || ny[d] >= size) continue;
            int n = ny[d] * size + nx[d];
            if (board[n] == 0) return 0;  // liberty found
            if (board[n] == color && !seen[n]) {
                seen[n] = true;
                stack.push_back(n);
            }
        }
    }
    for (int v : group) board[v] = 0;
    return static_cast<int>(group.size());
}

bool apply_move(std::vector<int8_t>& board, int size, Vertex m, Color who) {
    if (m.is_pass()) return true;
    int idx = m.index(size);
    if (board[idx] != 0) return false;
    board[idx] = static_cast<int8_t>(who);
    int x = idx % size, y = idx / size;
    int8_t opp = static_cast<int8_t>(opponent(who));
    const int nx[4] = {x - 1, x + 1, x, x};
    const int ny[4] = {y, y, y - 1, y + 1};
    for (int d = 0; d < 4; ++d) {
        if (nx[d] < 0 || ny[d] < 0 || nx[d] >= size || ny[d] >= size) continue;
        int n = ny[d] * size + nx[d];
        if (board[n] == opp) remove_if_dead(board, size, n);
    }
    // Suicide is illegal.
    std::vector<int8_t> probe = board;
    if (remove_if_dead(probe, size, idx) > 0) return false;
    return true;
}

int area_lead(const std::vector<int8_t>& board, int size) {
    int black = 0, white = 0;
    const int n = size * size;
    std::vector<int8_t> region(n, -1);
    for (int i = 0; i < n; ++i) {
        if (board[i] == static_cast<int8_t>(Color::Black)) { ++black; continue; }
        if (board[i] == static_cast<int8_t>(Color::White)) { ++white; continue; }
        if (region[i] != -1) continue;
        // Flood-fill this empty region and find which colors it reaches.
        std::vector<int> pts;
        std::vector<int> stack{i};
        region[i] = 0;
        int8_t reach = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            pts.push_back(v);
            int x = v % size, y = v / size;
            const int nx[4] = {x - 1, x + 1, x, x};
            const int ny[4] = {y, y, y - 1, y + 1};
            for (int d = 0; d < 4; ++d) {
                if (nx[d] < 0 || ny[d] < 0 || nx[d] >= size || ny[d] >= size) continue;
                int w = ny[d] * size + nx[d];
                if (board[w] == 0) {
                    if (region[w] == -1) {
                        region[w] = 0;
                        stack.push_back(w);
                    }
                } else {
                    reach |= (board[w] == static_cast<int8_t>(Color::Black)) ? 1 : 2;
                }
            }
        }
        if (reach == 1) black += static_cast<int>(pts.size());
        else if (reach == 2) white += static_cast<int>(pts.size());
    }
    return black - white;
}

}  // namespace rules

bool Position::legal_on(const std::vector<int8_t>& board, Vertex m, Color who,
                        const uint64_t* hashes, size_t n_hashes) const {
    if (m.is_pass()) return true;
    std::vector<int8_t> scratch = board;
    if (!rules::apply_move(scratch, size_, m, who)) return false;
    uint64_t h = hash_board(scratch);
    for (size_t i = 0; i < n_hashes; ++i) {
        if (hashes[i] == h) return false;  // positional superko
    }
    return true;
}

bool Position::is_legal(Vertex m) const {
    return legal_on(board_, m, to_move_, history_hashes_.data(), history_hashes_.size());
}

std::vector<Vertex> Position::legal_moves() const {
    std::vector<Vertex> out;
    out.reserve(size_ * size_ + 1);
    for (int i = 0; i < size_ * size_; ++i) {
        Vertex v = Vertex::from_index(i, size_);
        if (is_legal(v)) out.push_back(v);
    }
    out.push_back(Vertex::pass());
    return out;
}

std::vector<bool> Position::legal_map_at(size_t i) const {
    const auto& board = history_boards_[i];
    Color who = static_cast<Color>(history_to_move_[i]);
    std::vector<bool> out(size_ * size_ + 1, false);
    for (int v = 0; v < size_ * size_; ++v) {
        out[v] = legal_on(board, Vertex::from_index(v, size_), who,
                          history_hashes_.data(), i + 1);
    }
    out[size_ * size_] = true;
    return out;
}

Position Position::play(Vertex m) const {
    Position next = *this;
    if (!rules::apply_move(next.board_, size_, m, to_move_)) {
        throw IllegalMoveError("occupied point or suicide");
    }
    uint64_t h = hash_board(next.board_);
    if (!m.is_pass()) {
        for (uint64_t prev : history_hashes_) {
            if (prev == h) throw IllegalMoveError("positional superko violation");
        }
    }
    next.to_move_ = opponent(to_move_);
    next.pass_count_ = m.is_pass() ? std::min(pass_count_ + 1, 2) : 0;
    next.history_boards_.push_back(next.board_);
    next.history_to_move_.push_back(static_cast<int8_t>(next.to_move_));
    next.history_hashes_.push_back(h);
    next.moves_.push_back(m);
    return next;
}

int Position::area_lead() const {
    return rules::area_lead(board_, size_);
}

double Position::tromp_taylor_score() const {
    return static_cast<double>(area_lead()) - komi_;
}

GameResult Position::score_game() const {
    double s = tromp_taylor_score();
    GameResult r;
    r.termination = Termination::DoublePass;
    if (s > 0) { r.outcome = Outcome::BlackWin; r.margin = s; }
    else if (s < 0) { r.outcome = Outcome::WhiteWin; r.margin = -s; }
    else { r.outcome = Outcome::Draw; r.margin = 0; }
    return r;
}

}  // namespace sai

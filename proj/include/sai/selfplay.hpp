#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sai/evaluator.hpp"
#include "sai/random.hpp"
#include "sai/search.hpp"

namespace sai {

class MalformedRecordError : public std::runtime_error {
public:
    explicit MalformedRecordError(const std::string& what) : std::runtime_error(what) {}
};

struct GameTask {
    enum class Origin { FromEmpty, Branch };
    Origin origin = Origin::FromEmpty;
    int parent_game = -1;   // branch only
    int move_index = -1;    // branch only: opening length
    std::vector<Vertex> opening;  // branch only: moves replayed before play starts
    int board_size = 9;
    double komi = 7.5;
    uint64_t seed = 0;
};

struct TrainingRecord {
    int board_size = 9;
    std::vector<Vertex> moves;  // position encoding: moves from the empty board
    double komi = 7.5;
    std::vector<double> visit_proportions;  // N*N+1 entries
    double z = 0.5;            // final result for the record's player to move
    int branch_parent = -1;
    int branch_move = -1;
    bool included = true;

    bool operator==(const TrainingRecord&) const = default;
};

struct GameRecord {
    GameTask task;
    GameResult result;
    std::vector<Vertex> all_moves;  // from the empty board, opening included
    std::vector<TrainingRecord> records;
    std::vector<double> root_alphas;  // net alpha at each played position
    std::optional<double> score_margin;  // Black perspective, when scored
};

struct SelfplayConfig {
    SearchConfig search;
    double resign_threshold = 0.05;
    double blunder_delta = 0.05;
    int max_moves = 0;  // 0: default 6 * N * N
    bool score_resigned_games = false;
    int estimate_visits = 1000;
};

// Draws a komi from the empty-board sigmoid treated as a CDF, rounded to a
// half-integer and clamped to [-10, 30].
double sample_komi(const WinrateCurve& empty_board_curve, Rng& rng);

// With probability branch_prob, emits a branch task whose komi makes the
// position estimated-fair given the net's alpha_hat.
std::optional<GameTask> maybe_branch(const Position& s, double alpha_hat, Rng& rng,
                                     int parent_game, int move_index,
                                     double branch_prob = 0.02);

GameRecord play_game(const GameTask& task, const Evaluator& e, const SelfplayConfig& cfg);

std::string export_chunk(const std::vector<TrainingRecord>& records);
std::vector<TrainingRecord> parse_chunk(const std::string& chunk);

struct GenerationConfig {
    int games = 2000;
    int board_size = 9;
    uint64_t master_seed = 0;
    SelfplayConfig selfplay;
    double branch_prob = 0.02;
};

struct GenerationResult {
    std::vector<GameRecord> games;
    int complete_count = 0;
    int branch_count = 0;
};

// Plays a generation with a 2:1 mix of complete games and branches. Game i is
// played with the i-th seed derived from the master seed; reruns are identical.
GenerationResult run_generation(const Evaluator& e, const GenerationConfig& cfg);

}  // namespace sai

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sai/evaluator.hpp"
#include "sai/net.hpp"
#include "sai/search.hpp"
#include "sai/sgf.hpp"

namespace sai {

// One engine: an evaluator choice plus its search settings.
struct EngineSpec {
    std::string name = "sai";
    std::string evaluator = "territory";  // net | uniform-random | territory | oracle
    std::string weights_path;
    SyntheticOptions synthetic;
    SearchConfig search;
};

std::unique_ptr<Evaluator> make_evaluator(const EngineSpec& spec);

enum class HandicapType { None, Score, Positional };

struct Handicap {
    HandicapType type = HandicapType::None;
    double malus = 0.0;            // score handicap, relative to reference_komi
    double reference_komi = 7.5;
    int stones = 2;                // positional handicap
    std::vector<Vertex> placements;  // empty: conventional points
    double bonus_komi = 0.5;       // komi used with positional handicap
};

enum class ColorPolicy { Alternate, FocalBlack, FocalWhite };

struct MatchSpec {
    EngineSpec engines[2];  // engine 0 is the focal side
    int games = 100;
    int board_size = 9;
    double komi = 7.5;
    ColorPolicy color_policy = ColorPolicy::Alternate;
    Handicap handicap;
    uint64_t seed = 0;
    int max_moves = 0;          // 0: 6 * N * N
    int margin_visits = 1000;   // estimate_score visits for resigned games
    std::string sgf_dir;        // empty: no SGF output
};

struct GameOutcome {
    int index = 0;
    Color focal_color = Color::Black;
    double komi = 7.5;
    bool voided = false;
    bool focal_won = false;
    bool draw = false;
    std::optional<double> focal_margin;  // focal perspective, when focal won and scored
    std::string sgf;
};

struct ExperimentReport {
    int games = 0;
    int voided = 0;
    int focal_wins = 0;
    int draws = 0;
    int focal_black_games = 0, focal_black_wins = 0;
    int focal_white_games = 0, focal_white_wins = 0;
    // Average final score of games the focal engine won; present only with
    // at least 5 focal wins.
    std::optional<double> avg_winning_score;
    std::vector<GameOutcome> outcomes;

    double win_pct() const;
    double win_pct_black() const;
    double win_pct_white() const;
};

ExperimentReport run_match(const MatchSpec& spec);

// Fixed ladder: a full match at each malus value.
std::vector<ExperimentReport> run_handicap_ladder(const MatchSpec& base,
                                                  const std::vector<double>& malus_sequence);

struct LadderStep {
    double malus = 0;
    double komi = 7.5;
    Color focal_color = Color::White;
    bool focal_won = false;
};

// Adaptive ladder: one game at a time; a focal win adds 2 malus points with
// colors kept, a loss keeps the malus and swaps colors.
std::vector<LadderStep> run_adaptive_ladder(const MatchSpec& base, int games);

std::string report_csv(const ExperimentReport& report);

Position initial_position(const MatchSpec& spec, Color focal_color);

}  // namespace sai

#include "sai/match.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sai/random.hpp"

namespace sai {

std::unique_ptr<Evaluator> make_evaluator(const EngineSpec& spec) {
    if (spec.evaluator == "net") {
        return std::make_unique<NetEvaluator>(load_weights_file(spec.weights_path));
    }
    if (spec.evaluator == "uniform-random") {
        return std::make_unique<SyntheticEvaluator>(SyntheticStyle::UniformRandom, spec.synthetic);
    }
    if (spec.evaluator == "territory") {
        return std::make_unique<SyntheticEvaluator>(SyntheticStyle::Territory, spec.synthetic);
    }
    if (spec.evaluator == "oracle") {
        return std::make_unique<SyntheticEvaluator>(SyntheticStyle::Oracle, spec.synthetic);
    }
    throw std::invalid_argument("unknown evaluator kind: " + spec.evaluator);
}

double ExperimentReport::win_pct() const {
    int played = games - voided;
    return played > 0 ? 100.0 * focal_wins / played : 0.0;
}
double ExperimentReport::win_pct_black() const {
    return focal_black_games > 0 ? 100.0 * focal_black_wins / focal_black_games : 0.0;
}
double ExperimentReport::win_pct_white() const {
    return focal_white_games > 0 ? 100.0 * focal_white_wins / focal_white_games : 0.0;
}

// Conventional handicap placement: diagonal star points (3-3 on 9x9).
static std::vector<Vertex> default_placements(int size, int stones) {
    int edge = size >= 13 ? 3 : 2;
    std::vector<Vertex> pts;
    pts.push_back(Vertex::point(edge, edge, size));
    pts.push_back(Vertex::point(size - 1 - edge, size - 1 - edge, size));
    if (stones >= 3) pts.push_back(Vertex::point(size - 1 - edge, edge, size));
    if (stones >= 4) pts.push_back(Vertex::point(edge, size - 1 - edge, size));
    pts.resize(std::min<size_t>(pts.size(), stones));
    return pts;
}

Position initial_position(const MatchSpec& spec, Color focal_color) {
    switch (spec.handicap.type) {
        case HandicapType::None:
            return Position(spec.board_size, spec.komi);
        case HandicapType::Score: {
            double komi = focal_color == Color::White
                              ? spec.handicap.reference_komi - spec.handicap.malus
                              : spec.handicap.reference_komi + spec.handicap.malus;
            return Position(spec.board_size, komi);
        }
        case HandicapType::Positional: {
            auto placements = spec.handicap.placements.empty()
                                  ? default_placements(spec.board_size, spec.handicap.stones)
                                  : spec.handicap.placements;
            return Position::with_setup(spec.board_size, spec.handicap.bonus_komi, placements);
        }
    }
    throw std::logic_error("unknown handicap type");
}

namespace {

struct PlayedGame {
    Position final_pos;
    GameResult result;
    bool voided = false;
};

PlayedGame play_one(const Position& start, const Evaluator& black, const Evaluator& white,
                    const SearchConfig& black_cfg, const SearchConfig& white_cfg,
                    uint64_t seed, int max_moves) {
    PlayedGame out{start, {}, false};
    Position pos = start;
    Rng move_rng(derive_seed(seed, 0x6d76));
    int move_number = 0;
    while (!pos.is_terminal() && move_number < max_moves) {
        bool black_turn = pos.to_move() == Color::Black;
        const Evaluator& e = black_turn ? black : white;
        SearchConfig cfg = black_turn ? black_cfg : white_cfg;
        cfg.seed = derive_seed(seed, 100 + move_number);
        SearchReport report = run_search(pos, e, cfg);
        if (should_resign(report, cfg)) {
            out.result.termination = Termination::Resignation;
            out.result.outcome = black_turn ? Outcome::WhiteWin : Outcome::BlackWin;
            out.result.has_margin = false;
            out.final_pos = pos;
            return out;
        }
        pos = pos.play(select_move(report, move_number, cfg, move_rng));
        ++move_number;
    }
    out.final_pos = pos;
    out.result = pos.score_game();
    return out;
}

}  // namespace

ExperimentReport run_match(const MatchSpec& spec) {
    auto eval0 = make_evaluator(spec.engines[0]);
    auto eval1 = make_evaluator(spec.engines[1]);
    const int max_moves = spec.max_moves > 0 ? spec.max_moves
                                             : 6 * spec.board_size * spec.board_size;
    ExperimentReport report;
    report.games = spec.games;
    double winning_score_sum = 0.0;
    int winning_score_count = 0;

    if (!spec.sgf_dir.empty()) std::filesystem::create_directories(spec.sgf_dir);

    for (int i = 0; i < spec.games; ++i) {
        Color focal;
        switch (spec.color_policy) {
            case ColorPolicy::Alternate: focal = i % 2 == 0 ? Color::Black : Color::White; break;
            case ColorPolicy::FocalBlack: focal = Color::Black; break;
            default: focal = Color::White; break;
        }
        GameOutcome outcome;
        outcome.index = i;
        outcome.focal_color = focal;
        Position start = initial_position(spec, focal);
        outcome.komi = start.komi();
        uint64_t game_seed = derive_seed(spec.seed, i);

        const Evaluator& black = focal == Color::Black ? *eval0 : *eval1;
        const Evaluator& white = focal == Color::Black ? *eval1 : *eval0;
        const SearchConfig& bc = focal == Color::Black ? spec.engines[0].search
                                                       : spec.engines[1].search;
        const SearchConfig& wc = focal == Color::Black ? spec.engines[1].search
                                                       : spec.engines[0].search;
        PlayedGame g;
        try {
            g = play_one(start, black, white, bc, wc, game_seed, max_moves);
        } catch (const std::exception&) {
            outcome.voided = true;
            ++report.voided;
            report.outcomes.push_back(outcome);
            continue;
        }

        bool focal_black = focal == Color::Black;
        (focal_black ? report.focal_black_games : report.focal_white_games) += 1;
        outcome.draw = g.result.outcome == Outcome::Draw;
        outcome.focal_won = (g.result.outcome == Outcome::BlackWin && focal_black) ||
                            (g.result.outcome == Outcome::WhiteWin && !focal_black);
        if (outcome.draw) ++report.draws;
        if (outcome.focal_won) {
            ++report.focal_wins;
            (focal_black ? report.focal_black_wins : report.focal_white_wins) += 1;
            // Winning margin: exact when the game ran to double pass, the
            // subtree-median estimate when it ended by resignation.
            double black_score;
            if (g.result.termination == Termination::DoublePass) {
                black_score = g.final_pos.tromp_taylor_score();
            } else {
                const Evaluator& focal_eval = *eval0;
                black_score = estimate_score(g.final_pos, focal_eval, spec.margin_visits,
                                             derive_seed(game_seed, 0x7363));
            }
            double margin = focal_black ? black_score : -black_score;
            outcome.focal_margin = margin;
            winning_score_sum += margin;
            ++winning_score_count;
        }

        std::string result_str = format_result(g.result);
        SgfGame sgf = sgf_from_position(
            g.final_pos,
            focal_black ? spec.engines[0].name : spec.engines[1].name,
            focal_black ? spec.engines[1].name : spec.engines[0].name, result_str);
        outcome.sgf = sgf_write(sgf);
        if (!spec.sgf_dir.empty()) {
            char name[64];
            std::snprintf(name, sizeof name, "game_%04d.sgf", i);
            std::ofstream os(std::filesystem::path(spec.sgf_dir) / name, std::ios::binary);
            os << outcome.sgf;
        }
        report.outcomes.push_back(std::move(outcome));
    }
    if (winning_score_count >= 5) {
        report.avg_winning_score = winning_score_sum / winning_score_count;
    }
    return report;
}

std::vector<ExperimentReport> run_handicap_ladder(const MatchSpec& base,
                                                  const std::vector<double>& malus_sequence) {
    if (malus_sequence.empty()) throw std::invalid_argument("empty malus sequence");
    std::vector<ExperimentReport> out;
    for (size_t i = 0; i < malus_sequence.size(); ++i) {
        MatchSpec spec = base;
        spec.handicap.type = HandicapType::Score;
        spec.handicap.malus = malus_sequence[i];
        spec.seed = derive_seed(base.seed, 0x4c00 + i);
        out.push_back(run_match(spec));
    }
    return out;
}

std::vector<LadderStep> run_adaptive_ladder(const MatchSpec& base, int games) {
    std::vector<LadderStep> steps;
    double malus = 0.0;
    Color focal = base.color_policy == ColorPolicy::FocalBlack ? Color::Black : Color::White;
    for (int i = 0; i < games; ++i) {
        MatchSpec spec = base;
        spec.games = 1;
        spec.handicap.type = HandicapType::Score;
        spec.handicap.malus = malus;
        spec.color_policy = focal == Color::Black ? ColorPolicy::FocalBlack
                                                  : ColorPolicy::FocalWhite;
        spec.seed = derive_seed(base.seed, 0xad00 + i);
        spec.sgf_dir.clear();
        ExperimentReport r = run_match(spec);
        LadderStep step;
        step.malus = malus;
        step.komi = r.outcomes.empty() ? base.komi : r.outcomes[0].komi;
        step.focal_color = focal;
        step.focal_won = r.focal_wins > 0;
        steps.push_back(step);
        if (step.focal_won) {
            malus += 2.0;  // keep colors, raise the bar
        } else {
            focal = opponent(focal);
        }
    }
    return steps;
}

std::string report_csv(const ExperimentReport& report) {
    std::string out = "game,focal_color,komi,void,focal_won,draw,focal_margin\n";
    char buf[160];
    for (const auto& o : report.outcomes) {
        std::snprintf(buf, sizeof buf, "%d,%c,%.1f,%d,%d,%d,", o.index,
                      o.focal_color == Color::Black ? 'B' : 'W', o.komi,
                      o.voided ? 1 : 0, o.focal_won ? 1 : 0, o.draw ? 1 : 0);
        out += buf;
        if (o.focal_margin) {
            std::snprintf(buf, sizeof buf, "%.1f", *o.focal_margin);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace sai

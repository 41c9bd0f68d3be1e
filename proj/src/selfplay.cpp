#include "sai/selfplay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

namespace sai {

namespace {

double round_half_integer(double x) {
    return std::round(x * 2.0) / 2.0;
}

constexpr double kKomiMin = -10.0;
constexpr double kKomiMax = 30.0;

}  // namespace

double sample_komi(const WinrateCurve& c, Rng& rng) {
    double u = uniform01(rng);
    // Quantile of the sigmoid in the fair-komi coordinate.
    double k = (c.params.alpha + c.signed_komi) + logit(u) / c.params.beta;
    return std::clamp(round_half_integer(k), kKomiMin, kKomiMax);
}

std::optional<GameTask> maybe_branch(const Position& s, double alpha_hat, Rng& rng,
                                     int parent_game, int move_index, double branch_prob) {
    if (uniform01(rng) >= branch_prob) return std::nullopt;
    GameTask t;
    t.origin = GameTask::Origin::Branch;
    t.parent_game = parent_game;
    t.move_index = move_index;
    t.opening = s.moves();
    t.board_size = s.size();
    // Komi credited to White that makes s estimated-fair for its mover.
    double komi = s.to_move() == Color::White ? -alpha_hat : alpha_hat;
    t.komi = std::clamp(round_half_integer(komi), kKomiMin, kKomiMax);
    return t;
}

GameRecord play_game(const GameTask& task, const Evaluator& e, const SelfplayConfig& cfg) {
    GameRecord game;
    game.task = task;
    const int n = task.board_size;
    Position pos(n, task.komi);
    for (Vertex m : task.opening) pos = pos.play(m);
    const int max_moves = cfg.max_moves > 0 ? cfg.max_moves : 6 * n * n;

    Rng move_rng(derive_seed(task.seed, 0x6d6f7665));
    int last_blunder = -1;
    bool resigned = false;
    Color resigner = Color::Black;

    while (!pos.is_terminal() && static_cast<int>(pos.moves().size()) < max_moves) {
        int move_number = static_cast<int>(pos.moves().size());
        SearchConfig scfg = cfg.search;
        scfg.resign_threshold = cfg.resign_threshold;
        scfg.seed = derive_seed(task.seed, 1000 + move_number);
        SearchReport report = run_search(pos, e, scfg);
        if (should_resign(report, scfg)) {
            resigned = true;
            resigner = pos.to_move();
            break;
        }

        TrainingRecord rec;
        rec.board_size = n;
        rec.moves = pos.moves();
        rec.komi = task.komi;
        rec.branch_parent = task.parent_game;
        rec.branch_move = task.move_index;
        int total = 0;
        for (int v : report.root_visits) total += v;
        rec.visit_proportions.resize(report.root_visits.size());
        for (size_t i = 0; i < rec.visit_proportions.size(); ++i) {
            rec.visit_proportions[i] = total > 0 ? static_cast<double>(report.root_visits[i]) / total : 0.0;
        }
        game.records.push_back(std::move(rec));
        game.root_alphas.push_back(report.root_params.alpha);

        Vertex move = select_move(report, move_number, scfg, move_rng);
        if (move_number < scfg.randomized_moves && move != report.chosen) {
            double chosen_q = report.root_child_q[move.index(n)];
            double best_q = report.root_child_q[report.chosen.index(n)];
            if (chosen_q >= 0 && best_q >= 0 && best_q - chosen_q > cfg.blunder_delta) {
                last_blunder = static_cast<int>(game.records.size()) - 1;
            }
        }
        pos = pos.play(move);
    }

    game.all_moves = pos.moves();
    if (resigned) {
        game.result.termination = Termination::Resignation;
        game.result.outcome = resigner == Color::Black ? Outcome::WhiteWin : Outcome::BlackWin;
        game.result.has_margin = false;
        if (cfg.score_resigned_games) {
            double est = estimate_score(pos, e, cfg.estimate_visits,
                                        derive_seed(task.seed, 0x73636f72));
            game.score_margin = est;
            game.result.margin = std::abs(est);
            game.result.has_margin = true;
        }
    } else {
        game.result = pos.score_game();
        game.score_margin = pos.tromp_taylor_score();
    }

    // Final outcome from each record's player-to-move perspective; everything
    // at or before the last randomized blunder is excluded from training.
    for (size_t i = 0; i < game.records.size(); ++i) {
        auto& rec = game.records[i];
        // Player to move alternates from Black on the empty board.
        Color player = rec.moves.size() % 2 == 0 ? Color::Black : Color::White;
        switch (game.result.outcome) {
            case Outcome::Draw: rec.z = 0.5; break;
            case Outcome::BlackWin: rec.z = player == Color::Black ? 1.0 : 0.0; break;
            case Outcome::WhiteWin: rec.z = player == Color::White ? 1.0 : 0.0; break;
        }
        if (static_cast<int>(i) <= last_blunder) rec.included = false;
    }
    return game;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string export_chunk(const std::vector<TrainingRecord>& records) {
    std::string out = "SAID1\n";
    for (const auto& r : records) {
        out += std::to_string(r.board_size);
        out += ' ';
        append_double(out, r.komi);
        out += ' ';
        append_double(out, r.z);
        out += ' ';
        out += r.included ? '1' : '0';
        out += ' ';
        out += std::to_string(r.branch_parent);
        out += ' ';
        out += std::to_string(r.branch_move);
        out += " M";
        for (Vertex m : r.moves) {
            out += ' ';
            out += std::to_string(m.index(r.board_size));
        }
        out += " P";
        for (double p : r.visit_proportions) {
            out += ' ';
            append_double(out, p);
        }
        out += '\n';
    }
    return out;
}

std::vector<TrainingRecord> parse_chunk(const std::string& chunk) {
    std::istringstream is(chunk);
    std::string line;
    if (!std::getline(is, line) || line != "SAID1") {
        throw MalformedRecordError("missing SAID1 header");
    }
    std::vector<TrainingRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        TrainingRecord r;
        int included;
        std::string tag;
        if (!(ls >> r.board_size >> r.komi >> r.z >> included >> r.branch_parent >>
              r.branch_move >> tag) || tag != "M") {
            throw MalformedRecordError("bad record line: " + line);
        }
        r.included = included != 0;
        std::string tok;
        while (ls >> tok) {
            if (tok == "P") break;
            r.moves.push_back(Vertex::from_index(std::stoi(tok), r.board_size));
        }
        if (tok != "P") throw MalformedRecordError("missing proportions: " + line);
        double p;
        while (ls >> p) r.visit_proportions.push_back(p);
        if (static_cast<int>(r.visit_proportions.size()) != r.board_size * r.board_size + 1) {
            throw MalformedRecordError("bad proportion count");
        }
        out.push_back(std::move(r));
    }
    return out;
}

GenerationResult run_generation(const Evaluator& e, const GenerationConfig& cfg) {
    GenerationResult result;
    Rng komi_rng(derive_seed(cfg.master_seed, 0x6b6f6d69));
    Rng branch_rng(derive_seed(cfg.master_seed, 0x6272616e));
    std::deque<GameTask> branch_queue;

    Position empty(cfg.board_size, 0.0);
    for (int i = 0; i < cfg.games; ++i) {
        GameTask task;
        bool want_branch = result.branch_count * 2 < result.complete_count;
        if (want_branch && !branch_queue.empty()) {
            task = branch_queue.front();
            branch_queue.pop_front();
            ++result.branch_count;
        } else {
            task.origin = GameTask::Origin::FromEmpty;
            task.board_size = cfg.board_size;
            EvalResult er = e.evaluate(empty);
            WinrateCurve curve{er.params, 0.0};
            task.komi = sample_komi(curve, komi_rng);
            ++result.complete_count;
        }
        task.seed = derive_seed(cfg.master_seed, i);
        GameRecord game = play_game(task, e, cfg.selfplay);

        // Harvest branch candidates from this game's trainable positions.
        Position pos(cfg.board_size, task.komi);
        for (Vertex m : task.opening) pos = pos.play(m);
        for (size_t r = 0; r < game.records.size(); ++r) {
            if (game.records[r].included) {
                auto branch = maybe_branch(pos, game.root_alphas[r], branch_rng, i,
                                           static_cast<int>(game.records[r].moves.size()),
                                           cfg.branch_prob);
                if (branch) branch_queue.push_back(*branch);
            }
            if (game.records[r].moves.size() < game.all_moves.size()) {
                pos = pos.play(game.all_moves[game.records[r].moves.size()]);
            }
        }
        result.games.push_back(std::move(game));
    }
    return result;
}

}  // namespace sai

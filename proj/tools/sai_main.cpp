#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sai/gtp.hpp"
#include "sai/match.hpp"
#include "sai/rating.hpp"
#include "sai/selfplay.hpp"

namespace {

struct EngineFlags {
    std::string evaluator = "territory";
    std::string weights;
    int visits = 200;
    double lambda = 0.0;
    double mu = 0.0;
    double threshold = 0.0;
    double territory_beta = 1.0;
    double noise_sigma = 0.0;
};

void add_engine_flags(CLI::App* app, EngineFlags& f, const std::string& prefix) {
    app->add_option("--" + prefix + "evaluator", f.evaluator,
                    "evaluator: net|uniform-random|territory|oracle");
    app->add_option("--" + prefix + "weights", f.weights, "weight file (net evaluator)");
    app->add_option("--" + prefix + "visits", f.visits, "search visits per move");
    app->add_option("--" + prefix + "lambda", f.lambda, "agent lambda");
    app->add_option("--" + prefix + "mu", f.mu, "agent mu");
    app->add_option("--" + prefix + "threshold", f.threshold, "agent activation threshold");
    app->add_option("--" + prefix + "territory-beta", f.territory_beta,
                    "beta of the territory evaluator");
    app->add_option("--" + prefix + "noise-sigma", f.noise_sigma,
                    "alpha noise of the territory evaluator");
}

sai::EngineSpec to_spec(const EngineFlags& f, const std::string& name, uint64_t seed) {
    sai::EngineSpec spec;
    spec.name = name;
    spec.evaluator = f.evaluator;
    spec.weights_path = f.weights;
    spec.synthetic.seed = seed;
    spec.synthetic.territory_beta = f.territory_beta;
    spec.synthetic.noise_sigma = f.noise_sigma;
    spec.search.visits = f.visits;
    spec.search.agent.lambda = f.lambda;
    spec.search.agent.mu = f.mu;
    spec.search.agent.activation_threshold = f.threshold;
    spec.search.seed = seed;
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

void write_manifest(const std::string& dir, const std::string& text) {
    std::filesystem::create_directories(dir);
    write_file((std::filesystem::path(dir) / "manifest.txt").string(), text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAI engine harness"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    double komi = 7.5;
    int board_size = 9;
    double resign_threshold = 0.05;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--komi", komi, "komi")->capture_default_str();
    app.add_option("--board-size", board_size, "board size")->capture_default_str();
    app.add_option("--resign-threshold", resign_threshold, "resignation winrate threshold");

    EngineFlags engine;

    auto* gtp = app.add_subcommand("gtp", "serve GTP on stdin/stdout");
    add_engine_flags(gtp, engine, "");

    auto* selfplay = app.add_subcommand("selfplay", "generate self-play games and chunks");
    int games = 6;
    std::string out_path, sgf_dir;
    add_engine_flags(selfplay, engine, "");
    selfplay->add_option("--games", games, "games to generate")->capture_default_str();
    selfplay->add_option("--out", out_path, "chunk output file");
    selfplay->add_option("--sgf-dir", sgf_dir, "write one SGF per game here");

    auto* match = app.add_subcommand("match", "play a match between two engines");
    EngineFlags opp;
    std::string color_policy = "alternate";
    double malus = 0.0, reference_komi = 7.5, bonus_komi = 0.5;
    int handicap_stones = 0;
    std::string csv_path;
    add_engine_flags(match, engine, "");
    add_engine_flags(match, opp, "opp-");
    match->add_option("--games", games, "number of games")->capture_default_str();
    match->add_option("--color", color_policy, "focal color: alternate|black|white");
    match->add_option("--malus", malus, "score handicap malus for the focal engine");
    match->add_option("--reference-komi", reference_komi, "komi the malus is relative to");
    match->add_option("--handicap-stones", handicap_stones,
                      "positional handicap stones (focal plays white)");
    match->add_option("--bonus-komi", bonus_komi, "komi used with positional handicap");
    match->add_option("--sgf-dir", sgf_dir, "write SGFs and manifest here");
    match->add_option("--csv", csv_path, "write per-game CSV summary");

    auto* ladder = app.add_subcommand("ladder", "handicap ladder");
    std::vector<double> malus_seq;
    int adaptive_games = 0;
    add_engine_flags(ladder, engine, "");
    add_engine_flags(ladder, opp, "opp-");
    ladder->add_option("--games", games, "games per rung (fixed mode)");
    ladder->add_option("--malus-seq", malus_seq, "fixed ladder malus values");
    ladder->add_option("--adaptive", adaptive_games, "adaptive mode: total games");
    ladder->add_option("--reference-komi", reference_komi, "komi the malus is relative to");
    ladder->add_option("--color", color_policy, "focal color: alternate|black|white");

    auto* rate = app.add_subcommand("rate", "fit Elo ratings from a match CSV");
    std::string rate_input, rate_anchor, rate_out;
    rate->add_option("--input", rate_input, "match CSV file")->required();
    rate->add_option("--anchor", rate_anchor, "anchor player (rating 0)");
    rate->add_option("--out", rate_out, "rating report CSV file");

    auto* score = app.add_subcommand("score", "estimate the score of an SGF position");
    std::string sgf_path;
    add_engine_flags(score, engine, "");
    score->add_option("--sgf", sgf_path, "SGF file")->required();

    auto* sgf_cmd = app.add_subcommand("sgf", "validate and round-trip an SGF file");
    sgf_cmd->add_option("--file", sgf_path, "SGF file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (gtp->parsed()) {
            sai::EngineSpec spec = to_spec(engine, "sai", seed);
            spec.search.resign_threshold = resign_threshold;
            sai::GtpSession session(std::move(spec));
            session.run(std::cin, std::cout);
            return 0;
        }
        if (selfplay->parsed()) {
            sai::EngineSpec spec = to_spec(engine, "sai", seed);
            auto evaluator = sai::make_evaluator(spec);
            sai::GenerationConfig cfg;
            cfg.games = games;
            cfg.board_size = board_size;
            cfg.master_seed = seed;
            cfg.selfplay.search = spec.search;
            cfg.selfplay.resign_threshold = resign_threshold;
            sai::GenerationResult result = sai::run_generation(*evaluator, cfg);
            std::vector<sai::TrainingRecord> records;
            for (const auto& g : result.games) {
                records.insert(records.end(), g.records.begin(), g.records.end());
            }
            std::string chunk = sai::export_chunk(records);
            if (!out_path.empty()) write_file(out_path, chunk);
            else std::cout << chunk;
            if (!sgf_dir.empty()) {
                std::filesystem::create_directories(sgf_dir);
                for (size_t i = 0; i < result.games.size(); ++i) {
                    const auto& g = result.games[i];
                    sai::Position pos(cfg.board_size, g.task.komi);
                    for (sai::Vertex m : g.all_moves) pos = pos.play(m);
                    auto sgf = sai::sgf_from_position(pos, "sai", "sai",
                                                      sai::format_result(g.result));
                    char name[64];
                    std::snprintf(name, sizeof name, "game_%04zu.sgf", i);
                    write_file((std::filesystem::path(sgf_dir) / name).string(),
                               sai::sgf_write(sgf));
                }
                std::ostringstream manifest;
                manifest << "mode selfplay\nseed " << seed << "\ngames " << games
                         << "\nboard_size " << board_size << "\nevaluator "
                         << engine.evaluator << "\nvisits " << engine.visits << "\n";
                write_manifest(sgf_dir, manifest.str());
            }
            std::cerr << "complete " << result.complete_count << " branch "
                      << result.branch_count << " records " << records.size() << "\n";
            return 0;
        }
        if (match->parsed() || ladder->parsed()) {
            sai::MatchSpec spec;
            spec.engines[0] = to_spec(engine, "focal", sai::derive_seed(seed, 1));
            spec.engines[1] = to_spec(opp, "opponent", sai::derive_seed(seed, 2));
            spec.engines[0].search.resign_threshold = resign_threshold;
            spec.engines[1].search.resign_threshold = resign_threshold;
            spec.games = games;
            spec.board_size = board_size;
            spec.komi = komi;
            spec.seed = seed;
            spec.sgf_dir = sgf_dir;
            if (color_policy == "black") spec.color_policy = sai::ColorPolicy::FocalBlack;
            else if (color_policy == "white") spec.color_policy = sai::ColorPolicy::FocalWhite;

            if (ladder->parsed()) {
                spec.handicap.reference_komi = reference_komi;
                if (adaptive_games > 0) {
                    auto steps = sai::run_adaptive_ladder(spec, adaptive_games);
                    std::cout << "malus,komi,focal_color,focal_won\n";
                    for (const auto& s : steps) {
                        std::cout << s.malus << "," << s.komi << ","
                                  << (s.focal_color == sai::Color::Black ? 'B' : 'W') << ","
                                  << (s.focal_won ? 1 : 0) << "\n";
                    }
                } else {
                    auto reports = sai::run_handicap_ladder(spec, malus_seq);
                    std::cout << "malus,games,win_pct,win_pct_black,win_pct_white\n";
                    for (size_t i = 0; i < reports.size(); ++i) {
                        std::cout << malus_seq[i] << "," << reports[i].games << ","
                                  << reports[i].win_pct() << "," << reports[i].win_pct_black()
                                  << "," << reports[i].win_pct_white() << "\n";
                    }
                }
                return 0;
            }

            if (handicap_stones > 0) {
                spec.handicap.type = sai::HandicapType::Positional;
                spec.handicap.stones = handicap_stones;
                spec.handicap.bonus_komi = bonus_komi;
                spec.color_policy = sai::ColorPolicy::FocalWhite;
            } else if (malus != 0.0) {
                spec.handicap.type = sai::HandicapType::Score;
                spec.handicap.malus = malus;
                spec.handicap.reference_komi = reference_komi;
            }
            sai::ExperimentReport report = sai::run_match(spec);
            if (!csv_path.empty()) write_file(csv_path, sai::report_csv(report));
            if (!sgf_dir.empty()) {
                std::ostringstream manifest;
                manifest << "mode match\nseed " << seed << "\ngames " << games
                         << "\nboard_size " << board_size << "\nkomi " << komi
                         << "\nfocal " << engine.evaluator << " visits " << engine.visits
                         << " lambda " << engine.lambda << " mu " << engine.mu
                         << " threshold " << engine.threshold << "\nopponent "
                         << opp.evaluator << " visits " << opp.visits << "\n";
                write_manifest(sgf_dir, manifest.str());
            }
            std::cout << "games " << report.games << " void " << report.voided
                      << " focal_wins " << report.focal_wins << " win_pct "
                      << report.win_pct() << " (B " << report.win_pct_black() << " / W "
                      << report.win_pct_white() << ")";
            if (report.avg_winning_score) {
                std::cout << " avg_winning_score " << *report.avg_winning_score;
            }
            std::cout << "\n";
            return 0;
        }
        if (rate->parsed()) {
            sai::MatchSet ms = sai::load_match_csv(read_file(rate_input));
            int anchor = 0;
            if (!rate_anchor.empty()) {
                auto it = std::find(ms.players.begin(), ms.players.end(), rate_anchor);
                if (it == ms.players.end()) throw std::runtime_error("unknown anchor player");
                anchor = static_cast<int>(it - ms.players.begin());
            }
            sai::RatingVector rv = sai::fit(ms, anchor);
            std::string report = sai::rating_report_csv(ms, rv);
            if (!rate_out.empty()) write_file(rate_out, report);
            std::cout << report;
            if (!rv.converged) std::cerr << "warning: fit did not converge\n";
            return 0;
        }
        if (score->parsed()) {
            sai::SgfGame g = sai::sgf_parse(read_file(sgf_path));
            sai::Position pos = sai::sgf_replay(g);
            sai::EngineSpec spec = to_spec(engine, "sai", seed);
            auto evaluator = sai::make_evaluator(spec);
            double est = sai::estimate_score(pos, *evaluator, engine.visits, seed);
            std::printf("%.1f\n", est);
            return 0;
        }
        if (sgf_cmd->parsed()) {
            std::string text = read_file(sgf_path);
            sai::SgfGame g = sai::sgf_parse(text);
            sai::sgf_replay(g);
            std::string rewritten = sai::sgf_write(g);
            sai::SgfGame again = sai::sgf_parse(rewritten);
            if (sai::sgf_write(again) != rewritten) {
                throw std::runtime_error("round-trip mismatch");
            }
            std::cout << "ok\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

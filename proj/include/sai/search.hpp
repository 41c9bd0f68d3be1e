#pragma once

#include <memory>
#include <vector>

#include "sai/board.hpp"
#include "sai/evaluator.hpp"
#include "sai/random.hpp"
#include "sai/value_model.hpp"

namespace sai {

struct SearchConfig {
    int visits = 200;
    double c_puct = 0.8;
    AgentConfig agent;
    double resign_threshold = 0.0;       // in [0, 0.5); 0 disables resignation
    double root_move_visit_cap = 1.0;    // fraction of total visits per root child
    double temperature = 1.0;            // used for the first randomized_moves moves
    int randomized_moves = 25;
    bool randomize_symmetry = false;
    uint64_t seed = 0;
};

struct SearchNode {
    Vertex move;
    double prior = 0.0;
    int visits = 0;
    double value_sum = 0.0;  // from this node's current-player perspective
    bool expanded = false;
    bool terminal = false;
    double terminal_value = 0.0;  // current-player perspective, {0, 0.5, 1}
    SigmoidParams eval_params;    // valid once expanded and not terminal
    bool has_eval = false;
    std::vector<std::unique_ptr<SearchNode>> children;

    double q() const { return visits > 0 ? value_sum / visits : 0.5; }
};

struct SearchReport {
    Vertex chosen;                      // argmax-visit move
    std::vector<int> root_visits;       // per policy index, N*N+1 entries
    std::vector<double> root_child_q;   // root-player perspective; -1 if unvisited
    double root_winrate = 0.5;          // rho_hat(0), agent-unadjusted
    SigmoidParams root_params;
    double root_value = 0.5;            // agent-adjusted subtree average
    bool agent_active = false;
    BonusInterval interval;
    std::vector<Vertex> principal_variation;
};

class Search {
public:
    Search(const Evaluator& evaluator, SearchConfig cfg);

    SearchReport run(const Position& p);

    // Root of the last finished search; for tests and the score estimator.
    const SearchNode* root() const { return root_.get(); }
    // Black-perspective predicted score of the node each playout ended at,
    // one sample per playout; terminal playouts contribute the exact score.
    const std::vector<double>& node_scores() const { return node_scores_; }

private:
    double expand(SearchNode& node, const Position& pos, bool matches_root);
    SearchNode* select_child(SearchNode& node, bool at_root);

    const Evaluator& evaluator_;
    SearchConfig cfg_;
    std::unique_ptr<SearchNode> root_;
    BonusInterval interval_;
    bool agent_active_ = false;
    Rng rng_{0};
    std::vector<double> node_scores_;
};

SearchReport run_search(const Position& p, const Evaluator& e, const SearchConfig& cfg);

// Move selection with temperature for the opening, argmax visits afterwards.
// Ties break toward the lowest vertex index.
Vertex select_move(const SearchReport& report, int move_number, const SearchConfig& cfg,
                   Rng& rng);

bool should_resign(const SearchReport& report, const SearchConfig& cfg);

// Subtree-median score estimate, Black perspective, rounded to the komi
// parity grid.
double estimate_score(const Position& p, const Evaluator& e, int visits = 1000,
                      uint64_t seed = 0);

// Rounds a Black-perspective score onto the grid of achievable scores for
// this komi (integers minus komi); half-way ties go toward zero.
double round_to_score_grid(double score, double komi);

}  // namespace sai

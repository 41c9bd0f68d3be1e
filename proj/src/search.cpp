#include "sai/search.hpp"

#include <algorithm>
#include <cmath>

namespace sai {

namespace {
constexpr double kFpuReduction = 0.1;
constexpr double kArgmaxTemperature = 1e-3;
}

Search::Search(const Evaluator& evaluator, SearchConfig cfg)
    : evaluator_(evaluator), cfg_(cfg) {
    validate(cfg_.agent);
    if (cfg_.visits < 1) throw std::invalid_argument("visits must be >= 1");
    if (cfg_.root_move_visit_cap <= 0 || cfg_.root_move_visit_cap > 1) {
        throw std::invalid_argument("root_move_visit_cap must be in (0,1]");
    }
    if (cfg_.resign_threshold < 0 || cfg_.resign_threshold >= 0.5) {
        throw std::invalid_argument("resign_threshold must be in [0,0.5)");
    }
}

// Expands a leaf and returns its value from the leaf's own perspective.
// `matches_root` tells whether the leaf's player equals the root player.
double Search::expand(SearchNode& node, const Position& pos, bool matches_root) {
    node.expanded = true;
    if (pos.is_terminal() && &node != root_.get()) {
        node.terminal = true;
        double s = pos.tromp_taylor_score();
        node_scores_.push_back(s);
        double cur = pos.to_move() == Color::Black ? s : -s;
        node.terminal_value = cur > 0 ? 1.0 : (cur < 0 ? 0.0 : 0.5);
        return node.terminal_value;
    }
    int sym = 0;
    if (cfg_.randomize_symmetry) sym = static_cast<int>(rng_() & 7);
    EvalResult er = evaluator_.evaluate(pos, sym);
    node.eval_params = er.params;
    node.has_eval = true;

    WinrateCurve curve{er.params, pos.signed_komi()};
    double cur_score = er.params.alpha + pos.signed_komi();
    node_scores_.push_back(pos.to_move() == Color::Black ? cur_score : -cur_score);

    double v;
    if (agent_active_) {
        // value_nu yields the interval owner's (root player's) perspective.
        double v_root = value_nu(curve, interval_, matches_root);
        v = matches_root ? v_root : 1.0 - v_root;
    } else {
        v = winrate(curve, 0.0);
    }

    double prior_sum = 0.0;
    std::vector<std::pair<Vertex, double>> moves;
    for (Vertex m : pos.legal_moves()) {
        double p = er.policy[m.index(pos.size())];
        moves.emplace_back(m, p);
        prior_sum += p;
    }
    node.children.reserve(moves.size());
    for (auto& [m, p] : moves) {
        auto child = std::make_unique<SearchNode>();
        child->move = m;
        child->prior = prior_sum > 0 ? p / prior_sum : 1.0 / moves.size();
        node.children.push_back(std::move(child));
    }
    return v;
}

SearchNode* Search::select_child(SearchNode& node, bool at_root) {
    const double cap = cfg_.root_move_visit_cap * cfg_.visits;
    const bool apply_cap = at_root && cfg_.root_move_visit_cap < 1.0;
    const double sqrt_n = std::sqrt(static_cast<double>(node.visits));
    const double fpu = std::clamp(node.q() - kFpuReduction, 0.0, 1.0);
    SearchNode* best = nullptr;
    SearchNode* best_uncapped = nullptr;
    double best_score = -1e100, best_uncapped_score = -1e100;
    for (auto& child : node.children) {
        double q = child->visits > 0 ? 1.0 - child->q() : fpu;
        double score = q + cfg_.c_puct * child->prior * sqrt_n / (1.0 + child->visits);
        if (score > best_uncapped_score) {
            best_uncapped_score = score;
            best_uncapped = child.get();
        }
        if (apply_cap && child->visits >= cap) continue;
        if (score > best_score) {
            best_score = score;
            best = child.get();
        }
    }
    return best ? best : best_uncapped;
}

SearchReport Search::run(const Position& p) {
    rng_.seed(cfg_.seed);
    node_scores_.clear();
    root_ = std::make_unique<SearchNode>();
    interval_ = BonusInterval{};
    agent_active_ = false;

    // Root evaluation fixes the winrate, the agent activation and the bonus
    // interval for the whole search.
    int sym = cfg_.randomize_symmetry ? static_cast<int>(rng_() & 7) : 0;
    EvalResult root_eval = evaluator_.evaluate(p, sym);
    WinrateCurve root_curve{root_eval.params, p.signed_komi()};
    double root_winrate = winrate(root_curve, 0.0);

    AgentConfig agent = cfg_.agent;
    if (agent.activation_threshold > 0 && root_winrate <= agent.activation_threshold) {
        agent.lambda = agent.mu = 0.0;
    }
    agent_active_ = agent.lambda > 0 || agent.mu > 0;
    if (agent_active_) interval_ = make_interval(root_curve, agent);

    std::vector<SearchNode*> path;
    for (int playout = 0; playout < cfg_.visits; ++playout) {
        path.clear();
        SearchNode* node = root_.get();
        Position pos = p;
        bool matches_root = true;
        path.push_back(node);
        while (node->expanded && !node->terminal) {
            SearchNode* child = select_child(*node, node == root_.get());
            pos = pos.play(child->move);
            node = child;
            matches_root = !matches_root;
            path.push_back(node);
        }
        double v;
        if (node->terminal) {
            // Repeat terminal visit: one exact score sample per playout.
            node_scores_.push_back(pos.tromp_taylor_score());
            v = node->terminal_value;
        } else {
            v = expand(*node, pos, matches_root);
        }
        // Back up, flipping to each ancestor's perspective.
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            (*it)->visits += 1;
            (*it)->value_sum += v;
            v = 1.0 - v;
        }
    }

    SearchReport report;
    report.root_winrate = root_winrate;
    report.root_params = root_eval.params;
    report.root_value = root_->q();
    report.agent_active = agent_active_;
    report.interval = interval_;
    report.root_visits.assign(p.size() * p.size() + 1, 0);
    report.root_child_q.assign(p.size() * p.size() + 1, -1.0);
    int best_visits = -1;
    int best_index = 0;
    for (const auto& child : root_->children) {
        int idx = child->move.index(p.size());
        report.root_visits[idx] = child->visits;
        if (child->visits > 0) report.root_child_q[idx] = 1.0 - child->q();
        if (child->visits > best_visits || (child->visits == best_visits && idx < best_index)) {
            best_visits = child->visits;
            best_index = idx;
            report.chosen = child->move;
        }
    }
    // Principal variation: argmax visits at every level.
    const SearchNode* node = root_.get();
    while (node && !node->children.empty()) {
        const SearchNode* best = nullptr;
        int bv = -1, bi = 0;
        for (const auto& child : node->children) {
            int idx = child->move.index(p.size());
            if (child->visits > bv || (child->visits == bv && idx < bi)) {
                bv = child->visits;
                bi = idx;
                best = child.get();
            }
        }
        if (!best || best->visits == 0) break;
        report.principal_variation.push_back(best->move);
        node = best;
    }
    return report;
}

SearchReport run_search(const Position& p, const Evaluator& e, const SearchConfig& cfg) {
    Search s(e, cfg);
    return s.run(p);
}

Vertex select_move(const SearchReport& report, int move_number, const SearchConfig& cfg,
                   Rng& rng) {
    const int n = static_cast<int>(report.root_visits.size());
    const int size = static_cast<int>(std::lround(std::sqrt(n - 1)));
    if (move_number >= cfg.randomized_moves || cfg.temperature < kArgmaxTemperature) {
        return report.chosen;
    }
    std::vector<double> weights(n, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (report.root_visits[i] > 0) {
            weights[i] = std::pow(static_cast<double>(report.root_visits[i]),
                                  1.0 / cfg.temperature);
            total += weights[i];
        }
    }
    if (total <= 0) return report.chosen;
    double u = uniform01(rng) * total;
    for (int i = 0; i < n; ++i) {
        u -= weights[i];
        if (u <= 0 && weights[i] > 0) return Vertex::from_index(i, size);
    }
    return report.chosen;
}

bool should_resign(const SearchReport& report, const SearchConfig& cfg) {
    return report.root_winrate < cfg.resign_threshold;
}

double round_to_score_grid(double score, double komi) {
    double t = score + komi;  // board-point coordinate, integer grid
    double m = t > 0 ? std::ceil(t - 0.5) : std::floor(t + 0.5);
    return m - komi;
}

double estimate_score(const Position& p, const Evaluator& e, int visits, uint64_t seed) {
    SearchConfig cfg;
    cfg.visits = visits;
    cfg.seed = seed;
    Search s(e, cfg);
    s.run(p);
    std::vector<double> scores = s.node_scores();
    if (scores.empty()) return round_to_score_grid(p.tromp_taylor_score(), p.komi());
    std::sort(scores.begin(), scores.end());
    size_t n = scores.size();
    double median = (n % 2 == 1) ? scores[n / 2]
                                 : 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
    return round_to_score_grid(median, p.komi());
}

}  // namespace sai

#include <cmath>
#include <mutex>

#include "sai/evaluator.hpp"
#include "sai/random.hpp"

namespace sai {

namespace {

uint64_t position_key(const Position& p) {
    return mix64(p.board_hash() ^ (p.to_move() == Color::White ? 0x9e3779b9ULL : 0) ^
                 (static_cast<uint64_t>(p.history_size()) << 32));
}

EvalResult uniform_random_eval(const Position& p, const SyntheticOptions& opts) {
    const int n = p.size() * p.size();
    Rng rng(derive_seed(opts.seed, position_key(p)));
    EvalResult r;
    r.policy.resize(n + 1);
    double sum = 0;
    for (auto& w : r.policy) {
        w = uniform01(rng);
        sum += w;
    }
    for (auto& w : r.policy) w /= sum;
    r.params.alpha = (uniform01(rng) - 0.5) * 2.0 * p.size();
    r.params.beta = 1.0;
    return r;
}

EvalResult territory_eval(const Position& p, const SyntheticOptions& opts) {
    const int n = p.size() * p.size();
    EvalResult r;
    r.policy.assign(n + 1, 0.0);
    int legal = 0;
    for (int v = 0; v <= n; ++v) {
        if (v == n || p.is_legal(Vertex::from_index(v, p.size()))) {
            r.policy[v] = 1.0;
            ++legal;
        }
    }
    for (auto& w : r.policy) w /= legal;
    int lead = p.area_lead();
    double alpha = p.to_move() == Color::Black ? lead : -lead;
    if (opts.noise_sigma > 0) {
        Rng rng(derive_seed(opts.seed, position_key(p)));
        std::normal_distribution<double> noise(0.0, opts.noise_sigma);
        alpha += noise(rng);
    }
    r.params.alpha = alpha;
    r.params.beta = opts.territory_beta;
    return r;
}

EvalResult oracle_eval(const Position& p, ScoreSolver& solver) {
    const int n = p.size() * p.size();
    EvalResult r;
    r.policy.assign(n + 1, 0.0);
    auto best = solver.optimal_moves(p);
    for (Vertex v : best) r.policy[v.index(p.size())] = 1.0 / best.size();
    int lead = solver.best_lead(p);
    r.params.alpha = static_cast<double>(lead);
    r.params.beta = 20.0;
    return r;
}

ScoreSolver& shared_solver(int size) {
    static std::mutex mu;
    static std::shared_ptr<ScoreSolver> solvers[5];
    std::lock_guard<std::mutex> lock(mu);
    if (!solvers[size]) solvers[size] = std::make_shared<ScoreSolver>(size);
    return *solvers[size];
}

}  // namespace

EvalResult synthetic_evaluate(const Position& p, SyntheticStyle style,
                              const SyntheticOptions& opts) {
    switch (style) {
        case SyntheticStyle::UniformRandom: return uniform_random_eval(p, opts);
        case SyntheticStyle::Territory: return territory_eval(p, opts);
        case SyntheticStyle::Oracle:
            if (p.size() > 4) {
                throw OracleTooLargeError("oracle evaluator limited to 4x4 boards");
            }
            return oracle_eval(p, shared_solver(p.size()));
    }
    throw std::logic_error("unknown style");
}

EvalResult SyntheticEvaluator::evaluate(const Position& p, int) const {
    // Symmetry randomization only applies to network inference.
    if (style_ == SyntheticStyle::Oracle) {
        if (p.size() > 4) {
            throw OracleTooLargeError("oracle evaluator limited to 4x4 boards");
        }
        if (!solver_) solver_ = std::make_shared<ScoreSolver>(p.size());
        return oracle_eval(p, *solver_);
    }
    return synthetic_evaluate(p, style_, opts_);
}

}  // namespace sai

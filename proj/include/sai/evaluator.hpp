#pragma once

#include <memory>
#include <vector>

#include "sai/board.hpp"
#include "sai/oracle.hpp"
#include "sai/value_model.hpp"

namespace sai {

// Policy over N*N+1 moves (pass last) plus the sigmoid parameters.
struct EvalResult {
    std::vector<double> policy;
    SigmoidParams params;
};

// 17 binary planes: one constant-ones plane, then for each of the last 4
// positions (newest first): current-player stones, opponent stones, illegal
// moves, last-liberty points. No color-to-move plane.
struct FeatureTensor {
    int size = 0;
    std::vector<float> data;  // 17 * size * size, plane-major

    float* plane(int i) { return data.data() + i * size * size; }
    const float* plane(int i) const { return data.data() + i * size * size; }
};

constexpr int kFeaturePlanes = 17;
constexpr int kHistoryPlanes = 4;

FeatureTensor extract_features(const Position& p);

// Dihedral-8 board symmetries. Index 0 is the identity.
int transform_vertex_index(int idx, int size, int sym);
int inverse_symmetry(int sym);
FeatureTensor transform_features(const FeatureTensor& f, int sym);

class Evaluator {
public:
    virtual ~Evaluator() = default;
    // Deterministic per (position, evaluator state, symmetry).
    virtual EvalResult evaluate(const Position& p, int symmetry = 0) const = 0;
};

// Training loss: l2 + cross-entropy(visits, policy) + (z - rho(0))^2.
double loss(double result_z, const std::vector<double>& visit_proportions,
            const EvalResult& eval, double signed_komi, double l2_term);

struct LossGradients {
    double d_alpha = 0;
    double d_beta = 0;
    std::vector<double> d_policy_logits;  // gradient w.r.t. softmax inputs
};
LossGradients loss_gradients(double result_z, const std::vector<double>& visit_proportions,
                             const EvalResult& eval, double signed_komi);

enum class SyntheticStyle { UniformRandom, Territory, Oracle };

struct SyntheticOptions {
    uint64_t seed = 0;
    double territory_beta = 1.0;
    double noise_sigma = 0.0;  // gaussian noise on alpha (territory style)
};

EvalResult synthetic_evaluate(const Position& p, SyntheticStyle style,
                              const SyntheticOptions& opts = {});

class SyntheticEvaluator : public Evaluator {
public:
    SyntheticEvaluator(SyntheticStyle style, SyntheticOptions opts = {})
        : style_(style), opts_(opts) {}
    EvalResult evaluate(const Position& p, int symmetry = 0) const override;

private:
    SyntheticStyle style_;
    SyntheticOptions opts_;
    mutable std::shared_ptr<ScoreSolver> solver_;  // oracle style, lazily built
};

}  // namespace sai

#include <algorithm>
#include <cmath>

#include "sai/evaluator.hpp"

namespace sai {

namespace {

// Marks every empty point that is the sole remaining liberty of at least one
// group of either color.
void fill_last_liberties(const std::vector<int8_t>& board, int size, float* out) {
    const int n = size * size;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (board[i] == 0 || seen[i]) continue;
        int8_t color = board[i];
        std::vector<int> stack{i};
        seen[i] = true;
        int lib = -1, lib_count = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            int x = v % size, y = v / size;
            const int nx[4] = {x - 1, x + 1, x, x};
            const int ny[4] = {y, y, y - 1, y + 1};
            for (int d = 0; d < 4; ++d) {
                if (nx[d] < 0 || ny[d] < 0 || nx[d] >= size || ny[d] >= size) continue;
                int w = ny[d] * size + nx[d];
                if (board[w] == 0) {
                    if (w != lib) {
                        if (lib == -1) { lib = w; lib_count = 1; }
                        else lib_count = 2;
                    }
                } else if (board[w] == color && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        if (lib_count == 1) out[lib] = 1.0f;
    }
}

}  // namespace

FeatureTensor extract_features(const Position& p) {
    const int size = p.size();
    const int n = size * size;
    FeatureTensor f;
    f.size = size;
    f.data.assign(kFeaturePlanes * n, 0.0f);
    std::fill(f.plane(0), f.plane(0) + n, 1.0f);

    const Color cur = p.to_move();
    const int8_t cur8 = static_cast<int8_t>(cur);
    const int8_t opp8 = static_cast<int8_t>(opponent(cur));
    const size_t hist = p.history_size();
    for (int t = 0; t < kHistoryPlanes; ++t) {
        size_t h = hist > static_cast<size_t>(t) ? hist - 1 - t : 0;
        const auto& board = p.board_at(h);
        float* own = f.plane(1 + 4 * t);
        float* opp = f.plane(2 + 4 * t);
        float* illegal = f.plane(3 + 4 * t);
        float* last_lib = f.plane(4 + 4 * t);
        for (int v = 0; v < n; ++v) {
            if (board[v] == cur8) own[v] = 1.0f;
            else if (board[v] == opp8) opp[v] = 1.0f;
        }
        auto legal = p.legal_map_at(h);
        for (int v = 0; v < n; ++v) {
            if (!legal[v]) illegal[v] = 1.0f;
        }
        fill_last_liberties(board, size, last_lib);
    }
    return f;
}

// Symmetry index encodes three bit flags: 1 = mirror x, 2 = mirror y,
// 4 = transpose (applied last).
int transform_vertex_index(int idx, int size, int sym) {
    if (idx == size * size) return idx;  // pass
    int x = idx % size, y = idx / size;
    if (sym & 1) x = size - 1 - x;
    if (sym & 2) y = size - 1 - y;
    if (sym & 4) std::swap(x, y);
    return y * size + x;
}

int inverse_symmetry(int sym) {
    // Mirrors are involutions; with transpose applied last, the inverse swaps
    // the roles of the two mirror bits.
    if (sym & 4) return 4 | ((sym & 1) << 1) | ((sym & 2) >> 1);
    return sym;
}

FeatureTensor transform_features(const FeatureTensor& f, int sym) {
    if (sym == 0) return f;
    FeatureTensor out;
    out.size = f.size;
    out.data.assign(f.data.size(), 0.0f);
    const int n = f.size * f.size;
    for (int plane = 0; plane < kFeaturePlanes; ++plane) {
        const float* src = f.plane(plane);
        float* dst = out.plane(plane);
        for (int v = 0; v < n; ++v) dst[transform_vertex_index(v, f.size, sym)] = src[v];
    }
    return out;
}

double loss(double result_z, const std::vector<double>& visit_proportions,
            const EvalResult& eval, double signed_komi, double l2_term) {
    double ce = 0.0;
    for (size_t i = 0; i < visit_proportions.size(); ++i) {
        if (visit_proportions[i] > 0) {
            ce -= visit_proportions[i] * std::log(eval.policy[i]);
        }
    }
    WinrateCurve c{eval.params, signed_komi};
    double rho0 = winrate(c, 0.0);
    double diff = result_z - rho0;
    return l2_term + ce + diff * diff;
}

LossGradients loss_gradients(double result_z, const std::vector<double>& visit_proportions,
                             const EvalResult& eval, double signed_komi) {
    LossGradients g;
    WinrateCurve c{eval.params, signed_komi};
    double rho0 = winrate(c, 0.0);
    double common = 2.0 * (rho0 - result_z) * rho0 * (1.0 - rho0);
    g.d_alpha = common * eval.params.beta;
    g.d_beta = common * (eval.params.alpha + signed_komi);
    g.d_policy_logits.resize(eval.policy.size());
    for (size_t i = 0; i < eval.policy.size(); ++i) {
        g.d_policy_logits[i] = eval.policy[i] - visit_proportions[i];
    }
    return g;
}

}  // namespace sai

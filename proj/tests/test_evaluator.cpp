#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sai/evaluator.hpp"
#include "sai/random.hpp"

using namespace sai;

namespace {

EvalResult eval_from_logits(const std::vector<double>& logits, SigmoidParams params) {
    EvalResult r;
    r.params = params;
    double maxl = *std::max_element(logits.begin(), logits.end());
    double sum = 0;
    r.policy.resize(logits.size());
    for (size_t i = 0; i < logits.size(); ++i) {
        r.policy[i] = std::exp(logits[i] - maxl);
        sum += r.policy[i];
    }
    for (auto& p : r.policy) p /= sum;
    return r;
}

}  // namespace

TEST_CASE("empty board features") {
    Position p(3, 5.5);
    FeatureTensor f = extract_features(p);
    REQUIRE(f.data.size() == size_t(17 * 9));
    for (int v = 0; v < 9; ++v) CHECK(f.plane(0)[v] == 1.0f);
    // No stones, nothing illegal, no ataris on any history plane.
    for (int plane = 1; plane < 17; ++plane) {
        for (int v = 0; v < 9; ++v) CHECK(f.plane(plane)[v] == 0.0f);
    }
}

TEST_CASE("stone planes are relative to the player to move") {
    Position p(3, 5.5);
    p = p.play(Vertex::point(1, 1, 3));  // B
    p = p.play(Vertex::point(0, 0, 3));  // W
    // Black to move again: own = black.
    FeatureTensor f = extract_features(p);
    CHECK(f.plane(1)[4] == 1.0f);   // own stone at (1,1)
    CHECK(f.plane(1)[0] == 0.0f);
    CHECK(f.plane(2)[0] == 1.0f);   // opponent stone at (0,0)
    // One ply back (after B's move only): own plane still holds black.
    CHECK(f.plane(5)[4] == 1.0f);
    CHECK(f.plane(6)[0] == 0.0f);   // white had not played yet
    // Two plies back: empty board.
    CHECK(f.plane(9)[4] == 0.0f);
    // Occupied points are illegal in the newest snapshot.
    CHECK(f.plane(3)[4] == 1.0f);
    CHECK(f.plane(3)[0] == 1.0f);
    CHECK(f.plane(3)[1] == 0.0f);
}

TEST_CASE("history shorter than four planes replicates the oldest entry") {
    Position p(3, 5.5);
    p = p.play(Vertex::point(1, 1, 3));
    FeatureTensor f = extract_features(p);
    // Snapshots t=1..3 all clamp to the initial empty board.
    for (int t = 1; t < 4; ++t) {
        for (int v = 0; v < 9; ++v) {
            CHECK(f.plane(1 + 4 * t)[v] == 0.0f);
            CHECK(f.plane(2 + 4 * t)[v] == 0.0f);
        }
    }
}

TEST_CASE("last-liberty plane marks ataris of either color") {
    Position p(3, 5.5);
    p = p.play(Vertex::point(0, 0, 3));  // B corner
    p = p.play(Vertex::point(1, 0, 3));  // W
    // Black (0,0) now has its last liberty at (0,1).
    FeatureTensor f = extract_features(p);
    CHECK(f.plane(4)[3] == 1.0f);   // (0,1)
    CHECK(f.plane(4)[1] == 0.0f);
    int marked = 0;
    for (int v = 0; v < 9; ++v) marked += f.plane(4)[v] > 0;
    CHECK(marked == 1);
}

TEST_CASE("vertex transforms form the dihedral group") {
    const int size = 5;
    for (int sym = 0; sym < 8; ++sym) {
        std::vector<int> image(size * size, -1);
        for (int v = 0; v < size * size; ++v) {
            // Independent coordinate computation of the expected image.
            int x = v % size, y = v / size;
            int tx = (sym & 1) ? size - 1 - x : x;
            int ty = (sym & 2) ? size - 1 - y : y;
            if (sym & 4) std::swap(tx, ty);
            int expect = ty * size + tx;
            int got = transform_vertex_index(v, size, sym);
            CHECK(got == expect);
            image[got] = v;
        }
        // Bijective.
        for (int v = 0; v < size * size; ++v) CHECK(image[v] >= 0);
        // Pass is fixed.
        CHECK(transform_vertex_index(size * size, size, sym) == size * size);
        // inverse_symmetry really inverts.
        for (int v = 0; v < size * size; ++v) {
            CHECK(transform_vertex_index(transform_vertex_index(v, size, sym), size,
                                         inverse_symmetry(sym)) == v);
        }
    }
}

TEST_CASE("feature transforms invert and permute per plane") {
    Position p(5, 7.5);
    Rng rng(11);
    for (int i = 0; i < 8 && !p.is_terminal(); ++i) {
        auto legal = p.legal_moves();
        p = p.play(legal[rng() % legal.size()]);
    }
    FeatureTensor f = extract_features(p);
    for (int sym = 0; sym < 8; ++sym) {
        FeatureTensor t = transform_features(f, sym);
        for (int plane = 0; plane < kFeaturePlanes; ++plane) {
            for (int v = 0; v < 25; ++v) {
                CHECK(t.plane(plane)[transform_vertex_index(v, 5, sym)] == f.plane(plane)[v]);
            }
        }
        FeatureTensor back = transform_features(t, inverse_symmetry(sym));
        CHECK(back.data == f.data);
    }
}

TEST_CASE("loss components") {
    std::vector<double> visits{0.5, 0.5, 0.0, 0.0};
    EvalResult e = eval_from_logits({0, 0, 0, 0}, {0.0, 1.0});
    // rho(0) = 0.5, z = 0.5: value term zero; CE = log 4 for uniform policy.
    CHECK(loss(0.5, visits, e, 0.0, 0.25) ==
          doctest::Approx(0.25 + std::log(4.0)).epsilon(1e-12));
    // Perfect policy match minimizes CE at the visits entropy.
    EvalResult sharp = eval_from_logits({10, 10, -10, -10}, {0.0, 1.0});
    CHECK(loss(0.5, visits, sharp, 0.0, 0.0) <
          loss(0.5, visits, e, 0.0, 0.0));
}

TEST_CASE("analytic gradients match finite differences") {
    Rng rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-4;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> logits(10), visits(10);
        for (auto& l : logits) l = u(rng);
        double vsum = 0;
        for (auto& v : visits) { v = std::abs(u(rng)); vsum += v; }
        for (auto& v : visits) v /= vsum;
        SigmoidParams params{u(rng) * 5, 0.5 + std::abs(u(rng))};
        double z = (u(rng) + 1) / 2;
        double komi = u(rng) * 7;

        EvalResult e = eval_from_logits(logits, params);
        LossGradients g = loss_gradients(z, visits, e, komi);

        auto loss_at = [&](SigmoidParams pp, const std::vector<double>& ll) {
            return loss(z, visits, eval_from_logits(ll, pp), komi, 0.0);
        };
        double fd_alpha = (loss_at({params.alpha + h, params.beta}, logits) -
                           loss_at({params.alpha - h, params.beta}, logits)) / (2 * h);
        double fd_beta = (loss_at({params.alpha, params.beta + h}, logits) -
                          loss_at({params.alpha, params.beta - h}, logits)) / (2 * h);
        CHECK(std::abs(fd_alpha - g.d_alpha) / std::max(1e-6, std::abs(fd_alpha) + std::abs(g.d_alpha)) < 1e-4);
        CHECK(std::abs(fd_beta - g.d_beta) / std::max(1e-6, std::abs(fd_beta) + std::abs(g.d_beta)) < 1e-4);
        for (int i = 0; i < 10; ++i) {
            auto lp = logits, lm = logits;
            lp[i] += h;
            lm[i] -= h;
            double fd = (loss_at(params, lp) - loss_at(params, lm)) / (2 * h);
            CHECK(std::abs(fd - g.d_policy_logits[i]) < 1e-4 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("uniform-random evaluator is deterministic per position and seed") {
    Position p(5, 7.5);
    p = p.play(Vertex::point(2, 2, 5));
    SyntheticOptions opts;
    opts.seed = 17;
    EvalResult a = synthetic_evaluate(p, SyntheticStyle::UniformRandom, opts);
    EvalResult b = synthetic_evaluate(p, SyntheticStyle::UniformRandom, opts);
    CHECK(a.policy == b.policy);
    CHECK(a.params.alpha == b.params.alpha);
    opts.seed = 18;
    EvalResult c = synthetic_evaluate(p, SyntheticStyle::UniformRandom, opts);
    CHECK(a.policy != c.policy);
    double sum = std::accumulate(a.policy.begin(), a.policy.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.params.beta == 1.0);
}

TEST_CASE("territory evaluator reports the mover's area lead") {
    Position p(5, 7.5);
    p = p.play(Vertex::point(2, 2, 5));  // B; White to move, lead -25
    SyntheticOptions opts;
    EvalResult e = synthetic_evaluate(p, SyntheticStyle::Territory, opts);
    CHECK(e.params.alpha == -25.0);
    CHECK(e.params.beta == 1.0);
    // Uniform over legal moves: 24 points + pass.
    int nonzero = 0;
    for (double w : e.policy) nonzero += w > 0;
    CHECK(nonzero == 25);
    CHECK(e.policy[25] == doctest::Approx(1.0 / 25).epsilon(1e-12));
    CHECK(e.policy[12] == 0.0);  // occupied point

    opts.territory_beta = 0.25;
    opts.noise_sigma = 3.0;
    opts.seed = 5;
    EvalResult noisy = synthetic_evaluate(p, SyntheticStyle::Territory, opts);
    CHECK(noisy.params.beta == 0.25);
    CHECK(noisy.params.alpha != -25.0);
    EvalResult noisy2 = synthetic_evaluate(p, SyntheticStyle::Territory, opts);
    CHECK(noisy.params.alpha == noisy2.params.alpha);  // seeded noise
}

TEST_CASE("oracle evaluator rejects big boards and solves small ones") {
    Position big(5, 7.5);
    CHECK_THROWS_AS(synthetic_evaluate(big, SyntheticStyle::Oracle), OracleTooLargeError);

    Position p(2, 0.0);
    EvalResult e = synthetic_evaluate(p, SyntheticStyle::Oracle);
    CHECK(e.params.beta == 20.0);
    double sum = std::accumulate(e.policy.begin(), e.policy.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sai/random.hpp"
#include "sai/rating.hpp"

using namespace sai;

namespace {

// Grid-search oracle for the 1-D inner maximization.
InnerProbabilities grid_inner(double d, double a, double b, double c) {
    double w = expected_score(d);
    double qmax = 2.0 * std::min(w, 1.0 - w);
    double best_q = 0, best_val = -1e300;
    const int steps = 2000000;
    for (int i = 1; i < steps; ++i) {
        double q = qmax * i / steps;
        double p = w - q / 2, r = (1 - w) - q / 2;
        if (p <= 0 || r <= 0) continue;
        double val = (b > 0 ? b * std::log(q) : 0) + (a > 0 ? a * std::log(p) : 0) +
                     (c > 0 ? c * std::log(r) : 0);
        if (val > best_val) { best_val = val; best_q = q; }
    }
    if (b == 0) best_q = 0;
    return {w - best_q / 2, best_q, (1 - w) - best_q / 2};
}

MatchSet two_players(long a, long b, long c) {
    MatchSet ms;
    ms.players = {"p0", "p1"};
    ms.matches = {{0, 1, a, b, c}};
    return ms;
}

}  // namespace

TEST_CASE("expected_score basics") {
    CHECK(expected_score(0.0) == 0.5);
    CHECK(expected_score(400.0 * std::log10(3.0)) == doctest::Approx(0.75).epsilon(1e-12));
    Rng rng(4);
    std::uniform_real_distribution<double> d(-1500, 1500);
    for (int i = 0; i < 1000; ++i) {
        double x = d(rng);
        CHECK(expected_score(x) + expected_score(-x) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("inner probabilities hand-solvable case") {
    // d=0, a=1, b=2, c=1: stationarity 2(0.5 - q/2) = q gives q = 1/2.
    InnerProbabilities ip = inner_probabilities(0, 1, 2, 1);
    CHECK(ip.q == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ip.p == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(ip.r == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("inner probabilities boundary cases") {
    InnerProbabilities nodraw = inner_probabilities(123.4, 10, 0, 5);
    CHECK(nodraw.q == 0.0);
    CHECK(nodraw.p == doctest::Approx(expected_score(123.4)).epsilon(1e-12));
    InnerProbabilities alldraw = inner_probabilities(0, 0, 5, 0);
    CHECK(alldraw.q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(alldraw.p == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("inner probabilities satisfy both constraints on random input") {
    Rng rng(8);
    std::uniform_real_distribution<double> dd(-600, 600);
    for (int i = 0; i < 3000; ++i) {
        double d = dd(rng);
        double a = static_cast<double>(rng() % 50);
        double b = static_cast<double>(rng() % 20);
        double c = static_cast<double>(rng() % 50);
        if (a + b + c < 1) a = 1;
        InnerProbabilities ip = inner_probabilities(d, a, b, c);
        CHECK(ip.p >= 0.0);
        CHECK(ip.q >= 0.0);
        CHECK(ip.r >= 0.0);
        CHECK(std::abs(ip.p + ip.q + ip.r - 1.0) < 1e-10);
        CHECK(std::abs((ip.p + ip.q / 2) - expected_score(d)) < 1e-10);
    }
}

TEST_CASE("inner maximizer agrees with a grid-search oracle") {
    const double cases[][4] = {
        {0, 3, 4, 1}, {150, 10, 2, 5}, {-220, 1, 1, 8}, {30, 7, 9, 7},
    };
    for (const auto& cs : cases) {
        InnerProbabilities got = inner_probabilities(cs[0], cs[1], cs[2], cs[3]);
        InnerProbabilities want = grid_inner(cs[0], cs[1], cs[2], cs[3]);
        CHECK(got.q == doctest::Approx(want.q).epsilon(1e-4));
    }
}

TEST_CASE("log likelihood of one even match") {
    MatchSet ms = two_players(1, 0, 0);
    RatingVector rv;
    rv.ratings = {0, 0};
    CHECK(log_likelihood(rv, ms) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("two-player 75/25 fit recovers 190.85") {
    RatingVector rv = fit(two_players(75, 0, 25));
    CHECK(rv.converged);
    CHECK(rv.ratings[0] == 0.0);
    CHECK(std::abs((rv.ratings[1] - rv.ratings[0]) - (-400.0 * std::log10(3.0))) < 0.1);
    // Swapped perspective mirrors the difference.
    MatchSet sw = two_players(25, 0, 75);
    RatingVector rv2 = fit(sw);
    CHECK(rv2.ratings[1] == doctest::Approx(400.0 * std::log10(3.0)).epsilon(1e-3));
}

TEST_CASE("mirrored matches give identical ratings") {
    MatchSet ms;
    ms.players = {"a", "b", "c"};
    ms.matches = {{0, 1, 30, 4, 10}, {1, 0, 10, 4, 30},
                  {1, 2, 20, 2, 20}, {2, 1, 20, 2, 20},
                  {0, 2, 25, 0, 15}, {2, 0, 15, 0, 25}};
    RatingVector rv = fit(ms);
    MatchSet half;
    half.players = ms.players;
    half.matches = {{0, 1, 60, 8, 20}, {1, 2, 40, 4, 40}, {0, 2, 50, 0, 30}};
    RatingVector rv2 = fit(half);
    for (int i = 0; i < 3; ++i) {
        CHECK(rv.ratings[i] == doctest::Approx(rv2.ratings[i]).epsilon(1e-2));
    }
}

TEST_CASE("likelihood at the optimum beats random perturbations") {
    MatchSet ms;
    ms.players = {"a", "b", "c", "d"};
    ms.matches = {{0, 1, 12, 3, 5}, {1, 2, 9, 1, 11}, {2, 3, 14, 2, 6}, {3, 0, 7, 0, 13}};
    RatingVector rv = fit(ms);
    double best = log_likelihood(rv, ms);
    Rng rng(17);
    std::normal_distribution<double> noise(0.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        RatingVector perturbed = rv;
        for (size_t j = 1; j < perturbed.ratings.size(); ++j) perturbed.ratings[j] += noise(rng);
        CHECK(log_likelihood(perturbed, ms) <= best + 1e-9);
    }
}

TEST_CASE("disconnected graphs are rejected") {
    MatchSet ms;
    ms.players = {"a", "b", "c", "d"};
    ms.matches = {{0, 1, 5, 0, 5}, {2, 3, 5, 0, 5}};
    CHECK_THROWS_AS(fit(ms), DisconnectedError);
}

TEST_CASE("one-sided players hit the clamp and are flagged") {
    MatchSet ms;
    ms.players = {"a", "b"};
    ms.matches = {{0, 1, 20, 0, 0}};
    RatingVector rv = fit(ms);
    CHECK(rv.ratings[1] == -2000.0);
    CHECK(rv.clamped[1]);
}

TEST_CASE("synthetic ladder is recovered within 15 Elo RMS") {
    // 8 players on a chain plus chords; outcomes drawn from the model itself.
    Rng rng(2718);
    std::vector<double> truth{0, 80, -120, 200, 40, -60, 140, 20};
    MatchSet ms;
    for (int i = 0; i < 8; ++i) ms.players.push_back("p" + std::to_string(i));
    auto play_edge = [&](int i, int j) {
        double w = expected_score(truth[i] - truth[j]);
        Match m{i, j, 0, 0, 0};
        for (int g = 0; g < 2000; ++g) {
            if (uniform01(rng) < w) ++m.wins;
            else ++m.losses;
        }
        ms.matches.push_back(m);
    };
    for (int i = 0; i + 1 < 8; ++i) play_edge(i, i + 1);
    play_edge(0, 4);
    play_edge(2, 6);
    play_edge(1, 7);
    RatingVector rv = fit(ms);
    REQUIRE(rv.converged);
    double rms = 0;
    for (int i = 0; i < 8; ++i) {
        double err = rv.ratings[i] - (truth[i] - truth[0]);
        rms += err * err;
    }
    rms = std::sqrt(rms / 8);
    CHECK(rms < 15.0);
}

TEST_CASE("csv round trip") {
    const std::string csv =
        "first,second,wins,draws,losses\n"
        "alice,bob,75,0,25\n"
        "bob,carol,10,5,10\n";
    MatchSet ms = load_match_csv(csv);
    REQUIRE(ms.players.size() == 3);
    REQUIRE(ms.matches.size() == 2);
    CHECK(ms.players[0] == "alice");
    CHECK(ms.matches[0].wins == 75);
    CHECK(ms.matches[1].draws == 5);
    RatingVector rv = fit(ms);
    std::string report = rating_report_csv(ms, rv);
    CHECK(report.find("player,rating,games") == 0);
    CHECK(report.find("alice") != std::string::npos);
    CHECK_THROWS(load_match_csv("bogus header\nx,y,1,2,3\n"));
}

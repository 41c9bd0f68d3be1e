#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sai/random.hpp"
#include "sai/sgf.hpp"

using namespace sai;

TEST_CASE("writing a short game") {
    SgfGame g;
    g.size = 9;
    g.komi = 7.5;
    g.black_name = "alice";
    g.white_name = "bob";
    g.result = "B+3.5";
    g.moves = {{Color::Black, Vertex::point(2, 2, 9)},
               {Color::White, Vertex::point(6, 6, 9)},
               {Color::Black, Vertex::pass()}};
    CHECK(sgf_write(g) ==
          "(;GM[1]FF[4]SZ[9]KM[7.5]PB[alice]PW[bob]RE[B+3.5];B[cc];W[gg];B[])\n");
}

TEST_CASE("parse recovers the fields") {
    SgfGame g = sgf_parse("(;GM[1]FF[4]SZ[9]KM[5.5]PB[x]PW[y]RE[W+R];B[cc];W[tt])");
    CHECK(g.size == 9);
    CHECK(g.komi == 5.5);
    CHECK(g.black_name == "x");
    CHECK(g.result == "W+R");
    REQUIRE(g.moves.size() == 2);
    CHECK(g.moves[0].second == Vertex::point(2, 2, 9));
    CHECK(g.moves[1].second.is_pass());  // "tt" pass convention
}

TEST_CASE("parse tolerates whitespace and SZ after moves-free header") {
    SgfGame g = sgf_parse("( ;FF[4]\n SZ[5] KM[0] ;B[aa] ;W[bb] )");
    CHECK(g.size == 5);
    CHECK(g.moves.size() == 2);
}

TEST_CASE("escaped characters in names round-trip") {
    SgfGame g;
    g.size = 5;
    g.komi = 0;
    g.black_name = "we]ird\\name";
    std::string text = sgf_write(g);
    SgfGame h = sgf_parse(text);
    CHECK(h.black_name == g.black_name);
    CHECK(sgf_write(h) == text);
}

TEST_CASE("handicap setup round-trips and replays with white first") {
    Position p = Position::with_setup(9, 0.5, {Vertex::point(2, 2, 9), Vertex::point(6, 6, 9)});
    p = p.play(Vertex::point(4, 4, 9));  // White
    p = p.play(Vertex::point(3, 3, 9));  // Black
    SgfGame g = sgf_from_position(p, "b", "w", "");
    REQUIRE(g.setup_black.size() == 2);
    REQUIRE(g.moves.size() == 2);
    CHECK(g.moves[0].first == Color::White);
    Position q = sgf_replay(g);
    CHECK(q.board() == p.board());
    CHECK(q.to_move() == p.to_move());
}

TEST_CASE("replay rejects out-of-turn moves") {
    CHECK_THROWS_AS(sgf_replay(sgf_parse("(;SZ[5]KM[0];W[aa])")), SgfError);
}

TEST_CASE("format_result covers the result grammar") {
    GameResult r;
    r.outcome = Outcome::BlackWin;
    r.margin = 3.5;
    CHECK(format_result(r) == "B+3.5");
    r.outcome = Outcome::WhiteWin;
    r.margin = 12;
    CHECK(format_result(r) == "W+12");
    r.outcome = Outcome::Draw;
    CHECK(format_result(r) == "0");
    r.outcome = Outcome::BlackWin;
    r.termination = Termination::Resignation;
    r.has_margin = false;
    CHECK(format_result(r) == "B+R");
}

TEST_CASE("random games round-trip byte-exactly") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(derive_seed(7, seed));
        Position p(5, 6.5);
        for (int i = 0; i < 30 && !p.is_terminal(); ++i) {
            auto legal = p.legal_moves();
            p = p.play(legal[rng() % legal.size()]);
        }
        SgfGame g = sgf_from_position(p, "a", "b", "0");
        std::string text = sgf_write(g);
        SgfGame h = sgf_parse(text);
        CHECK(sgf_write(h) == text);
        Position q = sgf_replay(h);
        CHECK(q.board() == p.board());
        CHECK(q.komi() == p.komi());
    }
}

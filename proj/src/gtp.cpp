#include "sai/gtp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace sai {

namespace {

const char* kCommands[] = {
    "protocol_version", "name", "version", "known_command", "list_commands",
    "boardsize", "clear_board", "komi", "play", "genmove", "final_score",
    "quit", "sai-params", "sai-agent", "sai-score-est",
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

GtpSession::GtpSession(EngineSpec spec)
    : spec_(std::move(spec)), evaluator_(make_evaluator(spec_)), position_(9, 7.5) {}

std::string GtpSession::vertex_to_gtp(Vertex v, int size) {
    if (v.is_pass()) return "pass";
    int x = v.x(size);
    char col = static_cast<char>('A' + x + (x >= 8 ? 1 : 0));  // skip I
    return std::string(1, col) + std::to_string(v.y(size) + 1);
}

Vertex GtpSession::gtp_to_vertex(const std::string& s, int size) {
    std::string t = lower(s);
    if (t == "pass") return Vertex::pass();
    if (t.size() < 2) throw std::invalid_argument("bad vertex '" + s + "'");
    int x = t[0] - 'a';
    if (t[0] == 'i') throw std::invalid_argument("column I does not exist");
    if (t[0] > 'i') --x;
    int y = std::stoi(t.substr(1)) - 1;
    return Vertex::point(x, y, size);
}

void GtpSession::run(std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        // Strip comments and control characters per GTP framing rules.
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string cleaned;
        for (char c : line) {
            if (c == '\t') cleaned += ' ';
            else if (static_cast<unsigned char>(c) >= 32) cleaned += c;
        }
        std::istringstream ls(cleaned);
        std::string first;
        if (!(ls >> first)) continue;
        std::string id;
        std::string command;
        if (!first.empty() && std::isdigit(static_cast<unsigned char>(first[0]))) {
            id = first;
            std::getline(ls, command);
        } else {
            command = first;
            std::string rest;
            std::getline(ls, rest);
            command += rest;
        }
        bool quit = false;
        std::string response;
        bool ok = true;
        try {
            response = handle(command, quit);
        } catch (const std::exception& e) {
            ok = false;
            response = e.what();
        }
        out << (ok ? "=" : "?") << id;
        if (!response.empty()) out << " " << response;
        out << "\n\n";
        out.flush();
        if (quit) break;
    }
}

std::string GtpSession::handle(const std::string& raw, bool& quit) {
    std::istringstream is(raw);
    std::string cmd;
    is >> cmd;
    cmd = lower(cmd);

    if (cmd == "protocol_version") return "2";
    if (cmd == "name") return spec_.name;
    if (cmd == "version") return "1.0";
    if (cmd == "list_commands") {
        std::string out;
        for (const char* c : kCommands) {
            if (!out.empty()) out += "\n";
            out += c;
        }
        return out;
    }
    if (cmd == "known_command") {
        std::string arg;
        is >> arg;
        for (const char* c : kCommands) {
            if (arg == c) return "true";
        }
        return "false";
    }
    if (cmd == "boardsize") {
        int n;
        if (!(is >> n) || n < 2 || n > 19) throw std::invalid_argument("unacceptable size");
        position_ = Position(n, position_.komi());
        moves_played_ = 0;
        return "";
    }
    if (cmd == "clear_board") {
        position_ = Position(position_.size(), position_.komi());
        moves_played_ = 0;
        return "";
    }
    if (cmd == "komi") {
        double k;
        if (!(is >> k)) throw std::invalid_argument("komi requires a value");
        // Re-root the game at the new komi, replaying any moves made so far.
        Position next(position_.size(), k);
        for (Vertex m : position_.moves()) next = next.play(m);
        position_ = next;
        return "";
    }
    if (cmd == "play") {
        std::string color, vertex;
        if (!(is >> color >> vertex)) throw std::invalid_argument("play needs color and vertex");
        Color c = lower(color)[0] == 'b' ? Color::Black : Color::White;
        if (c != position_.to_move()) {
            throw std::invalid_argument("it is not that color's turn");
        }
        position_ = position_.play(gtp_to_vertex(vertex, position_.size()));
        ++moves_played_;
        return "";
    }
    if (cmd == "genmove") {
        std::string color;
        if (!(is >> color)) throw std::invalid_argument("genmove needs a color");
        Color c = lower(color)[0] == 'b' ? Color::Black : Color::White;
        if (c != position_.to_move()) {
            throw std::invalid_argument("it is not that color's turn");
        }
        SearchConfig cfg = spec_.search;
        cfg.seed = derive_seed(spec_.search.seed, 7000 + moves_played_);
        SearchReport report = run_search(position_, *evaluator_, cfg);
        if (should_resign(report, cfg)) return "resign";
        Rng rng(derive_seed(spec_.search.seed, 9000 + moves_played_));
        Vertex move = select_move(report, moves_played_, cfg, rng);
        position_ = position_.play(move);
        ++moves_played_;
        return vertex_to_gtp(move, position_.size());
    }
    if (cmd == "final_score") {
        GameResult r = position_.score_game();
        return format_result(r);
    }
    if (cmd == "sai-params") {
        EvalResult er = evaluator_->evaluate(position_);
        WinrateCurve curve{er.params, position_.signed_komi()};
        char buf[96];
        std::snprintf(buf, sizeof buf, "alpha %.3f beta %.3f winrate %.4f",
                      er.params.alpha, er.params.beta, winrate(curve, 0.0));
        return buf;
    }
    if (cmd == "sai-agent") {
        AgentConfig a;
        if (!(is >> a.lambda >> a.mu >> a.activation_threshold)) {
            throw std::invalid_argument("sai-agent needs lambda mu threshold");
        }
        validate(a);
        spec_.search.agent = a;
        return "";
    }
    if (cmd == "sai-score-est") {
        double est = estimate_score(position_, *evaluator_, 1000,
                                    derive_seed(spec_.search.seed, 0x6573));
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", est);
        return buf;
    }
    if (cmd == "quit") {
        quit = true;
        return "";
    }
    throw std::invalid_argument("unknown command");
}

}  // namespace sai

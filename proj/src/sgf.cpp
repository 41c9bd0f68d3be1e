#include "sai/sgf.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sai {

namespace {

std::string coord(Vertex v, int size) {
    if (v.is_pass()) return "";
    return std::string{static_cast<char>('a' + v.x(size)),
                       static_cast<char>('a' + v.y(size))};
}

Vertex parse_coord(const std::string& s, int size) {
    if (s.empty() || (size <= 19 && s == "tt")) return Vertex::pass();
    if (s.size() != 2) throw SgfError("bad coordinate '" + s + "'");
    int x = s[0] - 'a', y = s[1] - 'a';
    if (x < 0 || y < 0 || x >= size || y >= size) throw SgfError("coordinate off board");
    return Vertex::point(x, y, size);
}

std::string format_komi(double k) {
    char buf[32];
    if (k == std::floor(k)) std::snprintf(buf, sizeof buf, "%.0f", k);
    else std::snprintf(buf, sizeof buf, "%.1f", k);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == ']' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string format_result(const GameResult& r) {
    char buf[32];
    switch (r.outcome) {
        case Outcome::Draw: return "0";
        case Outcome::BlackWin:
            if (r.termination == Termination::Resignation && !r.has_margin) return "B+R";
            std::snprintf(buf, sizeof buf, "B+%s", format_komi(r.margin).c_str());
            return buf;
        case Outcome::WhiteWin:
            if (r.termination == Termination::Resignation && !r.has_margin) return "W+R";
            std::snprintf(buf, sizeof buf, "W+%s", format_komi(r.margin).c_str());
            return buf;
    }
    return "";
}

std::string sgf_write(const SgfGame& g) {
    std::ostringstream os;
    os << "(;GM[1]FF[4]SZ[" << g.size << "]KM[" << format_komi(g.komi) << "]";
    if (!g.black_name.empty()) os << "PB[" << escape(g.black_name) << "]";
    if (!g.white_name.empty()) os << "PW[" << escape(g.white_name) << "]";
    if (!g.result.empty()) os << "RE[" << escape(g.result) << "]";
    if (!g.setup_black.empty()) {
        os << "AB";
        for (Vertex v : g.setup_black) os << "[" << coord(v, g.size) << "]";
    }
    for (const auto& [c, v] : g.moves) {
        os << ";" << (c == Color::Black ? "B" : "W") << "[" << coord(v, g.size) << "]";
    }
    os << ")\n";
    return os.str();
}

SgfGame sgf_parse(const std::string& text) {
    SgfGame g;
    g.komi = 0;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i >= text.size() || text[i] != '(') throw SgfError("expected '('");
    ++i;
    bool saw_size = false;
    std::vector<std::pair<std::string, std::vector<std::string>>> props;
    while (i < text.size() && text[i] != ')') {
        skip_ws();
        if (i < text.size() && text[i] == ';') { ++i; continue; }
        if (i >= text.size() || text[i] == ')') break;
        std::string name;
        while (i < text.size() && std::isupper(static_cast<unsigned char>(text[i]))) name.push_back(text[i++]);
        if (name.empty()) throw SgfError("expected property name");
        std::vector<std::string> values;
        skip_ws();
        while (i < text.size() && text[i] == '[') {
            ++i;
            std::string val;
            while (i < text.size() && text[i] != ']') {
                if (text[i] == '\\' && i + 1 < text.size()) ++i;
                val.push_back(text[i++]);
            }
            if (i >= text.size()) throw SgfError("unterminated value");
            ++i;  // ']'
            values.push_back(val);
            skip_ws();
        }
        if (values.empty()) throw SgfError("property without value");
        props.emplace_back(name, values);
        if (name == "SZ") saw_size = true;
    }
    // Resolve SZ before decoding coordinates.
    for (const auto& [name, values] : props) {
        if (name == "SZ") g.size = std::stoi(values[0]);
    }
    if (!saw_size) g.size = 19;
    for (const auto& [name, values] : props) {
        if (name == "KM") g.komi = std::stod(values[0]);
        else if (name == "PB") g.black_name = values[0];
        else if (name == "PW") g.white_name = values[0];
        else if (name == "RE") g.result = values[0];
        else if (name == "AB") {
            for (const auto& v : values) g.setup_black.push_back(parse_coord(v, g.size));
        } else if (name == "B" || name == "W") {
            g.moves.emplace_back(name == "B" ? Color::Black : Color::White,
                                 parse_coord(values[0], g.size));
        }
    }
    return g;
}

Position sgf_replay(const SgfGame& g) {
    Position p = g.setup_black.empty() ? Position(g.size, g.komi)
                                       : Position::with_setup(g.size, g.komi, g.setup_black);
    for (const auto& [c, v] : g.moves) {
        if (c != p.to_move()) throw SgfError("move color out of turn");
        p = p.play(v);
    }
    return p;
}

SgfGame sgf_from_position(const Position& p, const std::string& black_name,
                          const std::string& white_name, const std::string& result) {
    SgfGame g;
    g.size = p.size();
    g.komi = p.komi();
    g.black_name = black_name;
    g.white_name = white_name;
    g.result = result;
    g.setup_black = p.setup_stones();
    Color c = p.setup_stones().empty() ? Color::Black : Color::White;
    for (Vertex v : p.moves()) {
        g.moves.emplace_back(c, v);
        c = opponent(c);
    }
    return g;
}

}  // namespace sai

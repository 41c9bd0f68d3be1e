#include "sai/rating.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace sai {

double expected_score(double d) {
    double t = std::pow(10.0, d / 400.0);
    return t / (1.0 + t);
}

InnerProbabilities inner_probabilities(double d, double a, double b, double c) {
    if (a < 0 || b < 0 || c < 0 || a + b + c < 1) {
        throw std::invalid_argument("need non-negative counts with a+b+c >= 1");
    }
    double w = expected_score(d);
    InnerProbabilities out;
    if (b == 0) {
        out.p = w;
        out.q = 0;
        out.r = 1 - w;
        return out;
    }
    double qmax = 2.0 * std::min(w, 1.0 - w);
    if (qmax <= 0) throw DegenerateDiffError("draws observed at an extreme Elo difference");
    if (a == 0 && c == 0) {
        out.q = qmax;
        out.p = w - qmax / 2;
        out.r = (1 - w) - qmax / 2;
        return out;
    }
    // Stationarity of a*log(w-q/2) + b*log q + c*log(1-w-q/2) in q.
    auto deriv = [&](double q) {
        double g = b / q;
        if (a > 0) g -= a / (2.0 * (w - q / 2));
        if (c > 0) g -= c / (2.0 * (1.0 - w - q / 2));
        return g;
    };
    double lo = qmax * 1e-12, hi = qmax * (1 - 1e-12);
    if (deriv(hi) >= 0) {
        out.q = qmax;  // boundary maximizer, only when a or c is zero
    } else {
        // Safeguarded Newton; the derivative is strictly decreasing.
        double q = qmax / 2;
        for (int iter = 0; iter < 100; ++iter) {
            double g = deriv(q);
            if (g > 0) lo = q; else hi = q;
            double h = -b / (q * q);
            if (a > 0) { double p = w - q / 2; h -= a / (4 * p * p); }
            if (c > 0) { double r = 1 - w - q / 2; h -= c / (4 * r * r); }
            double step = q - g / h;
            q = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
            if (hi - lo < 1e-15) break;
        }
        out.q = q;
    }
    out.p = w - out.q / 2;
    out.r = (1 - w) - out.q / 2;
    out.p = std::max(out.p, 0.0);
    out.r = std::max(out.r, 0.0);
    return out;
}

namespace {

double match_loglik(double d, const Match& m) {
    InnerProbabilities ip = inner_probabilities(d, static_cast<double>(m.wins),
                                                static_cast<double>(m.draws),
                                                static_cast<double>(m.losses));
    double l = 0;
    if (m.wins > 0) l += m.wins * std::log(ip.p);
    if (m.draws > 0) l += m.draws * std::log(ip.q);
    if (m.losses > 0) l += m.losses * std::log(ip.r);
    return l;
}

}  // namespace

double log_likelihood(const RatingVector& rv, const MatchSet& ms) {
    double l = 0;
    for (const auto& m : ms.matches) {
        l += match_loglik(rv.ratings[m.first] - rv.ratings[m.second], m);
    }
    return l;
}

RatingVector fit(const MatchSet& ms, int anchor, const FitOptions& opts) {
    const int n = static_cast<int>(ms.players.size());
    // Connectivity check: every player must reach the anchor through matches.
    {
        std::vector<int> comp(n);
        for (int i = 0; i < n; ++i) comp[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (const auto& m : ms.matches) comp[find(m.first)] = find(m.second);
        for (int i = 0; i < n; ++i) {
            if (find(i) != find(anchor)) {
                throw DisconnectedError("player " + ms.players[i] + " not connected to anchor");
            }
        }
    }
    std::vector<std::vector<const Match*>> incident(n);
    for (const auto& m : ms.matches) {
        incident[m.first].push_back(&m);
        incident[m.second].push_back(&m);
    }

    RatingVector rv;
    rv.anchor = anchor;
    rv.ratings.assign(n, 0.0);
    rv.clamped.assign(n, false);

    auto partial = [&](int j, double s) {
        double l = 0;
        for (const Match* m : incident[j]) {
            double d = m->first == j ? s - rv.ratings[m->second] : rv.ratings[m->first] - s;
            l += match_loglik(d, *m);
        }
        return l;
    };

    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        double max_change = 0;
        for (int j = 0; j < n; ++j) {
            if (j == anchor || incident[j].empty()) continue;
            // Golden-section on the concave per-player profile.
            double lo = rv.ratings[j] - 800, hi = rv.ratings[j] + 800;
            const double phi = 0.6180339887498949;
            double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
            double f1 = partial(j, x1), f2 = partial(j, x2);
            while (hi - lo > 1e-6) {
                if (f1 < f2) {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + phi * (hi - lo);
                    f2 = partial(j, x2);
                } else {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - phi * (hi - lo);
                    f1 = partial(j, x1);
                }
            }
            double next = std::clamp(0.5 * (lo + hi), -opts.clamp, opts.clamp);
            rv.clamped[j] = std::abs(next) >= opts.clamp;
            max_change = std::max(max_change, std::abs(next - rv.ratings[j]));
            rv.ratings[j] = next;
        }
        converged = max_change < opts.tolerance;
    }
    rv.converged = converged;
    return rv;
}

MatchSet load_match_csv(const std::string& text) {
    MatchSet ms;
    std::map<std::string, int> index;
    auto player_id = [&](const std::string& name) {
        auto [it, inserted] = index.try_emplace(name, static_cast<int>(ms.players.size()));
        if (inserted) ms.players.push_back(name);
        return it->second;
    };
    std::istringstream is(text);
    std::string line;
    bool first_line = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first_line) {
            first_line = false;
            if (line == "first,second,wins,draws,losses") continue;
        }
        std::istringstream ls(line);
        std::string f, g, a, b, c;
        if (!std::getline(ls, f, ',') || !std::getline(ls, g, ',') ||
            !std::getline(ls, a, ',') || !std::getline(ls, b, ',') ||
            !std::getline(ls, c, ',')) {
            throw std::runtime_error("bad match CSV line: " + line);
        }
        Match m;
        m.first = player_id(f);
        m.second = player_id(g);
        m.wins = std::stol(a);
        m.draws = std::stol(b);
        m.losses = std::stol(c);
        ms.matches.push_back(m);
    }
    return ms;
}

std::string rating_report_csv(const MatchSet& ms, const RatingVector& rv) {
    std::vector<long> games(ms.players.size(), 0);
    for (const auto& m : ms.matches) {
        long g = m.wins + m.draws + m.losses;
        games[m.first] += g;
        games[m.second] += g;
    }
    std::string out = "player,rating,games\n";
    char buf[64];
    for (size_t i = 0; i < ms.players.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f", rv.ratings[i]);
        out += ms.players[i] + "," + buf + "," + std::to_string(games[i]) + "\n";
    }
    return out;
}

}  // namespace sai

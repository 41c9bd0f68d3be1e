#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sai {

struct Match {
    int first = 0;
    int second = 0;
    long wins = 0;    // for the first player
    long draws = 0;
    long losses = 0;
};

struct MatchSet {
    std::vector<std::string> players;
    std::vector<Match> matches;
};

struct RatingVector {
    std::vector<double> ratings;  // Elo points, anchor fixed at 0
    int anchor = 0;
    bool converged = true;
    std::vector<bool> clamped;  // players pinned at the +/-2000 guard
};

class DisconnectedError : public std::runtime_error {
public:
    explicit DisconnectedError(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateDiffError : public std::runtime_error {
public:
    explicit DegenerateDiffError(const std::string& what) : std::runtime_error(what) {}
};

// Win-equivalent expectation p + q/2 for an Elo difference d.
double expected_score(double d);

struct InnerProbabilities {
    double p = 0, q = 0, r = 0;
};

// Maximizes a*log p + b*log q + c*log r subject to p+q+r = 1 and the Elo
// constraint 400*log10((p+q/2)/(r+q/2)) = d. The constraints pin p+q/2 to
// expected_score(d); the remaining 1-D problem in q is strictly concave.
InnerProbabilities inner_probabilities(double d, double a, double b, double c);

double log_likelihood(const RatingVector& ratings, const MatchSet& ms);

struct FitOptions {
    double tolerance = 1e-4;  // max rating change per sweep, Elo
    int max_sweeps = 2000;
    double clamp = 2000.0;
};

RatingVector fit(const MatchSet& ms, int anchor = 0, const FitOptions& opts = {});

// CSV interfaces: match files with header `first,second,wins,draws,losses`,
// rating reports with header `player,rating,games`.
MatchSet load_match_csv(const std::string& text);
std::string rating_report_csv(const MatchSet& ms, const RatingVector& rv);

}  // namespace sai

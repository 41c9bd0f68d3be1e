#pragma once

#include <stdexcept>

namespace sai {

// Sigmoid winrate parameters from the current player's perspective:
// alpha is the expected on-board score lead (komi excluded), beta the
// per-point steepness.
struct SigmoidParams {
    double alpha = 0.0;
    double beta = 1.0;
};

// rho(x) = 1 / (1 + exp(-beta * (alpha + k_s + x))), with k_s the signed komi.
struct WinrateCurve {
    SigmoidParams params;
    double signed_komi = 0.0;
};

// Bonus-point interval over which value_nu averages the sigmoid. Owned by the
// search-root player; endpoints in that player's bonus coordinates.
struct BonusInterval {
    double x_mu = 0.0;
    double x_lambda = 0.0;
};

struct AgentConfig {
    double lambda = 0.0;
    double mu = 0.0;
    double activation_threshold = 0.0;  // 0 means always active
};

void validate(const AgentConfig& a);

// Numerically safe log(1 + exp(z)).
double softplus(double z);
double logit(double p);

double winrate(const WinrateCurve& c, double x);

// Inverse of the sigmoid at the convex combination eta*0.5 + (1-eta)*rho(0).
// bonus_for_target(c, 0) == 0 and bonus_for_target(c, 1) == -(alpha + k_s).
double bonus_for_target(const WinrateCurve& c, double eta);

BonusInterval make_interval(const WinrateCurve& root_curve, const AgentConfig& agent);

// Integral mean of rho over the interval (exact closed form); falls back to
// the midpoint value when the interval is degenerate. If the evaluated node's
// player is not the interval owner, the interval is negated pointwise and the
// result complemented to 1.
double value_nu(const WinrateCurve& c, const BonusInterval& iv,
                bool node_player_matches_root);

}  // namespace sai

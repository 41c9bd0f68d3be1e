#include "sai/value_model.hpp"

#include <cmath>

namespace sai {

namespace {
constexpr double kDegenerateInterval = 1e-6;
}

void validate(const AgentConfig& a) {
    if (!(a.mu >= 0 && a.mu <= a.lambda && a.lambda <= 1.0)) {
        throw std::invalid_argument("agent requires 0 <= mu <= lambda <= 1");
    }
    if (!(a.activation_threshold >= 0 && a.activation_threshold <= 1.0)) {
        throw std::invalid_argument("activation threshold must be in [0,1]");
    }
}

double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double logit(double p) {
    return std::log(p) - std::log1p(-p);
}

double winrate(const WinrateCurve& c, double x) {
    double z = c.params.beta * (c.params.alpha + c.signed_komi + x);
    // 1/(1+exp(-z)) without overflow in either tail.
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double bonus_for_target(const WinrateCurve& c, double eta) {
    if (c.params.beta <= 0) throw std::invalid_argument("beta must be positive");
    if (eta == 0.0) return 0.0;
    double shift = c.params.alpha + c.signed_komi;
    if (eta == 1.0) return -shift;
    double target = eta * 0.5 + (1.0 - eta) * winrate(c, 0.0);
    return -shift + logit(target) / c.params.beta;
}

BonusInterval make_interval(const WinrateCurve& root_curve, const AgentConfig& agent) {
    return BonusInterval{bonus_for_target(root_curve, agent.mu),
                         bonus_for_target(root_curve, agent.lambda)};
}

// Antiderivative of rho: (1/beta) * softplus(beta * (alpha + k_s + x)).
static double integral_mean(const WinrateCurve& c, double a, double b) {
    if (std::abs(b - a) < kDegenerateInterval) {
        return winrate(c, 0.5 * (a + b));
    }
    double beta = c.params.beta;
    double shift = c.params.alpha + c.signed_komi;
    double fa = softplus(beta * (shift + a)) / beta;
    double fb = softplus(beta * (shift + b)) / beta;
    return (fb - fa) / (b - a);
}

double value_nu(const WinrateCurve& c, const BonusInterval& iv,
                bool node_player_matches_root) {
    if (node_player_matches_root) {
        return integral_mean(c, iv.x_mu, iv.x_lambda);
    }
    return 1.0 - integral_mean(c, -iv.x_lambda, -iv.x_mu);
}

}  // namespace sai

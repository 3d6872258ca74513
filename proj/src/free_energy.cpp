#include "fea/free_energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fea {

namespace {

constexpr double kLogFloor = 1e-300;

// ln x with the convention used by F: exact zeros map to -infinity (so the
// KL-style sum can go to +infinity), denormal-small positives are clamped to
// keep intermediate arithmetic out of the denormal range.
double safe_log(double x) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    if (x < kLogFloor) return std::log(kLogFloor);
    return std::log(x);
}

// ln x clamped on both sides; used by the gradient, which must stay finite
// so that a descent step can move mass away from impossible cells.
double clamped_log(double x) {
    if (x < kLogFloor) return std::log(kLogFloor);
    return std::log(x);
}

} // namespace

GenerativeSlice generative_joint(const WorldConfig& cfg, const BrainState& b, Sensation s,
                                 Action a) {
    if (static_cast<int>(b.size()) != cfg.n)
        throw std::invalid_argument("generative_joint: brain state size does not match world size");
    const Belief q = softmax(b);
    GenerativeSlice slice;
    slice.joint.assign(cfg.n, 0.0);
    for (int psi_next = 0; psi_next < cfg.n; ++psi_next) {
        double mass = 0.0;
        for (int psi : pre_set(cfg, psi_next, a))
            mass += transition_prob(cfg, psi_next, psi, a) * sensation_prob(cfg, s, psi) * q[psi];
        slice.joint[psi_next] = mass;
        slice.marginal += mass;
    }
    return slice;
}

Belief prediction_prior(const WorldConfig& cfg, const BrainState& b, Action a) {
    if (static_cast<int>(b.size()) != cfg.n)
        throw std::invalid_argument("prediction_prior: brain state size does not match world size");
    const Belief q = softmax(b);
    Belief prior(cfg.n, 0.0);
    for (int psi_next = 0; psi_next < cfg.n; ++psi_next)
        for (int psi : pre_set(cfg, psi_next, a))
            prior[psi_next] += transition_prob(cfg, psi_next, psi, a) * q[psi];
    return prior;
}

double free_energy(const GenerativeSlice& slice, const BrainState& b_next) {
    if (b_next.size() != slice.joint.size())
        throw std::invalid_argument("free_energy: brain state size does not match slice");
    const std::vector<double> log_q = log_softmax(b_next);
    double f = 0.0;
    for (std::size_t j = 0; j < log_q.size(); ++j) {
        const double q = std::exp(log_q[j]);
        if (q <= 0.0) continue; // 0 ln 0 = 0
        f += q * (log_q[j] - safe_log(slice.joint[j]));
    }
    return f;
}

double free_energy(const WorldConfig& cfg, const BrainState& b_next, const BrainState& b,
                   Sensation s, Action a) {
    return free_energy(generative_joint(cfg, b, s, a), b_next);
}

Belief exact_posterior(const WorldConfig& cfg, const BrainState& b, Sensation s, Action a) {
    GenerativeSlice slice = generative_joint(cfg, b, s, a);
    if (slice.marginal <= 0.0)
        throw std::domain_error("exact_posterior: sensation has zero probability under the model");
    for (double& v : slice.joint) v /= slice.marginal;
    return std::move(slice.joint);
}

std::vector<double> free_energy_grad(const GenerativeSlice& slice, const BrainState& b_next) {
    if (b_next.size() != slice.joint.size())
        throw std::invalid_argument("free_energy_grad: brain state size does not match slice");
    const std::vector<double> log_q = log_softmax(b_next);
    const std::size_t n = log_q.size();
    std::vector<double> q(n), ratio(n);
    double f = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        q[j] = std::exp(log_q[j]);
        ratio[j] = log_q[j] - clamped_log(slice.joint[j]);
        f += q[j] * ratio[j];
    }
    std::vector<double> grad(n);
    for (std::size_t j = 0; j < n; ++j) grad[j] = q[j] * (ratio[j] - f);
    return grad;
}

std::vector<double> free_energy_grad(const WorldConfig& cfg, const BrainState& b_next,
                                     const BrainState& b, Sensation s, Action a) {
    return free_energy_grad(generative_joint(cfg, b, s, a), b_next);
}

} // namespace fea

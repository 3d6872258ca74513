#include "fea/inference.hpp"

#include <cmath>
#include <stdexcept>

#include "fea/free_energy.hpp"

namespace fea {

void OptimiserConfig::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("OptimiserConfig: eta must be positive and finite");
    if (iterations < 0)
        throw std::invalid_argument("OptimiserConfig: iterations must be non-negative");
}

BrainState optimise(const WorldConfig& cfg, const OptimiserConfig& opt, const BrainState& b,
                    Sensation s, Action a) {
    opt.validate();
    const GenerativeSlice slice = generative_joint(cfg, b, s, a);
    BrainState b_next = opt.warm_start ? b : BrainState(cfg.n, 0.0);
    for (int it = 0; it < opt.iterations; ++it) {
        const std::vector<double> grad = free_energy_grad(slice, b_next);
        for (int j = 0; j < cfg.n; ++j) b_next[j] -= opt.eta * grad[j];
    }
    return b_next;
}

Belief exact_filter_step(const WorldConfig& cfg, const Belief& prior, Sensation s, Action a) {
    if (static_cast<int>(prior.size()) != cfg.n)
        throw std::invalid_argument("exact_filter_step: prior size does not match world size");
    // Condition on the sensation...
    Belief posterior(cfg.n);
    double norm = 0.0;
    for (int psi = 0; psi < cfg.n; ++psi) {
        posterior[psi] = sensation_prob(cfg, s, psi) * prior[psi];
        norm += posterior[psi];
    }
    if (norm <= 0.0)
        throw std::domain_error("exact_filter_step: sensation has zero probability under the prior");
    // ...then predict through the transition kernel.
    Belief next(cfg.n, 0.0);
    for (int psi_next = 0; psi_next < cfg.n; ++psi_next)
        for (int psi : pre_set(cfg, psi_next, a))
            next[psi_next] += transition_prob(cfg, psi_next, psi, a) * posterior[psi] / norm;
    return next;
}

std::vector<Belief> filter_trace(const WorldConfig& cfg, const Belief& init,
                                 const std::vector<Observation>& obs) {
    std::vector<Belief> out;
    out.reserve(obs.size());
    Belief belief = init;
    for (const Observation& o : obs) {
        belief = exact_filter_step(cfg, belief, o.s, o.a);
        out.push_back(belief);
    }
    return out;
}

std::vector<Belief> replay_beliefs(const WorldConfig& cfg, const OptimiserConfig& opt,
                                   const std::vector<Observation>& obs) {
    std::vector<Belief> out;
    out.reserve(obs.size());
    BrainState b(cfg.n, 0.0);
    for (const Observation& o : obs) {
        b = optimise(cfg, opt, b, o.s, o.a);
        out.push_back(softmax(b));
    }
    return out;
}

} // namespace fea

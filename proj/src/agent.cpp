#include "fea/agent.hpp"

#include <stdexcept>

#include "fea/free_energy.hpp"

namespace fea {

void AgentConfig::validate(const WorldConfig& world) const {
    optimiser.validate();
    if (static_cast<int>(intention.size()) != world.n)
        throw std::invalid_argument("AgentConfig: intention size does not match world size");
}

Action select_action(const WorldConfig& cfg, const AgentConfig& agent, const BrainState& b,
                     Sensation s) {
    // The intention plays the role of the variational state: the chosen
    // action is the one under which the intended distribution is least
    // surprising given current beliefs and the sensation just received.
    Action best = kActions[0];
    double best_f = free_energy(cfg, agent.intention, b, s, best);
    for (std::size_t i = 1; i < kActions.size(); ++i) {
        const double f = free_energy(cfg, agent.intention, b, s, kActions[i]);
        if (f < best_f) {
            best = kActions[i];
            best_f = f;
        }
    }
    return best;
}

Trace simulate(const WorldConfig& cfg, const AgentConfig& agent, int psi_init, int steps,
               Rng& rng, const BrainState& initial_brain) {
    cfg.validate();
    agent.validate(cfg);
    if (psi_init < 0 || psi_init >= cfg.n)
        throw std::invalid_argument("simulate: psi_init outside the world");
    if (steps < 0) throw std::invalid_argument("simulate: steps must be non-negative");
    if (static_cast<int>(initial_brain.size()) != cfg.n)
        throw std::invalid_argument("simulate: initial brain state size does not match world size");

    Trace trace;
    trace.world = cfg;
    trace.agent = agent;
    trace.psi_init = psi_init;
    trace.records.reserve(steps);

    int psi = psi_init;
    BrainState b = initial_brain;
    for (int t = 0; t < steps; ++t) {
        StepRecord rec;
        rec.t = t;
        rec.psi_true = psi;
        rec.s = sample_sensation(cfg, psi, rng);
        rec.a = agent.policy == Policy::Active
                    ? select_action(cfg, agent, b, rec.s)
                    : (rng.bernoulli(0.5) ? Action::Clockwise : Action::Anticlockwise);
        rec.free_energy_chosen = free_energy(cfg, agent.intention, b, rec.s, rec.a);
        b = optimise(cfg, agent.optimiser, b, rec.s, rec.a);
        rec.belief = softmax(b);
        psi = step_world(cfg, psi, rec.a, rng);
        trace.records.push_back(std::move(rec));
    }
    return trace;
}

Trace simulate(const WorldConfig& cfg, const AgentConfig& agent, int psi_init, int steps,
               Rng& rng) {
    return simulate(cfg, agent, psi_init, steps, rng, BrainState(cfg.n, 0.0));
}

Trace simulate(const WorldConfig& cfg, const AgentConfig& agent, int psi_init, int steps,
               std::uint64_t seed) {
    Rng rng(seed);
    Trace trace = simulate(cfg, agent, psi_init, steps, rng);
    trace.seed = seed;
    return trace;
}

void attach_exact(Trace& trace) {
    Belief belief(trace.world.n, 1.0 / trace.world.n);
    for (StepRecord& rec : trace.records) {
        belief = exact_filter_step(trace.world, belief, rec.s, rec.a);
        rec.exact = belief;
    }
}

} // namespace fea

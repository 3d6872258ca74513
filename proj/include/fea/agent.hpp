#pragma once

#include <cstdint>
#include <vector>

#include "fea/belief.hpp"
#include "fea/inference.hpp"
#include "fea/rng.hpp"
#include "fea/world.hpp"

namespace fea {

enum class Policy {
    Active,       ///< pick the action minimising F against the intention
    RandomAction, ///< fair coin between the two actions
};

/// Everything the agent needs besides the world: how it updates its beliefs,
/// what it wants (the intention distribution, as a brain state), and how it
/// picks actions.
struct AgentConfig {
    OptimiserConfig optimiser;
    Intention intention;  ///< must have world-size entries
    Policy policy = Policy::Active;

    void validate(const WorldConfig& world) const;
};

/// One row of a simulation trace.
struct StepRecord {
    int t = 0;
    int psi_true = 0;                 ///< cell before the step's action
    Sensation s = Sensation::Low;
    Action a = Action::Anticlockwise;
    Belief belief;                    ///< softmax of the post-update brain state
    Belief exact;                     ///< exact-filter belief; empty unless attached
    double free_energy_chosen = 0.0;  ///< F(intention, b, s, a) for the action taken
};

struct Trace {
    WorldConfig world;
    AgentConfig agent;
    int psi_init = 0;
    std::uint64_t seed = 0;
    std::vector<StepRecord> records;
};

/// Chooses the action whose optimised free energy against the intention is
/// lowest. Ties resolve to Anticlockwise (the first action enumerated).
Action select_action(const WorldConfig& cfg, const AgentConfig& agent, const BrainState& b,
                     Sensation s);

/// Runs the perception-action loop for `steps` steps from cell `psi_init`,
/// drawing all randomness from `rng`. Per step: sample the sensation, choose
/// the action, update the brain state, then move the world.
Trace simulate(const WorldConfig& cfg, const AgentConfig& agent, int psi_init, int steps,
               Rng& rng, const BrainState& initial_brain);

Trace simulate(const WorldConfig& cfg, const AgentConfig& agent, int psi_init, int steps,
               Rng& rng);

/// Convenience overload owning its generator; `seed` is recorded in the trace.
Trace simulate(const WorldConfig& cfg, const AgentConfig& agent, int psi_init, int steps,
               std::uint64_t seed);

/// Fills in each record's exact-filter belief by running the exact Bayesian
/// filter (from a uniform initial belief) over the trace's observations.
void attach_exact(Trace& trace);

} // namespace fea

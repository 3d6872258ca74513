#pragma once

#include <vector>

#include "fea/belief.hpp"
#include "fea/world.hpp"

namespace fea {

/// One step of experience: the sensation received, then the action taken.
struct Observation {
    Sensation s = Sensation::Low;
    Action a = Action::Anticlockwise;
};

/// Gradient-descent settings for the approximate filter.
struct OptimiserConfig {
    double eta = 1.0;     ///< step size
    int iterations = 50;  ///< fixed number of full-gradient steps per call
    bool warm_start = false; ///< start from the previous brain state instead of zeros

    void validate() const;
};

/// Approximate filtering step: descends F(., b, s, a) from the null brain
/// state (all zeros) — or from b when warm-starting — for exactly
/// `iterations` steps of size `eta`, and returns the resulting brain state.
/// The generative slice is computed once; it does not depend on the iterate.
BrainState optimise(const WorldConfig& cfg, const OptimiserConfig& opt, const BrainState& b,
                    Sensation s, Action a);

/// Exact Bayesian filtering step on belief vectors: conditions the prior on
/// the sensation, then pushes it through the action's transition kernel.
/// Returns the belief over the *next* cell.
Belief exact_filter_step(const WorldConfig& cfg, const Belief& prior, Sensation s, Action a);

/// Runs the exact filter over a whole observation sequence starting from
/// `init`. Element t of the result is the belief about the cell at time t+1
/// given observations 0..t.
std::vector<Belief> filter_trace(const WorldConfig& cfg, const Belief& init,
                                 const std::vector<Observation>& obs);

/// Re-runs the gradient-descent filter over a recorded observation sequence
/// (e.g. with a different iteration budget). Element t is softmax of the
/// brain state after processing observation t.
std::vector<Belief> replay_beliefs(const WorldConfig& cfg, const OptimiserConfig& opt,
                                   const std::vector<Observation>& obs);

} // namespace fea

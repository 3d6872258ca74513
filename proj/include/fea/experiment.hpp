#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fea/agent.hpp"
#include "fea/trace_io.hpp"

namespace fea {

/// Agent configuration in user-facing terms: the intention is usually given
/// as a target cell plus sharpness and expanded to a brain state internally,
/// but an explicit vector can be supplied instead.
struct AgentSettings {
    double eta = 1.0;
    int iterations = 50;
    bool warm_start = false;
    int target = 4;
    double sharpness = 1.0;
    std::vector<double> intention; ///< if non-empty, overrides target/sharpness
    Policy policy = Policy::Active;
};

struct ExperimentConfig {
    WorldConfig world;
    AgentSettings agent;
    int steps = 500;
    int runs = 300;
    std::uint64_t master_seed = 0;
    std::vector<int> sweep;  ///< iteration budgets; empty = per-experiment default
    int psi_init = 0;
    int threads = 1;
    std::string output_dir = ".";

    void validate() const;
};

/// Expands AgentSettings into the runnable form against a concrete world.
AgentConfig make_agent(const WorldConfig& world, const AgentSettings& settings);

/// Single run with a flat (indifferent) intention and the free-energy action
/// rule; the agent just tracks its position. Writes trace.csv and
/// belief.pgm into output_dir.
Trace run_passive(const ExperimentConfig& cfg);

/// Single run with the configured intention; target-seeking behaviour.
/// Writes trace.csv and belief.pgm.
Trace run_active(const ExperimentConfig& cfg);

/// Random-walk comparison against the exact filter: one random-action run
/// fixes the (sensation, action) sequence, which is then replayed at each
/// iteration budget in the sweep (default {25, 50, 200}) as well as through
/// the exact filter. Writes trace.csv (exact columns filled), one
/// belief_<k>.pgm per budget, exact.pgm, and kl.csv.
ComparisonTable run_comparison(const ExperimentConfig& cfg);

/// Visit-frequency profiles: `runs` independent runs per sweep value
/// (default {20, 50, 100}), each from a uniformly random start cell, with
/// per-cell mean and sample standard deviation of visit frequency. Runs may
/// execute on `threads` worker threads; results are identical regardless of
/// thread count. Writes profile.csv.
std::vector<LocationProfile> run_profile(const ExperimentConfig& cfg);

} // namespace fea

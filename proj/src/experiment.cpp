#include "fea/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <thread>

namespace fea {

namespace {

const std::vector<int> kComparisonSweep = {25, 50, 200};
const std::vector<int> kProfileSweep = {20, 50, 100};

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error(dir, "cannot create output directory: " + ec.message());
}

std::vector<Belief> belief_rows(const Trace& trace) {
    std::vector<Belief> rows;
    rows.reserve(trace.records.size());
    for (const StepRecord& rec : trace.records) rows.push_back(rec.belief);
    return rows;
}

Trace run_single(const ExperimentConfig& cfg, const AgentSettings& settings) {
    cfg.validate();
    const AgentConfig agent = make_agent(cfg.world, settings);
    Trace trace = simulate(cfg.world, agent, cfg.psi_init, cfg.steps, cfg.master_seed);
    ensure_dir(cfg.output_dir);
    const std::string trace_path = join(cfg.output_dir, "trace.csv");
    write_trace_csv(trace, trace_path);
    validate_trace_csv(trace_path);
    render_heatmap(belief_rows(trace), join(cfg.output_dir, "belief.pgm"));
    return trace;
}

} // namespace

void ExperimentConfig::validate() const {
    world.validate();
    if (steps < 1) throw std::invalid_argument("ExperimentConfig: steps must be >= 1");
    if (runs < 1) throw std::invalid_argument("ExperimentConfig: runs must be >= 1");
    for (int k : sweep)
        if (k < 1) throw std::invalid_argument("ExperimentConfig: sweep entries must be >= 1");
    if (psi_init < 0 || psi_init >= world.n)
        throw std::invalid_argument("ExperimentConfig: psi_init outside the world");
    if (threads < 1) throw std::invalid_argument("ExperimentConfig: threads must be >= 1");
    OptimiserConfig{agent.eta, agent.iterations, agent.warm_start}.validate();
    if (agent.intention.empty()) {
        if (agent.target < 0 || agent.target >= world.n)
            throw std::invalid_argument("ExperimentConfig: intention target outside the world");
        if (!(agent.sharpness >= 0.0) || !std::isfinite(agent.sharpness))
            throw std::invalid_argument("ExperimentConfig: sharpness must be non-negative");
    } else if (static_cast<int>(agent.intention.size()) != world.n) {
        throw std::invalid_argument("ExperimentConfig: intention size does not match world size");
    }
}

AgentConfig make_agent(const WorldConfig& world, const AgentSettings& settings) {
    AgentConfig agent;
    agent.optimiser = OptimiserConfig{settings.eta, settings.iterations, settings.warm_start};
    agent.intention = settings.intention.empty()
                          ? intention_from_target(world.n, settings.target, settings.sharpness)
                          : settings.intention;
    agent.policy = settings.policy;
    agent.validate(world);
    return agent;
}

Trace run_passive(const ExperimentConfig& cfg) {
    AgentSettings settings = cfg.agent;
    settings.intention.clear();
    settings.sharpness = 0.0; // indifferent: every cell equally desired
    settings.policy = Policy::Active;
    return run_single(cfg, settings);
}

Trace run_active(const ExperimentConfig& cfg) {
    AgentSettings settings = cfg.agent;
    settings.policy = Policy::Active;
    return run_single(cfg, settings);
}

ComparisonTable run_comparison(const ExperimentConfig& cfg) {
    cfg.validate();
    AgentSettings settings = cfg.agent;
    settings.policy = Policy::RandomAction; // inference over a random walk
    const AgentConfig agent = make_agent(cfg.world, settings);
    Trace trace = simulate(cfg.world, agent, cfg.psi_init, cfg.steps, cfg.master_seed);
    attach_exact(trace);

    std::vector<Observation> obs;
    obs.reserve(trace.records.size());
    for (const StepRecord& rec : trace.records) obs.push_back({rec.s, rec.a});

    ComparisonTable table;
    table.sweep = cfg.sweep.empty() ? kComparisonSweep : cfg.sweep;
    std::vector<std::vector<Belief>> approx;
    for (int k : table.sweep) {
        OptimiserConfig opt{settings.eta, k, settings.warm_start};
        approx.push_back(replay_beliefs(cfg.world, opt, obs));
    }
    std::vector<Belief> exact;
    exact.reserve(trace.records.size());
    for (const StepRecord& rec : trace.records) exact.push_back(rec.exact);

    for (std::size_t i = 0; i < table.sweep.size(); ++i) {
        std::vector<double> kl_col, h_col;
        kl_col.reserve(obs.size());
        h_col.reserve(obs.size());
        for (std::size_t t = 0; t < obs.size(); ++t) {
            kl_col.push_back(kl_divergence(approx[i][t], exact[t]));
            h_col.push_back(entropy(approx[i][t]));
        }
        table.kl.push_back(std::move(kl_col));
        table.entropy.push_back(std::move(h_col));
    }
    table.entropy_exact.reserve(obs.size());
    for (const Belief& e : exact) table.entropy_exact.push_back(entropy(e));

    ensure_dir(cfg.output_dir);
    const std::string trace_path = join(cfg.output_dir, "trace.csv");
    write_trace_csv(trace, trace_path);
    validate_trace_csv(trace_path);
    for (std::size_t i = 0; i < table.sweep.size(); ++i)
        render_heatmap(approx[i],
                       join(cfg.output_dir, "belief_" + std::to_string(table.sweep[i]) + ".pgm"));
    render_heatmap(exact, join(cfg.output_dir, "exact.pgm"));
    const std::string kl_path = join(cfg.output_dir, "kl.csv");
    write_kl_csv(table, kl_path);
    validate_kl_csv(kl_path);
    return table;
}

std::vector<LocationProfile> run_profile(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<int>& sweep = cfg.sweep.empty() ? kProfileSweep : cfg.sweep;
    AgentSettings settings = cfg.agent;
    settings.policy = Policy::Active;

    // One slot per (sweep value, run); the slot index alone fixes the seed,
    // so any assignment of slots to threads yields the same numbers.
    const std::size_t total = sweep.size() * static_cast<std::size_t>(cfg.runs);
    std::vector<std::vector<double>> freq(total);
    std::atomic<std::size_t> next_slot{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t slot = next_slot.fetch_add(1);
            if (slot >= total) return;
            AgentSettings s = settings;
            s.iterations = sweep[slot / cfg.runs];
            const AgentConfig agent = make_agent(cfg.world, s);
            Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(slot)));
            const int psi_init = rng.uniform_int(cfg.world.n); // random start cell
            const Trace trace = simulate(cfg.world, agent, psi_init, cfg.steps, rng);
            std::vector<double> f(cfg.world.n, 0.0);
            for (const StepRecord& rec : trace.records) f[rec.psi_true] += 1.0;
            for (double& v : f) v /= cfg.steps;
            freq[slot] = std::move(f);
        }
    };

    const int workers = std::min<int>(cfg.threads, static_cast<int>(total));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    std::vector<LocationProfile> profiles;
    for (std::size_t si = 0; si < sweep.size(); ++si) {
        LocationProfile p;
        p.iterations = sweep[si];
        p.mean.assign(cfg.world.n, 0.0);
        p.stddev.assign(cfg.world.n, 0.0);
        const std::size_t base = si * cfg.runs;
        for (int r = 0; r < cfg.runs; ++r)
            for (int c = 0; c < cfg.world.n; ++c) p.mean[c] += freq[base + r][c];
        for (double& m : p.mean) m /= cfg.runs;
        if (cfg.runs > 1) {
            for (int r = 0; r < cfg.runs; ++r)
                for (int c = 0; c < cfg.world.n; ++c) {
                    const double d = freq[base + r][c] - p.mean[c];
                    p.stddev[c] += d * d;
                }
            for (double& sd : p.stddev) sd = std::sqrt(sd / (cfg.runs - 1));
        }
        profiles.push_back(std::move(p));
    }

    ensure_dir(cfg.output_dir);
    const std::string path = join(cfg.output_dir, "profile.csv");
    write_profile_csv(profiles, path);
    validate_profile_csv(path);
    return profiles;
}

} // namespace fea

#include "fea/world.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fea {

namespace {

void check_cell(const WorldConfig& cfg, int psi, const char* what) {
    if (psi < 0 || psi >= cfg.n) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(psi) +
                                " outside [0, " + std::to_string(cfg.n) + ")");
    }
}

} // namespace

void WorldConfig::validate() const {
    if (n < 2) throw std::invalid_argument("world.n must be >= 2");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("world.rho must be in [0, 1]");
    if (!(omega >= 0.0)) throw std::invalid_argument("world.omega must be >= 0");
    if (!(k_max > 0.0 && k_max <= 1.0)) throw std::invalid_argument("world.k_max must be in (0, 1]");
    if (psi0 < 0 || psi0 >= n) throw std::invalid_argument("world.psi0 must be in [0, n)");
}

double transition_prob(const WorldConfig& cfg, int psi_next, int psi, Action a) {
    check_cell(cfg, psi_next, "psi_next");
    check_cell(cfg, psi, "psi");
    if (psi_next == wrap_cell(psi + action_step(a), cfg.n)) return cfg.rho;
    if (psi_next == psi) return 1.0 - cfg.rho;
    return 0.0;
}

double sensation_prob(const WorldConfig& cfg, Sensation s, int psi) {
    check_cell(cfg, psi, "psi");
    const int d = circular_distance(cfg.n, psi, cfg.psi0);
    const double high = cfg.k_max * std::exp(-cfg.omega * d);
    return s == Sensation::High ? high : 1.0 - high;
}

PreSet pre_set(const WorldConfig& cfg, int psi_next, Action a) {
    check_cell(cfg, psi_next, "psi_next");
    PreSet out;
    const int moved_from = wrap_cell(psi_next - action_step(a), cfg.n);
    if (cfg.rho < 1.0) out.cells[out.count++] = psi_next;    // stayed put
    if (cfg.rho > 0.0) out.cells[out.count++] = moved_from;  // moved in
    return out;
}

int step_world(const WorldConfig& cfg, int psi, Action a, Rng& rng) {
    check_cell(cfg, psi, "psi");
    if (rng.bernoulli(cfg.rho)) return wrap_cell(psi + action_step(a), cfg.n);
    return psi;
}

Sensation sample_sensation(const WorldConfig& cfg, int psi, Rng& rng) {
    return rng.bernoulli(sensation_prob(cfg, Sensation::High, psi)) ? Sensation::High
                                                                    : Sensation::Low;
}

} // namespace fea

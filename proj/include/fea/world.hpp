#pragma once

#include <array>
#include <cstdint>

#include "fea/ring.hpp"
#include "fea/rng.hpp"

namespace fea {

/// Binary chemical sensor reading.
enum class Sensation : std::uint8_t { Low = 0, High = 1 };

/// One-cell move along the ring.
enum class Action : std::int8_t { Anticlockwise = -1, Clockwise = 1 };

inline int to_int(Sensation s) { return s == Sensation::High ? 1 : 0; }
inline int action_step(Action a) { return static_cast<int>(a); }

constexpr std::array<Action, 2> kActions{Action::Anticlockwise, Action::Clockwise};

/// A periodic 1-D world of n cells with a chemical source at psi0.
/// The agent's motor succeeds with probability rho; the sensor fires High
/// with probability k_max * exp(-omega * d(psi, psi0)).
struct WorldConfig {
    int n = 16;
    double rho = 0.75;
    double omega = 0.0866433975699931609;  // ln(4)/16
    double k_max = 0.9170040432046712;     // 4^(-1/16)
    int psi0 = 8;

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;
};

/// P(psi_next | psi, a): 1-rho to stay, rho to move one cell in direction a.
double transition_prob(const WorldConfig& cfg, int psi_next, int psi, Action a);

/// P(s | psi): exponential concentration profile around the source.
double sensation_prob(const WorldConfig& cfg, Sensation s, int psi);

/// Cells from which psi_next is reachable under action a.
/// Two predecessors for 0 < rho < 1, one for the degenerate rho values.
struct PreSet {
    std::array<int, 2> cells{};
    int count = 0;

    const int* begin() const { return cells.data(); }
    const int* end() const { return cells.data() + count; }
};

PreSet pre_set(const WorldConfig& cfg, int psi_next, Action a);

/// Sample the next position from P(psi' | psi, a).
int step_world(const WorldConfig& cfg, int psi, Action a, Rng& rng);

/// Sample a sensor reading from P(s | psi).
Sensation sample_sensation(const WorldConfig& cfg, int psi, Rng& rng);

} // namespace fea

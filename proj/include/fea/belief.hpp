#pragma once

#include <vector>

namespace fea {

/// Unnormalised log-preferences over cells; softmax decodes it to a belief.
using BrainState = std::vector<double>;

/// Categorical distribution over cells (a point on the probability simplex).
using Belief = std::vector<double>;

/// A brain state read as the parameters of a desired distribution.
using Intention = BrainState;

/// Numerically stable softmax. Throws std::domain_error on non-finite input.
Belief softmax(const BrainState& b);

/// log softmax(b), computed without forming the exponentials' ratio.
std::vector<double> log_softmax(const BrainState& b);

/// KL(q || p) in nats. Returns +infinity where q puts mass that p lacks.
double kl_divergence(const Belief& q, const Belief& p);

/// Shannon entropy in nats, with 0 ln 0 == 0.
double entropy(const Belief& q);

/// Total-variation distance, 0.5 * sum |q_i - p_i|.
double total_variation(const Belief& q, const Belief& p);

/// Intention whose softmax peaks at `target` and decays by a factor
/// exp(-sharpness) per cell of ring distance. sharpness 0 gives the
/// uniform (no-preference) intention.
Intention intention_from_target(int n, int target, double sharpness);

} // namespace fea

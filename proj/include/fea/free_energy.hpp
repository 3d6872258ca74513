#pragma once

#include <vector>

#include "fea/belief.hpp"
#include "fea/world.hpp"

namespace fea {

/// One (s, a)-slice of the agent's generative model: joint[psi'] is
/// p(psi', s | b, a) and marginal is p(s | b, a) = sum of joint.
struct GenerativeSlice {
    std::vector<double> joint;
    double marginal = 0.0;
};

/// Builds the generative joint by summing over the predecessor set of each
/// next cell, so a slice costs O(n) rather than O(n^2).
GenerativeSlice generative_joint(const WorldConfig& cfg, const BrainState& b, Sensation s,
                                 Action a);

/// Predicted distribution over the next cell before seeing the sensation:
/// prior[psi'] = sum_psi P(psi' | psi, a) softmax(b)[psi].
Belief prediction_prior(const WorldConfig& cfg, const BrainState& b, Action a);

/// F(b', b, s, a) = sum_psi' q(psi'|b') ln( q(psi'|b') / p(psi', s | b, a) ).
/// Returns +infinity if q puts mass on a cell whose joint entry is exactly
/// zero (possible only at the degenerate rho values or with non-softmax
/// priors); never throws for that case.
double free_energy(const WorldConfig& cfg, const BrainState& b_next, const BrainState& b,
                   Sensation s, Action a);

/// Same, against a precomputed slice; this is the optimiser's inner-loop form.
double free_energy(const GenerativeSlice& slice, const BrainState& b_next);

/// Exact one-step Bayesian posterior p(psi' | s, b, a) = joint / marginal.
/// Throws std::domain_error if the marginal is zero.
Belief exact_posterior(const WorldConfig& cfg, const BrainState& b, Sensation s, Action a);

/// Partial derivatives of F with respect to each component of b'.
///
/// Through the softmax Jacobian dq_i/db'_j = q_i (delta_ij - q_j), the sum
/// over cells collapses to grad_j = q_j (L_j - F) with L_j the pointwise log
/// ratio; that closed form is what gets evaluated. Logs of the joint are
/// clamped at 1e-300 so descent steps stay finite even where F itself is
/// infinite.
std::vector<double> free_energy_grad(const WorldConfig& cfg, const BrainState& b_next,
                                     const BrainState& b, Sensation s, Action a);

std::vector<double> free_energy_grad(const GenerativeSlice& slice, const BrainState& b_next);

} // namespace fea

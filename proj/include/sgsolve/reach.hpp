#pragma once

#include <cstdint>
#include <vector>

#include "sgsolve/game.hpp"

namespace sgsolve::reach {

/// A stochastic game in which every state has exactly one action. Owner tags
/// are irrelevant; max and min over a singleton coincide.
class MarkovChain {
public:
    /// Throws std::invalid_argument unless every state has exactly one action.
    explicit MarkovChain(StochasticGame game);

    const StochasticGame& game() const { return game_; }
    std::uint32_t num_states() const { return game_.num_states(); }

private:
    StochasticGame game_;
};

/// Expected value of f over the successor distribution of action `a` at `s`.
double state_action_expectation(const StochasticGame& game, const ValueVector& f,
                                std::uint32_t s, std::uint32_t a);

/// Exact-arithmetic twin of state_action_expectation, used by oracle checks.
Rational state_action_expectation_exact(const StochasticGame& game,
                                        const std::vector<Rational>& f,
                                        std::uint32_t s, std::uint32_t a);

/**
 * One application of the reachability Bellman operator: 1 on targets, the
 * max (Maximizer) or min (Minimizer) of state-action expectations elsewhere.
 */
ValueVector bellman_apply(const StochasticGame& game, const ValueVector& f);

std::vector<Rational> bellman_apply_exact(const StochasticGame& game,
                                          const std::vector<Rational>& f);

/**
 * States of the chain that reach the target set with probability zero.
 * Purely graph-based: backward reachability from the targets over
 * positive-probability edges, complemented. Returned sorted ascending.
 */
std::vector<std::uint32_t> mc_zero_states(const MarkovChain& mc);

/**
 * Modified Bellman backup: 1 on targets, 0 on the given zero set, weighted
 * successor sum elsewhere. `zeros` must be mc_zero_states(mc).
 */
ValueVector mc_modified_bellman_apply(const MarkovChain& mc, const ValueVector& f,
                                      const std::vector<std::uint32_t>& zeros);

/**
 * Exact reachability probabilities of the chain: 1 on targets, 0 on the zero
 * set, and the unique solution of the linear system on the remaining states.
 * Float mode: Gaussian elimination with partial pivoting (pivot tolerance
 * 1e-12). A singular system indicates a bug and throws std::logic_error.
 */
ValueVector mc_reachability_exact(const MarkovChain& mc);

/// Rational-arithmetic mode of the same solve; this is what the oracle uses.
/// Every transition must carry its exact rational probability (the parser
/// and the generators guarantee this); float-only games are rejected.
std::vector<Rational> mc_reachability_exact_rational(const MarkovChain& mc);

}  // namespace sgsolve::reach

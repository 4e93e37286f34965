#pragma once

#include <optional>
#include <string_view>

#include "sgsolve/game.hpp"

namespace sgsolve::solvers {

/// Widest path operator: solves the widest path game of `u` (Dijkstra
/// engine) and returns its value function. Pure in (game, u).
ValueVector omega_apply(const StochasticGame& game, const ValueVector& u);

/**
 * Plain value iteration. Iterates the Bellman backup from the zero vector
 * and stops once the max-norm difference of consecutive iterates drops to
 * 2*epsilon. The report carries no sound upper bound (upper is pinned to 1)
 * and is flagged precision_sound = false: the stopping rule can halt
 * arbitrarily far from the value.
 */
SolveReport value_iteration(const StochasticGame& game, const SolverConfig& cfg);

/**
 * Naive bounded value iteration: Bellman backups from both the zero and the
 * one vector. Converges only when the Bellman operator has a unique fixed
 * point; end components make the upper sequence stall above the value, which
 * surfaces as converged = false at the iteration cap.
 */
SolveReport naive_bvi(const StochasticGame& game, const SolverConfig& cfg);

/**
 * Bounded value iteration with the widest path operator driving the upper
 * sequence. Terminates on every finite game and returns an estimate within
 * epsilon of the value at the initial state.
 */
SolveReport two_wp_bvi(const StochasticGame& game, const SolverConfig& cfg);

/**
 * Player reduction with respect to a lower bound l: every Minimizer state
 * keeps exactly the actions minimizing the state-action expectation of l
 * (all ties kept) and all states become Maximizer's. Maximizer states are
 * unchanged. The result is MDP-shaped.
 */
StochasticGame player_reduction(const StochasticGame& game, const ValueVector& l);

/**
 * Bounded value iteration in the player-reduction style: each iteration
 * reduces the game with the current lower bound and runs the widest path
 * solver on the reduced (single-player) game, where Minimizer-action
 * removal never triggers.
 */
SolveReport one_wp_bvi(const StochasticGame& game, const SolverConfig& cfg);

enum class Algorithm { ValueIteration, NaiveBvi, OneWpBvi, TwoWpBvi };

SolveReport solve(const StochasticGame& game, Algorithm algo, const SolverConfig& cfg);

/// CLI names: "vi", "naive-bvi", "1wp", "2wp".
const char* algorithm_name(Algorithm algo);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

}  // namespace sgsolve::solvers

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgsolve/rational.hpp"

namespace sgsolve {

enum class Owner : std::uint8_t { Maximizer, Minimizer };

/// One probabilistic edge of an action. `prob` is the double used by the
/// iterative solvers; `exact` is the rational the model was built from and
/// is what the brute-force oracle computes with.
struct Transition {
    std::uint32_t target = 0;
    double prob = 0.0;
    Rational exact;
};

struct Action {
    std::string label;
    std::vector<Transition> dist;
};

struct State {
    Owner owner = Owner::Maximizer;
    std::vector<Action> actions;
};

/// Dense per-state values in [0,1]. Used for lower/upper bounds, widest path
/// values and Markov chain reachability vectors alike.
using ValueVector = std::vector<double>;

ValueVector bottom_vector(std::size_t n);
ValueVector top_vector(std::size_t n);

/// Memoryless pure strategies for both players. Entries are action positions
/// within the state's action list; only the entries of states the respective
/// player owns are meaningful.
struct StrategyPair {
    std::vector<std::uint32_t> max_choice;
    std::vector<std::uint32_t> min_choice;
};

struct SolverConfig {
    double epsilon = 1e-6;
    std::uint64_t max_iters = 100000;
    bool record_trace = false;
    /// Converge on the max gap over all states instead of the initial state.
    bool full_vector_gap = false;
};

struct TraceEntry {
    std::uint64_t iteration = 0;
    double lower = 0.0;
    double upper = 1.0;
};

struct SolveReport {
    double lower = 0.0;
    double upper = 1.0;
    double estimate = 0.5;
    std::uint64_t iterations = 0;
    bool converged = false;
    /// False for plain value iteration, whose stopping rule carries no
    /// precision guarantee.
    bool precision_sound = true;
    std::vector<TraceEntry> trace;
    ValueVector final_lower;
    ValueVector final_upper;
};

/**
 * A finite two-player stochastic game: states partitioned between Maximizer
 * and Minimizer, per-state action lists with sparse probabilistic successor
 * distributions, an initial state and a target set.
 *
 * Instances are immutable after construction and safe to share across
 * threads. Construction itself performs no semantic checking so that broken
 * inputs can still be diagnosed; run validate_game() before handing a game
 * of unknown origin to any solver.
 */
class StochasticGame {
public:
    StochasticGame(std::vector<State> states, std::uint32_t init_state,
                   std::vector<std::uint32_t> targets);

    std::uint32_t num_states() const { return static_cast<std::uint32_t>(states_.size()); }
    std::uint32_t init_state() const { return init_; }
    Owner owner(std::uint32_t s) const { return states_.at(s).owner; }

    const std::vector<Action>& actions(std::uint32_t s) const { return states_.at(s).actions; }
    const Action& action(std::uint32_t s, std::uint32_t a) const {
        return states_.at(s).actions.at(a);
    }

    bool is_target(std::uint32_t s) const {
        return s < target_mask_.size() && target_mask_[s];
    }
    /// Sorted, deduplicated. May contain out-of-range indices on unvalidated
    /// games; validate_game() reports those.
    const std::vector<std::uint32_t>& targets() const { return targets_; }

    const std::vector<State>& states() const { return states_; }

private:
    std::vector<State> states_;
    std::vector<std::uint32_t> targets_;
    std::vector<bool> target_mask_;
    std::uint32_t init_;
};

/**
 * Structural validation. Returns one human-readable entry per violated
 * invariant (state without actions, probabilities not summing to one,
 * invalid indices, duplicate action labels, ...); a valid game yields an
 * empty list.
 */
std::vector<std::string> validate_game(const StochasticGame& game);

/// Successors of action `a` at state `s` with positive probability, in
/// stored order. Throws std::out_of_range on invalid indices.
std::vector<std::uint32_t> post(const StochasticGame& game, std::uint32_t s, std::uint32_t a);

}  // namespace sgsolve

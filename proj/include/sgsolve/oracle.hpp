#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/reach.hpp"

namespace sgsolve::oracle {

/// Raised when the strategy-pair space exceeds the enumeration cap. Use an
/// iterative solver instead for such games.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultCap = 1000000;

/// Number of memoryless pure strategy pairs, saturating at UINT64_MAX.
std::uint64_t strategy_pair_count(const StochasticGame& game);

/// The Markov chain obtained by fixing both players' choices: each state
/// keeps exactly the chosen action's distribution; init and targets carry
/// over.
reach::MarkovChain induced_mc(const StochasticGame& game, const StrategyPair& pair);

/**
 * Brute-force ground truth, exact: for every state, the max over Maximizer
 * strategies of the min over Minimizer strategies of the induced chain's
 * reachability probability. Throws CapExceeded when the pair space is
 * larger than `cap`.
 */
std::vector<Rational> exact_values(const StochasticGame& game,
                                   std::uint64_t cap = kDefaultCap);

/// exact_values converted to doubles.
ValueVector exact_value(const StochasticGame& game, std::uint64_t cap = kDefaultCap);

/// Computes both optimization orders by brute force and reports whether they
/// agree exactly on every state.
bool minmax_equals_maxmin(const StochasticGame& game, std::uint64_t cap = kDefaultCap);

}  // namespace sgsolve::oracle

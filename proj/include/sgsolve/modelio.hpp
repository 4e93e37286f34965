#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "sgsolve/game.hpp"

namespace sgsolve::modelio {

/// Parse failure with the 1-based line it was detected on (0 for errors that
/// have no single line, e.g. a state never given an owner).
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error(line_ == 0 ? msg : "line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

/**
 * Parse the line-oriented model format:
 *
 *   sg 1
 *   states <n>
 *   owner <id> <max|min>        (required for every state)
 *   init <id>
 *   target <id> [<id> ...]      (repeatable, union)
 *   trans <state> <label> <succ>:<prob> [<succ>:<prob> ...]
 *
 * '#' starts a comment. Probabilities are decimals or rationals p/q with
 * 1 <= p <= q; every probability is converted to an exact rational once.
 * Rational distributions must sum to exactly 1; decimal ones within 1e-9
 * (and are then rescaled so the stored exact weights sum to 1). The parsed
 * game is validated; any defect raises ParseError.
 */
StochasticGame parse_model(const std::string& text);

/// parse_model on a file's contents. IO failure raises ParseError (line 0).
StochasticGame load_model(const std::string& path);

/**
 * Canonical text form: states ascending, actions in stored order,
 * probabilities as the shortest exact decimal when one exists and p/q
 * otherwise. Reparsing yields a structurally identical game.
 */
std::string serialize_model(const StochasticGame& game);

/// Parse one probability token ("3/4", "0.25", "1"). Throws ParseError on
/// anything outside (0, 1].
Rational parse_probability(const std::string& token);

/// The six-state running example: two end-component loops a Minimizer can
/// hide in, value 4/5 at the initial state.
StochasticGame gen_fig1();

/**
 * ECchain benchmark: two parallel chains of self-loop end components. The
 * top chain reaches the target with probability eps, the bottom with
 * 1 - eps, and the single Minimizer state picks between them. Requires
 * n >= 1 and 0 < eps < 1/2, which makes the value at the initial state eps.
 * State count is 2n + 4.
 */
StochasticGame gen_ecchain(std::uint32_t n, const Rational& eps);

/**
 * Seed-deterministic random game: owners uniform, 1..max_actions actions per
 * state, each a rational distribution (denominators <= 16) over at most
 * `branching` distinct successors. Guarantees at least one target unless
 * target_fraction is 0.
 */
StochasticGame gen_random_sg(std::uint32_t n_states, std::uint32_t max_actions,
                             std::uint32_t branching, double target_fraction,
                             std::uint64_t seed);

/**
 * A chain of k two-state gadgets, alternating Maximizer/Minimizer, each with
 * a self-loop action (an end component) and a forward action, ending in a
 * fair coin between target and sink. The value at the initial state is 1/2;
 * the self loops defeat the naive upper sequence.
 */
StochasticGame gen_many_loops(std::uint32_t k);

}  // namespace sgsolve::modelio

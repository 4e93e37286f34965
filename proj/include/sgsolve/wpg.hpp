#pragma once

#include <cstdint>
#include <vector>

#include "sgsolve/game.hpp"

namespace sgsolve::wpg {

/// Alternating state/action sequence s0 a0 s1 a1 ... sk. Each a_i must be
/// available at s_i and each s_{i+1} a positive-probability successor.
struct FinitePath {
    std::vector<std::uint32_t> states;
    std::vector<std::uint32_t> actions;  // one fewer entry than states
};

enum class TraceEventKind : std::uint8_t { Select, RemoveMinAction, Assign, Break };
enum class BreakReason : std::uint8_t { NoPair, ZeroWidth };

/// One event of a Dijkstra solver run. Select carries the selected pair and
/// its key; RemoveMinAction the discarded Minimizer pair; Assign the state
/// and its final (strictly positive) value; Break the loop exit reason.
struct TraceEvent {
    TraceEventKind kind = TraceEventKind::Break;
    std::uint32_t state = 0;
    std::uint32_t action = 0;
    double value = 0.0;
    BreakReason reason = BreakReason::NoPair;
};

using DijkstraTrace = std::vector<TraceEvent>;

/**
 * Bottleneck width of a finite path ending in the target set: the minimum
 * state-action expectation of u along the path. A path consisting of a
 * single target state has width 1. Throws std::invalid_argument on a
 * malformed path or one not ending in a target.
 */
double path_width(const StochasticGame& game, const ValueVector& u, const FinitePath& path);

/**
 * One application of the widest path Bellman backup with respect to u:
 * 1 on targets; elsewhere the max (Maximizer) or min (Minimizer) over
 * actions of min(width, best successor value), where Maximizer picks the
 * successor.
 */
ValueVector wp_bellman_apply(const StochasticGame& game, const ValueVector& u,
                             const ValueVector& f);

/**
 * Widest path value function via Kleene iteration of the backup from the
 * zero vector. Stabilizes exactly within |S| applications; failure to do so
 * indicates a bug and throws std::logic_error. This is the slow reference
 * the Dijkstra solver is checked against.
 */
ValueVector wp_value_kleene(const StochasticGame& game, const ValueVector& u);

struct DijkstraResult {
    ValueVector value;
    DijkstraTrace trace;
};

/**
 * Dijkstra-style widest path game solver. Repeatedly selects the unassigned
 * state-action pair with the largest key min(width, best assigned successor);
 * a selected Minimizer pair with alternatives left is discarded as
 * suboptimal, otherwise the state's value is fixed. Action removal operates
 * on a call-local working copy; the input game is never modified.
 *
 * Ties on equal keys prefer the lowest state index, then the lowest action
 * position, which makes traces reproducible.
 */
DijkstraResult wp_value_dijkstra(const StochasticGame& game, const ValueVector& u);

/**
 * Widest path width from s to the target set when both players follow the
 * given strategy pair and Maximizer picks successors. Returns 1 for s in
 * the target set.
 */
double widest_path_under_strategies(const StochasticGame& game, const ValueVector& u,
                                    const StrategyPair& pair, std::uint32_t s);

}  // namespace sgsolve::wpg

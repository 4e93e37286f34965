#include "sgsolve/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "sgsolve/reach.hpp"
#include "sgsolve/wpg.hpp"

namespace sgsolve::solvers {

ValueVector omega_apply(const StochasticGame& game, const ValueVector& u) {
    return wpg::wp_value_dijkstra(game, u).value;
}

namespace {

void check_config(const SolverConfig& cfg) {
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (cfg.max_iters < 1)
        throw std::invalid_argument("max_iters must be at least 1");
}

double gap_of(const StochasticGame& game, const SolverConfig& cfg, const ValueVector& lower,
              const ValueVector& upper) {
    if (!cfg.full_vector_gap)
        return upper[game.init_state()] - lower[game.init_state()];
    double gap = 0.0;
    for (std::size_t s = 0; s < lower.size(); ++s)
        gap = std::max(gap, upper[s] - lower[s]);
    return gap;
}

SolveReport finish(const StochasticGame& game, ValueVector lower, ValueVector upper,
                   std::uint64_t iterations, bool converged, bool sound,
                   std::vector<TraceEntry> trace) {
    SolveReport report;
    report.lower = lower[game.init_state()];
    report.upper = upper[game.init_state()];
    report.estimate = 0.5 * (report.lower + report.upper);
    report.iterations = iterations;
    report.converged = converged;
    report.precision_sound = sound;
    report.trace = std::move(trace);
    report.final_lower = std::move(lower);
    report.final_upper = std::move(upper);
    return report;
}

/**
 * Shared outer loop of the bounded algorithms: per iteration first the
 * Bellman backup on the lower bound, then `update_upper`, until the gap at
 * the initial state is no longer strictly above 2*epsilon or the cap is hit.
 * Iterations are counted from 1; a trace entry records both bounds at the
 * initial state after the full iteration.
 */
SolveReport run_bvi(const StochasticGame& game, const SolverConfig& cfg,
                    const std::function<ValueVector(const ValueVector& lower,
                                                    const ValueVector& upper)>& update_upper) {
    check_config(cfg);
    const std::uint32_t n = game.num_states();
    ValueVector lower = bottom_vector(n);
    ValueVector upper = top_vector(n);
    std::vector<TraceEntry> trace;
    std::uint64_t it = 0;
    bool converged = false;

    while (true) {
        if (gap_of(game, cfg, lower, upper) <= 2.0 * cfg.epsilon) {
            converged = true;
            break;
        }
        if (it >= cfg.max_iters)
            break;
        ++it;
        lower = reach::bellman_apply(game, lower);
        upper = update_upper(lower, upper);
        if (cfg.record_trace)
            trace.push_back({it, lower[game.init_state()], upper[game.init_state()]});
    }
    return finish(game, std::move(lower), std::move(upper), it, converged, true,
                  std::move(trace));
}

}  // namespace

SolveReport value_iteration(const StochasticGame& game, const SolverConfig& cfg) {
    check_config(cfg);
    const std::uint32_t n = game.num_states();
    ValueVector lower = bottom_vector(n);
    std::vector<TraceEntry> trace;
    std::uint64_t it = 0;
    bool converged = false;

    while (it < cfg.max_iters) {
        ValueVector next = reach::bellman_apply(game, lower);
        double diff = 0.0;
        for (std::uint32_t s = 0; s < n; ++s)
            diff = std::max(diff, std::abs(next[s] - lower[s]));
        lower = std::move(next);
        ++it;
        if (cfg.record_trace)
            trace.push_back({it, lower[game.init_state()], 1.0});
        if (diff <= 2.0 * cfg.epsilon) {
            converged = true;
            break;
        }
    }
    return finish(game, std::move(lower), top_vector(n), it, converged,
                  /*sound=*/false, std::move(trace));
}

SolveReport naive_bvi(const StochasticGame& game, const SolverConfig& cfg) {
    return run_bvi(game, cfg, [&](const ValueVector&, const ValueVector& upper) {
        return reach::bellman_apply(game, upper);
    });
}

SolveReport two_wp_bvi(const StochasticGame& game, const SolverConfig& cfg) {
    return run_bvi(game, cfg, [&](const ValueVector&, const ValueVector& upper) {
        return omega_apply(game, upper);
    });
}

StochasticGame player_reduction(const StochasticGame& game, const ValueVector& l) {
    const std::uint32_t n = game.num_states();
    std::vector<State> states(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        states[s].owner = Owner::Maximizer;
        const auto& actions = game.actions(s);
        if (game.owner(s) == Owner::Maximizer) {
            states[s].actions = actions;
            continue;
        }
        double best = 1.0;
        std::vector<double> phi(actions.size());
        for (std::uint32_t a = 0; a < actions.size(); ++a) {
            phi[a] = reach::state_action_expectation(game, l, s, a);
            best = std::min(best, phi[a]);
        }
        for (std::uint32_t a = 0; a < actions.size(); ++a)
            if (phi[a] == best)
                states[s].actions.push_back(actions[a]);
    }
    return StochasticGame(std::move(states), game.init_state(), game.targets());
}

SolveReport one_wp_bvi(const StochasticGame& game, const SolverConfig& cfg) {
    return run_bvi(game, cfg, [&](const ValueVector& lower, const ValueVector& upper) {
        StochasticGame reduced = player_reduction(game, lower);
        return wpg::wp_value_dijkstra(reduced, upper).value;
    });
}

SolveReport solve(const StochasticGame& game, Algorithm algo, const SolverConfig& cfg) {
    switch (algo) {
        case Algorithm::ValueIteration: return value_iteration(game, cfg);
        case Algorithm::NaiveBvi: return naive_bvi(game, cfg);
        case Algorithm::OneWpBvi: return one_wp_bvi(game, cfg);
        case Algorithm::TwoWpBvi: return two_wp_bvi(game, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

const char* algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::ValueIteration: return "vi";
        case Algorithm::NaiveBvi: return "naive-bvi";
        case Algorithm::OneWpBvi: return "1wp";
        case Algorithm::TwoWpBvi: return "2wp";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    if (name == "vi")
        return Algorithm::ValueIteration;
    if (name == "naive-bvi")
        return Algorithm::NaiveBvi;
    if (name == "1wp")
        return Algorithm::OneWpBvi;
    if (name == "2wp")
        return Algorithm::TwoWpBvi;
    return std::nullopt;
}

}  // namespace sgsolve::solvers

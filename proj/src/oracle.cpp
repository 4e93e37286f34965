#include "sgsolve/oracle.hpp"

#include <algorithm>
#include <string>

namespace sgsolve::oracle {

namespace {

// Odometer over the action counts of the given states. `advance` returns
// false after the last assignment has been visited. An empty state list is
// the single empty strategy.
struct StrategyEnumerator {
    const StochasticGame& game;
    std::vector<std::uint32_t> states;
    std::vector<std::uint32_t> current;

    StrategyEnumerator(const StochasticGame& g, Owner who) : game(g) {
        for (std::uint32_t s = 0; s < g.num_states(); ++s)
            if (g.owner(s) == who)
                states.push_back(s);
        current.assign(states.size(), 0);
    }

    void write_into(std::vector<std::uint32_t>& choice) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            choice[states[i]] = current[i];
    }

    bool advance() {
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (++current[i] < game.actions(states[i]).size())
                return true;
            current[i] = 0;
        }
        return false;
    }

    void reset() { current.assign(states.size(), 0); }
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

void check_cap(const StochasticGame& game, std::uint64_t cap) {
    const std::uint64_t pairs = strategy_pair_count(game);
    if (pairs > cap)
        throw CapExceeded("strategy-pair space of size " +
                          (pairs == UINT64_MAX ? std::string(">2^64")
                                               : std::to_string(pairs)) +
                          " exceeds the oracle cap of " + std::to_string(cap) +
                          "; use an iterative solver for this game");
}

std::vector<Rational> componentwise_opt(std::vector<Rational> acc,
                                        const std::vector<Rational>& v, bool maximize) {
    if (acc.empty())
        return v;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (maximize ? v[i] > acc[i] : v[i] < acc[i])
            acc[i] = v[i];
    }
    return acc;
}

// Outer optimization over `outer_owner` strategies of the inner opposite
// optimization; memoryless uniformly optimal strategies make the
// componentwise reading of the nested optimum correct.
std::vector<Rational> optimize(const StochasticGame& game, Owner outer_owner) {
    StrategyEnumerator outer(game, outer_owner);
    StrategyEnumerator inner(game, outer_owner == Owner::Maximizer ? Owner::Minimizer
                                                                   : Owner::Maximizer);
    const bool outer_max = outer_owner == Owner::Maximizer;

    StrategyPair pair;
    pair.max_choice.assign(game.num_states(), 0);
    pair.min_choice.assign(game.num_states(), 0);

    std::vector<Rational> outer_best;
    bool outer_more = true;
    while (outer_more) {
        outer.write_into(outer_max ? pair.max_choice : pair.min_choice);
        std::vector<Rational> inner_best;
        inner.reset();
        bool inner_more = true;
        while (inner_more) {
            inner.write_into(outer_max ? pair.min_choice : pair.max_choice);
            auto values = reach::mc_reachability_exact_rational(induced_mc(game, pair));
            inner_best = componentwise_opt(std::move(inner_best), values, !outer_max);
            inner_more = inner.advance();
        }
        outer_best = componentwise_opt(std::move(outer_best), inner_best, outer_max);
        outer_more = outer.advance();
    }
    return outer_best;
}

}  // namespace

std::uint64_t strategy_pair_count(const StochasticGame& game) {
    std::uint64_t count = 1;
    for (std::uint32_t s = 0; s < game.num_states(); ++s)
        count = saturating_mul(count, std::max<std::uint64_t>(1, game.actions(s).size()));
    return count;
}

reach::MarkovChain induced_mc(const StochasticGame& game, const StrategyPair& pair) {
    const std::uint32_t n = game.num_states();
    std::vector<State> states(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        const auto choice = game.owner(s) == Owner::Maximizer ? pair.max_choice.at(s)
                                                              : pair.min_choice.at(s);
        states[s].owner = Owner::Maximizer;
        states[s].actions.push_back(game.action(s, choice));
    }
    return reach::MarkovChain(
        StochasticGame(std::move(states), game.init_state(), game.targets()));
}

std::vector<Rational> exact_values(const StochasticGame& game, std::uint64_t cap) {
    check_cap(game, cap);
    return optimize(game, Owner::Maximizer);
}

ValueVector exact_value(const StochasticGame& game, std::uint64_t cap) {
    auto exact = exact_values(game, cap);
    ValueVector out(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i)
        out[i] = exact[i].to_double();
    return out;
}

bool minmax_equals_maxmin(const StochasticGame& game, std::uint64_t cap) {
    check_cap(game, cap);
    return optimize(game, Owner::Maximizer) == optimize(game, Owner::Minimizer);
}

}  // namespace sgsolve::oracle

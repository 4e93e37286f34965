#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/modelio.hpp"

namespace test_util {

using sgsolve::Owner;
using sgsolve::Rational;
using sgsolve::StochasticGame;
using sgsolve::ValueVector;

inline sgsolve::State state(Owner owner, std::vector<sgsolve::Action> actions) {
    sgsolve::State st;
    st.owner = owner;
    st.actions = std::move(actions);
    return st;
}

inline sgsolve::Action action(std::string label,
                              std::vector<std::pair<std::uint32_t, Rational>> dist) {
    sgsolve::Action a;
    a.label = std::move(label);
    for (auto& [target, p] : dist)
        a.dist.push_back({target, p.to_double(), p});
    return a;
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_all(const ValueVector& a, const ValueVector& b, double tol) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], tol))
            return false;
    return true;
}

inline double max_abs_diff(const ValueVector& a, const ValueVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline bool leq_all(const ValueVector& a, const ValueVector& b, double slack = 0.0) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i] + slack)
            return false;
    return true;
}

inline ValueVector random_unit_vector(std::mt19937_64& rng, std::size_t n) {
    ValueVector v(n);
    for (auto& x : v)
        x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

/// Componentwise min with another vector; keeps values a valid f <= f'.
inline ValueVector meet(const ValueVector& a, const ValueVector& b) {
    ValueVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::min(a[i], b[i]);
    return out;
}

inline ValueVector join(const ValueVector& a, const ValueVector& b) {
    ValueVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::max(a[i], b[i]);
    return out;
}

/// Turn the last state into an absorbing non-target sink. Plain random games
/// rarely contain inescapable traps, so their values collapse to 0 or 1; a
/// guaranteed sink makes strictly interior values common.
inline StochasticGame with_sink(const StochasticGame& game) {
    auto states = game.states();
    const std::uint32_t sink = game.num_states() - 1;
    sgsolve::Action stay;
    stay.label = "stay";
    stay.dist.push_back({sink, 1.0, Rational(1)});
    states[sink].actions = {stay};
    std::vector<std::uint32_t> targets;
    for (auto t : game.targets())
        if (t != sink)
            targets.push_back(t);
    return StochasticGame(std::move(states),
                          game.init_state() == sink ? 0 : game.init_state(), targets);
}

/// Small random games whose oracle stays cheap: up to 6 states, 3 actions.
/// Every third game carries a guaranteed sink for interior values.
inline StochasticGame small_random_game(std::uint64_t seed) {
    if (seed % 3 == 2)
        return with_sink(sgsolve::modelio::gen_random_sg(6, 3, 2, 0.3, seed));
    return sgsolve::modelio::gen_random_sg(2 + seed % 5, 1 + seed % 3, 2, 0.3, seed);
}

}  // namespace test_util

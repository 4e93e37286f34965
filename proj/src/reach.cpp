#include "sgsolve/reach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgsolve::reach {

MarkovChain::MarkovChain(StochasticGame game) : game_(std::move(game)) {
    for (std::uint32_t s = 0; s < game_.num_states(); ++s) {
        if (game_.actions(s).size() != 1)
            throw std::invalid_argument("Markov chain requires exactly one action per state; state " +
                                        std::to_string(s) + " has " +
                                        std::to_string(game_.actions(s).size()));
    }
}

double state_action_expectation(const StochasticGame& game, const ValueVector& f,
                                std::uint32_t s, std::uint32_t a) {
    const Action& act = game.action(s, a);
    double sum = 0.0;
    for (const Transition& tr : act.dist)
        sum += tr.prob * f.at(tr.target);
    return sum;
}

Rational state_action_expectation_exact(const StochasticGame& game,
                                        const std::vector<Rational>& f,
                                        std::uint32_t s, std::uint32_t a) {
    const Action& act = game.action(s, a);
    Rational sum;
    for (const Transition& tr : act.dist)
        sum += tr.exact * f.at(tr.target);
    return sum;
}

ValueVector bellman_apply(const StochasticGame& game, const ValueVector& f) {
    const std::uint32_t n = game.num_states();
    ValueVector out(n, 0.0);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (game.is_target(s)) {
            out[s] = 1.0;
            continue;
        }
        const auto& actions = game.actions(s);
        const bool maximize = game.owner(s) == Owner::Maximizer;
        double best = maximize ? 0.0 : 1.0;
        for (std::uint32_t a = 0; a < actions.size(); ++a) {
            double v = state_action_expectation(game, f, s, a);
            best = maximize ? std::max(best, v) : std::min(best, v);
        }
        out[s] = best;
    }
    return out;
}

std::vector<Rational> bellman_apply_exact(const StochasticGame& game,
                                          const std::vector<Rational>& f) {
    const std::uint32_t n = game.num_states();
    std::vector<Rational> out(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (game.is_target(s)) {
            out[s] = Rational(1);
            continue;
        }
        const auto& actions = game.actions(s);
        const bool maximize = game.owner(s) == Owner::Maximizer;
        Rational best = maximize ? Rational(0) : Rational(1);
        for (std::uint32_t a = 0; a < actions.size(); ++a) {
            Rational v = state_action_expectation_exact(game, f, s, a);
            if (maximize ? v > best : v < best)
                best = v;
        }
        out[s] = best;
    }
    return out;
}

std::vector<std::uint32_t> mc_zero_states(const MarkovChain& mc) {
    const StochasticGame& g = mc.game();
    const std::uint32_t n = g.num_states();

    std::vector<std::vector<std::uint32_t>> preds(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (const Transition& tr : g.action(s, 0).dist)
            if (tr.prob > 0.0 && tr.target < n)
                preds[tr.target].push_back(s);

    std::vector<bool> reaches(n, false);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t t : g.targets()) {
        if (t < n && !reaches[t]) {
            reaches[t] = true;
            stack.push_back(t);
        }
    }
    while (!stack.empty()) {
        std::uint32_t cur = stack.back();
        stack.pop_back();
        for (std::uint32_t p : preds[cur]) {
            if (!reaches[p]) {
                reaches[p] = true;
                stack.push_back(p);
            }
        }
    }

    std::vector<std::uint32_t> zeros;
    for (std::uint32_t s = 0; s < n; ++s)
        if (!reaches[s])
            zeros.push_back(s);
    return zeros;
}

ValueVector mc_modified_bellman_apply(const MarkovChain& mc, const ValueVector& f,
                                      const std::vector<std::uint32_t>& zeros) {
    const StochasticGame& g = mc.game();
    const std::uint32_t n = g.num_states();
    std::vector<bool> zero_mask(n, false);
    for (std::uint32_t z : zeros)
        zero_mask.at(z) = true;

    ValueVector out(n, 0.0);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (g.is_target(s))
            out[s] = 1.0;
        else if (zero_mask[s])
            out[s] = 0.0;
        else
            out[s] = state_action_expectation(g, f, s, 0);
    }
    return out;
}

namespace {

// Solve the reachability system restricted to states that are neither
// targets nor in the zero set: x = P x + b with b the one-step probability
// into the target set. Templated over double and Rational.
template <typename Num>
std::vector<Num> solve_restricted(const MarkovChain& mc,
                                  const std::vector<bool>& zero_mask,
                                  Num (*from_transition)(const Transition&),
                                  bool (*pivot_ok)(const Num&),
                                  bool (*pivot_better)(const Num&, const Num&)) {
    const StochasticGame& g = mc.game();
    const std::uint32_t n = g.num_states();

    std::vector<std::int32_t> row_of(n, -1);
    std::vector<std::uint32_t> state_of;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!g.is_target(s) && !zero_mask[s]) {
            row_of[s] = static_cast<std::int32_t>(state_of.size());
            state_of.push_back(s);
        }
    }
    const std::size_t m = state_of.size();

    // Augmented dense matrix [I - P_RR | b].
    std::vector<std::vector<Num>> mat(m, std::vector<Num>(m + 1, Num(0)));
    for (std::size_t i = 0; i < m; ++i) {
        mat[i][i] = Num(1);
        for (const Transition& tr : g.action(state_of[i], 0).dist) {
            Num p = from_transition(tr);
            if (g.is_target(tr.target))
                mat[i][m] += p;
            else if (!zero_mask[tr.target])
                mat[i][row_of[tr.target]] -= p;
        }
    }

    for (std::size_t k = 0; k < m; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (pivot_better(mat[i][k], mat[piv][k]))
                piv = i;
        if (!pivot_ok(mat[piv][k]))
            throw std::logic_error("singular reachability system after zero-state removal");
        if (piv != k)
            std::swap(mat[piv], mat[k]);
        for (std::size_t i = k + 1; i < m; ++i) {
            if (mat[i][k] == Num(0))
                continue;
            Num factor = mat[i][k] / mat[k][k];
            mat[i][k] = Num(0);
            for (std::size_t j = k + 1; j <= m; ++j)
                mat[i][j] -= factor * mat[k][j];
        }
    }

    std::vector<Num> x(m, Num(0));
    for (std::size_t k = m; k-- > 0;) {
        Num acc = mat[k][m];
        for (std::size_t j = k + 1; j < m; ++j)
            acc -= mat[k][j] * x[j];
        x[k] = acc / mat[k][k];
    }

    std::vector<Num> full(n, Num(0));
    for (std::uint32_t t : g.targets())
        if (t < n)
            full[t] = Num(1);
    for (std::size_t i = 0; i < m; ++i)
        full[state_of[i]] = x[i];
    return full;
}

double transition_double(const Transition& tr) { return tr.prob; }
Rational transition_exact(const Transition& tr) { return tr.exact; }

bool pivot_ok_double(const double& v) { return std::abs(v) > 1e-12; }
bool pivot_ok_rational(const Rational& v) { return !v.is_zero(); }

bool pivot_better_double(const double& a, const double& b) {
    return std::abs(a) > std::abs(b);
}
// Exact mode needs no magnitude pivoting; any nonzero pivot is exact.
bool pivot_better_rational(const Rational& a, const Rational& b) {
    return b.is_zero() && !a.is_zero();
}

std::vector<bool> zero_mask_of(const MarkovChain& mc) {
    std::vector<bool> mask(mc.num_states(), false);
    for (std::uint32_t z : mc_zero_states(mc))
        mask[z] = true;
    return mask;
}

}  // namespace

ValueVector mc_reachability_exact(const MarkovChain& mc) {
    return solve_restricted<double>(mc, zero_mask_of(mc), transition_double,
                                    pivot_ok_double, pivot_better_double);
}

std::vector<Rational> mc_reachability_exact_rational(const MarkovChain& mc) {
    const StochasticGame& g = mc.game();
    for (std::uint32_t s = 0; s < g.num_states(); ++s)
        for (const Transition& tr : g.action(s, 0).dist)
            if (tr.exact.is_zero() || tr.exact.is_negative())
                throw std::invalid_argument(
                    "rational-mode reachability requires exact transition probabilities; "
                    "state " + std::to_string(s) + " lacks them");
    return solve_restricted<Rational>(mc, zero_mask_of(mc), transition_exact,
                                      pivot_ok_rational, pivot_better_rational);
}

}  // namespace sgsolve::reach

#include "sgsolve/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace sgsolve {

ValueVector bottom_vector(std::size_t n) { return ValueVector(n, 0.0); }
ValueVector top_vector(std::size_t n) { return ValueVector(n, 1.0); }

StochasticGame::StochasticGame(std::vector<State> states, std::uint32_t init_state,
                               std::vector<std::uint32_t> targets)
    : states_(std::move(states)), targets_(std::move(targets)), init_(init_state) {
    std::sort(targets_.begin(), targets_.end());
    targets_.erase(std::unique(targets_.begin(), targets_.end()), targets_.end());
    target_mask_.assign(states_.size(), false);
    for (std::uint32_t t : targets_) {
        if (t < states_.size())
            target_mask_[t] = true;
    }
}

namespace {

std::string state_ref(std::uint32_t s) { return "state " + std::to_string(s); }

}  // namespace

std::vector<std::string> validate_game(const StochasticGame& game) {
    std::vector<std::string> out;
    const std::uint32_t n = game.num_states();

    if (n == 0)
        out.push_back("game has no states");
    if (game.init_state() >= n)
        out.push_back("initial state " + std::to_string(game.init_state()) +
                      " is out of range");
    for (std::uint32_t t : game.targets()) {
        if (t >= n)
            out.push_back("target state " + std::to_string(t) + " is out of range");
    }

    for (std::uint32_t s = 0; s < n; ++s) {
        const auto& actions = game.actions(s);
        if (actions.empty()) {
            out.push_back(state_ref(s) + " has no available action");
            continue;
        }
        std::unordered_set<std::string> labels;
        for (std::uint32_t a = 0; a < actions.size(); ++a) {
            const Action& act = actions[a];
            if (!labels.insert(act.label).second)
                out.push_back(state_ref(s) + " has duplicate action label '" + act.label + "'");
            if (act.dist.empty()) {
                out.push_back(state_ref(s) + " action '" + act.label +
                              "' has an empty distribution");
                continue;
            }
            double sum = 0.0;
            bool all_exact = true;
            Rational exact_sum;
            std::unordered_set<std::uint32_t> seen;
            for (const Transition& tr : act.dist) {
                if (tr.target >= n)
                    out.push_back(state_ref(s) + " action '" + act.label +
                                  "' has successor " + std::to_string(tr.target) +
                                  " out of range");
                else if (!seen.insert(tr.target).second)
                    out.push_back(state_ref(s) + " action '" + act.label +
                                  "' lists successor " + std::to_string(tr.target) +
                                  " more than once");
                if (!(tr.prob > 0.0))
                    out.push_back(state_ref(s) + " action '" + act.label +
                                  "' has a non-positive probability");
                sum += tr.prob;
                if (tr.exact.is_zero() || tr.exact.is_negative())
                    all_exact = false;
                else
                    exact_sum += tr.exact;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                out.push_back(state_ref(s) + " action '" + act.label +
                              "' probabilities sum to " + std::to_string(sum) +
                              ", not 1");
            else if (all_exact && exact_sum != Rational(1))
                out.push_back(state_ref(s) + " action '" + act.label +
                              "' exact probabilities sum to " + exact_sum.to_string() +
                              ", not 1");
        }
    }
    return out;
}

std::vector<std::uint32_t> post(const StochasticGame& game, std::uint32_t s, std::uint32_t a) {
    const Action& act = game.action(s, a);  // throws out_of_range on bad indices
    std::vector<std::uint32_t> succ;
    succ.reserve(act.dist.size());
    for (const Transition& tr : act.dist) {
        if (tr.prob > 0.0)
            succ.push_back(tr.target);
    }
    return succ;
}

}  // namespace sgsolve

#include "sgsolve/wpg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "sgsolve/reach.hpp"

namespace sgsolve::wpg {

namespace {

// Per-pair widths phi_u(s,a), indexed by a flat pair id.
struct PairTable {
    std::vector<double> width;
    std::vector<std::uint32_t> first;  // first pair id of each state

    PairTable(const StochasticGame& game, const ValueVector& u) {
        const std::uint32_t n = game.num_states();
        first.resize(n + 1, 0);
        for (std::uint32_t s = 0; s < n; ++s)
            first[s + 1] = first[s] + static_cast<std::uint32_t>(game.actions(s).size());
        width.resize(first[n]);
        for (std::uint32_t s = 0; s < n; ++s)
            for (std::uint32_t a = 0; a < game.actions(s).size(); ++a)
                width[first[s] + a] = reach::state_action_expectation(game, u, s, a);
    }

    std::uint32_t id(std::uint32_t s, std::uint32_t a) const { return first[s] + a; }
};

}  // namespace

double path_width(const StochasticGame& game, const ValueVector& u, const FinitePath& path) {
    if (path.states.empty() || path.states.size() != path.actions.size() + 1)
        throw std::invalid_argument("malformed finite path");
    const std::uint32_t last = path.states.back();
    if (!game.is_target(last))
        throw std::invalid_argument("finite path must end in a target state");

    double width = 1.0;
    for (std::size_t i = 0; i + 1 < path.states.size(); ++i) {
        const std::uint32_t s = path.states[i];
        const std::uint32_t a = path.actions[i];
        const Action& act = game.action(s, a);
        const std::uint32_t next = path.states[i + 1];
        bool connected = false;
        for (const Transition& tr : act.dist)
            connected = connected || (tr.target == next && tr.prob > 0.0);
        if (!connected)
            throw std::invalid_argument("finite path uses a non-successor step at position " +
                                        std::to_string(i));
        width = std::min(width, reach::state_action_expectation(game, u, s, a));
    }
    return width;
}

ValueVector wp_bellman_apply(const StochasticGame& game, const ValueVector& u,
                             const ValueVector& f) {
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
            double succ_best = 0.0;
            for (const Transition& tr : actions[a].dist)
                if (tr.prob > 0.0)
                    succ_best = std::max(succ_best, f.at(tr.target));
            double v = std::min(reach::state_action_expectation(game, u, s, a), succ_best);
            best = maximize ? std::max(best, v) : std::min(best, v);
        }
        out[s] = best;
    }
    return out;
}

ValueVector wp_value_kleene(const StochasticGame& game, const ValueVector& u) {
    const std::uint32_t n = game.num_states();
    ValueVector f = bottom_vector(n);
    // Witness paths are loop-free, so the iteration is stationary after at
    // most |S| applications; detecting stability costs one more.
    for (std::uint32_t applied = 1; applied <= n + 1; ++applied) {
        ValueVector next = wp_bellman_apply(game, u, f);
        if (next == f)
            return f;
        f = std::move(next);
    }
    throw std::logic_error("widest path Kleene iteration failed to stabilize within |S| steps");
}

DijkstraResult wp_value_dijkstra(const StochasticGame& game, const ValueVector& u) {
    const std::uint32_t n = game.num_states();
    const PairTable pairs(game, u);

    ValueVector w(n, 0.0);
    for (std::uint32_t t : game.targets())
        if (t < n)
            w[t] = 1.0;

    // Working copy of availability; removal of Minimizer actions never
    // escapes this call.
    std::vector<char> removed(pairs.width.size(), 0);
    std::vector<std::uint32_t> avail(n);
    for (std::uint32_t s = 0; s < n; ++s)
        avail[s] = static_cast<std::uint32_t>(game.actions(s).size());

    // Predecessor pairs of every state, for key refresh after assignments.
    std::vector<std::vector<std::uint64_t>> pred_pairs(n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t a = 0; a < game.actions(s).size(); ++a)
            for (const Transition& tr : game.action(s, a).dist)
                if (tr.prob > 0.0 && tr.target < n)
                    pred_pairs[tr.target].push_back((std::uint64_t(s) << 32) | a);

    auto key_of = [&](std::uint32_t s, std::uint32_t a) {
        double succ_best = 0.0;
        for (const Transition& tr : game.action(s, a).dist)
            if (tr.prob > 0.0)
                succ_best = std::max(succ_best, w[tr.target]);
        return std::min(pairs.width[pairs.id(s, a)], succ_best);
    };

    struct Entry {
        double key;
        std::uint32_t state;
        std::uint32_t action;
    };
    // Largest key first; ties broken towards the lowest state index, then
    // the lowest action position.
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.key != b.key)
            return a.key < b.key;
        if (a.state != b.state)
            return a.state > b.state;
        return a.action > b.action;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

    for (std::uint32_t s = 0; s < n; ++s)
        if (w[s] == 0.0)
            for (std::uint32_t a = 0; a < game.actions(s).size(); ++a)
                heap.push({key_of(s, a), s, a});

    DijkstraTrace trace;
    while (true) {
        // Keys only grow and every growth is re-pushed, so the first live
        // entry whose stored key matches its current key is the maximum.
        bool found = false;
        Entry top{0.0, 0, 0};
        while (!heap.empty()) {
            Entry e = heap.top();
            heap.pop();
            if (w[e.state] != 0.0 || removed[pairs.id(e.state, e.action)])
                continue;
            if (e.key != key_of(e.state, e.action))
                continue;
            top = e;
            found = true;
            break;
        }
        if (!found) {
            trace.push_back({TraceEventKind::Break, 0, 0, 0.0, BreakReason::NoPair});
            break;
        }
        if (top.key == 0.0) {
            trace.push_back({TraceEventKind::Break, 0, 0, 0.0, BreakReason::ZeroWidth});
            break;
        }

        trace.push_back({TraceEventKind::Select, top.state, top.action, top.key,
                         BreakReason::NoPair});
        if (game.owner(top.state) == Owner::Minimizer && avail[top.state] > 1) {
            removed[pairs.id(top.state, top.action)] = 1;
            --avail[top.state];
            trace.push_back({TraceEventKind::RemoveMinAction, top.state, top.action, 0.0,
                             BreakReason::NoPair});
        } else {
            w[top.state] = top.key;
            trace.push_back({TraceEventKind::Assign, top.state, top.action, top.key,
                             BreakReason::NoPair});
            for (std::uint64_t packed : pred_pairs[top.state]) {
                const auto ps = static_cast<std::uint32_t>(packed >> 32);
                const auto pa = static_cast<std::uint32_t>(packed & 0xffffffffu);
                if (w[ps] == 0.0 && !removed[pairs.id(ps, pa)])
                    heap.push({key_of(ps, pa), ps, pa});
            }
        }
    }

    return {std::move(w), std::move(trace)};
}

double widest_path_under_strategies(const StochasticGame& game, const ValueVector& u,
                                    const StrategyPair& pair, std::uint32_t s) {
    const std::uint32_t n = game.num_states();
    if (s >= n)
        throw std::out_of_range("state index out of range");

    // Restrict every state to the strategy's choice; successor choice stays
    // free, which is exactly the Maximizer-picks-successors reading.
    std::vector<State> restricted(n);
    for (std::uint32_t st = 0; st < n; ++st) {
        const auto choice = game.owner(st) == Owner::Maximizer ? pair.max_choice.at(st)
                                                               : pair.min_choice.at(st);
        restricted[st].owner = game.owner(st);
        restricted[st].actions.push_back(game.action(st, choice));
    }
    StochasticGame induced(std::move(restricted), game.init_state(), game.targets());

    // Widths must come from the original action positions; with one action
    // per state they coincide with position 0 of the induced game.
    return wp_value_kleene(induced, u).at(s);
}

}  // namespace sgsolve::wpg

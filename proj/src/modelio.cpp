#include "sgsolve/modelio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace sgsolve::modelio {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

std::int64_t parse_int(const std::string& tok, int line, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    if (tok.size() > 18)
        throw ParseError(line, std::string(what) + " '" + tok + "' is too large");
    return std::stoll(tok);
}

std::uint32_t parse_state_id(const std::string& tok, std::uint32_t n, int line) {
    std::int64_t v = parse_int(tok, line, "a state id");
    if (v >= n)
        throw ParseError(line, "unknown state id " + tok + " (states declares " +
                                   std::to_string(n) + ")");
    return static_cast<std::uint32_t>(v);
}

Rational parse_probability_at(const std::string& token, int line) {
    if (token.empty())
        throw ParseError(line, "empty probability");
    const auto slash = token.find('/');
    if (slash != std::string::npos) {
        std::int64_t p = parse_int(token.substr(0, slash), line, "a numerator");
        std::int64_t q = parse_int(token.substr(slash + 1), line, "a denominator");
        if (p < 1 || q < 1 || p > q)
            throw ParseError(line, "rational probability '" + token +
                                       "' must satisfy 1 <= p <= q");
        return Rational(p, q);
    }
    const auto dot = token.find('.');
    std::string digits = token;
    std::size_t frac_len = 0;
    if (dot != std::string::npos) {
        frac_len = token.size() - dot - 1;
        digits = token.substr(0, dot) + token.substr(dot + 1);
        if (frac_len == 0 || dot == 0)
            throw ParseError(line, "malformed decimal '" + token + "'");
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "malformed probability '" + token + "'");
    if (digits.size() > 18)
        throw ParseError(line, "probability literal '" + token + "' has too many digits");
    std::int64_t num = std::stoll(digits);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_len; ++i)
        den *= 10;
    Rational r(num, den);
    if (r.is_zero() || r > Rational(1))
        throw ParseError(line, "probability '" + token + "' must be in (0, 1]");
    return r;
}

struct PendingAction {
    int line = 0;
    Action action;
};

std::string shortest_exact_decimal(const Rational& r) {
    // Finite decimal expansions exist exactly when the denominator has no
    // prime factors besides 2 and 5.
    auto den = r.denominator();
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1)
        return {};
    const int digits = std::max(twos, fives);
    if (digits == 0)
        return Rational::int128_to_string(r.numerator());
    if (digits > 18)
        return {};
    Rational::Int scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    Rational scaled = r * Rational::from_int128(scale, 1);
    std::string frac = Rational::int128_to_string(scaled.numerator());
    std::string whole = "0";
    if (static_cast<int>(frac.size()) > digits) {
        whole = frac.substr(0, frac.size() - digits);
        frac = frac.substr(frac.size() - digits);
    } else {
        frac.insert(frac.begin(), digits - frac.size(), '0');
    }
    while (!frac.empty() && frac.back() == '0')
        frac.pop_back();
    return frac.empty() ? whole : whole + "." + frac;
}

std::string format_probability(const Rational& r) {
    std::string dec = shortest_exact_decimal(r);
    return dec.empty() ? r.to_string() : dec;
}

// Deterministic helpers on top of mt19937_64; the standard distributions are
// not portable across library implementations, these are.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Rational parse_probability(const std::string& token) {
    return parse_probability_at(token, 0);
}

StochasticGame parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    bool saw_header = false;
    bool saw_states = false;
    std::uint32_t n = 0;
    std::vector<std::optional<Owner>> owners;
    std::vector<int> owner_line;
    std::optional<std::uint32_t> init;
    std::vector<std::uint32_t> targets;
    std::vector<std::vector<PendingAction>> actions;

    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        auto tokens = tokenize(raw);
        if (tokens.empty())
            continue;

        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "sg" || tokens[1] != "1")
                throw ParseError(line_no, "expected header 'sg 1'");
            saw_header = true;
            continue;
        }
        const std::string& directive = tokens[0];
        if (directive == "states") {
            if (saw_states)
                throw ParseError(line_no, "duplicate 'states' directive");
            if (tokens.size() != 2)
                throw ParseError(line_no, "usage: states <n>");
            std::int64_t v = parse_int(tokens[1], line_no, "a state count");
            if (v < 1 || v > 50000000)
                throw ParseError(line_no, "state count must be between 1 and 5e7");
            n = static_cast<std::uint32_t>(v);
            owners.assign(n, std::nullopt);
            owner_line.assign(n, 0);
            actions.assign(n, {});
            saw_states = true;
            continue;
        }
        if (!saw_states)
            throw ParseError(line_no, "'" + directive + "' before 'states'");

        if (directive == "owner") {
            if (tokens.size() != 3)
                throw ParseError(line_no, "usage: owner <id> <max|min>");
            std::uint32_t s = parse_state_id(tokens[1], n, line_no);
            if (owners[s].has_value())
                throw ParseError(line_no, "duplicate owner for state " + tokens[1] +
                                              " (first on line " +
                                              std::to_string(owner_line[s]) + ")");
            if (tokens[2] == "max")
                owners[s] = Owner::Maximizer;
            else if (tokens[2] == "min")
                owners[s] = Owner::Minimizer;
            else
                throw ParseError(line_no, "owner must be 'max' or 'min', got '" + tokens[2] + "'");
            owner_line[s] = line_no;
        } else if (directive == "init") {
            if (tokens.size() != 2)
                throw ParseError(line_no, "usage: init <id>");
            if (init.has_value())
                throw ParseError(line_no, "duplicate 'init' directive");
            init = parse_state_id(tokens[1], n, line_no);
        } else if (directive == "target") {
            if (tokens.size() < 2)
                throw ParseError(line_no, "usage: target <id> [<id> ...]");
            for (std::size_t i = 1; i < tokens.size(); ++i)
                targets.push_back(parse_state_id(tokens[i], n, line_no));
        } else if (directive == "trans") {
            if (tokens.size() < 4)
                throw ParseError(line_no, "usage: trans <state> <label> <succ>:<prob> ...");
            std::uint32_t s = parse_state_id(tokens[1], n, line_no);
            const std::string& label = tokens[2];
            for (const auto& pending : actions[s])
                if (pending.action.label == label)
                    throw ParseError(line_no, "duplicate action label '" + label +
                                                  "' for state " + tokens[1] +
                                                  " (first on line " +
                                                  std::to_string(pending.line) + ")");
            Action act;
            act.label = label;
            bool any_decimal = false;
            Rational sum;
            std::unordered_set<std::uint32_t> seen;
            for (std::size_t i = 3; i < tokens.size(); ++i) {
                const auto colon = tokens[i].find(':');
                if (colon == std::string::npos)
                    throw ParseError(line_no, "expected <succ>:<prob>, got '" + tokens[i] + "'");
                std::uint32_t succ = parse_state_id(tokens[i].substr(0, colon), n, line_no);
                if (!seen.insert(succ).second)
                    throw ParseError(line_no, "successor " + std::to_string(succ) +
                                                  " listed more than once");
                const std::string prob_tok = tokens[i].substr(colon + 1);
                any_decimal = any_decimal || prob_tok.find('/') == std::string::npos;
                Rational p = parse_probability_at(prob_tok, line_no);
                sum += p;
                act.dist.push_back({succ, p.to_double(), p});
            }
            if (sum != Rational(1)) {
                if (!any_decimal || std::abs(sum.to_double() - 1.0) > 1e-9)
                    throw ParseError(line_no, "probabilities of action '" + label +
                                                  "' sum to " + sum.to_string() + ", not 1");
                // Decimals within tolerance: rescale so the stored exact
                // weights sum to exactly 1.
                for (Transition& tr : act.dist) {
                    tr.exact /= sum;
                    tr.prob = tr.exact.to_double();
                }
            }
            actions[s].push_back({line_no, std::move(act)});
        } else {
            throw ParseError(line_no, "unknown directive '" + directive + "'");
        }
    }

    if (!saw_header)
        throw ParseError(line_no == 0 ? 1 : line_no, "empty model: expected header 'sg 1'");
    if (!saw_states)
        throw ParseError(0, "missing 'states' directive");
    if (!init.has_value())
        throw ParseError(0, "missing 'init' directive");
    for (std::uint32_t s = 0; s < n; ++s) {
        if (!owners[s].has_value())
            throw ParseError(0, "state " + std::to_string(s) + " has no owner");
        if (actions[s].empty())
            throw ParseError(0, "state " + std::to_string(s) + " has no 'trans' line");
    }

    std::vector<State> states(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        states[s].owner = *owners[s];
        for (auto& pending : actions[s])
            states[s].actions.push_back(std::move(pending.action));
    }
    StochasticGame game(std::move(states), *init, std::move(targets));
    auto violations = validate_game(game);
    if (!violations.empty())
        throw ParseError(0, "invalid model: " + violations.front());
    return game;
}

StochasticGame load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_model(const StochasticGame& game) {
    std::ostringstream out;
    out << "sg 1\n";
    out << "states " << game.num_states() << "\n";
    for (std::uint32_t s = 0; s < game.num_states(); ++s)
        out << "owner " << s << (game.owner(s) == Owner::Maximizer ? " max" : " min") << "\n";
    out << "init " << game.init_state() << "\n";
    if (!game.targets().empty()) {
        out << "target";
        for (std::uint32_t t : game.targets())
            out << " " << t;
        out << "\n";
    }
    for (std::uint32_t s = 0; s < game.num_states(); ++s) {
        for (const Action& act : game.actions(s)) {
            out << "trans " << s << " " << act.label;
            for (const Transition& tr : act.dist)
                out << " " << tr.target << ":" << format_probability(tr.exact);
            out << "\n";
        }
    }
    return out.str();
}

namespace {

State make_state(Owner owner, std::vector<Action> actions) {
    State st;
    st.owner = owner;
    st.actions = std::move(actions);
    return st;
}

Action make_action(std::string label, std::vector<std::pair<std::uint32_t, Rational>> dist) {
    Action a;
    a.label = std::move(label);
    for (auto& [target, p] : dist)
        a.dist.push_back({target, p.to_double(), p});
    return a;
}

}  // namespace

StochasticGame gen_fig1() {
    const Rational third(1, 3);
    std::vector<State> states;
    states.push_back(make_state(Owner::Maximizer,
                                {make_action("alpha", {{0, third}, {1, third}, {2, third}}),
                                 make_action("beta", {{3, Rational(1)}})}));
    states.push_back(make_state(Owner::Minimizer,
                                {make_action("alpha", {{2, Rational(1)}}),
                                 make_action("beta", {{0, Rational(3, 4)}, {3, Rational(1, 4)}}),
                                 make_action("gamma", {{2, Rational(4, 5)}, {4, Rational(1, 5)}})}));
    states.push_back(make_state(Owner::Maximizer, {make_action("alpha", {{2, Rational(1)}})}));
    states.push_back(make_state(Owner::Minimizer,
                                {make_action("alpha", {{0, Rational(1)}}),
                                 make_action("beta", {{4, Rational(1)}})}));
    states.push_back(make_state(Owner::Maximizer,
                                {make_action("alpha", {{3, Rational(1)}}),
                                 make_action("beta", {{5, Rational(1)}})}));
    states.push_back(make_state(Owner::Minimizer,
                                {make_action("alpha", {{2, Rational(1, 2)}, {4, Rational(1, 2)}}),
                                 make_action("beta", {{5, Rational(1)}})}));
    return StochasticGame(std::move(states), 0, {2});
}

StochasticGame gen_ecchain(std::uint32_t n, const Rational& eps) {
    if (n < 1)
        throw std::invalid_argument("ECchain requires n >= 1");
    if (eps <= Rational(0) || eps >= Rational(1, 2))
        throw std::invalid_argument("ECchain requires 0 < eps < 1/2");

    // Layout: top chain 0..n, sink n+1, bottom chain n+2..2n+2, target 2n+3.
    const std::uint32_t sink = n + 1;
    const std::uint32_t bottom0 = n + 2;
    const std::uint32_t target = 2 * n + 3;
    const Rational rest = Rational(1) - eps;

    std::vector<State> states(2 * n + 4);
    states[0] = make_state(Owner::Maximizer,
                           {make_action("alpha", {{bottom0, Rational(1)}}),
                            make_action("beta", {{1, Rational(1)}})});
    states[bottom0] = make_state(Owner::Minimizer,
                                 {make_action("alpha", {{0, Rational(1)}}),
                                  make_action("beta", {{bottom0 + 1, Rational(1)}})});
    for (std::uint32_t i = 1; i < n; ++i) {
        states[i] = make_state(Owner::Maximizer,
                               {make_action("alpha", {{i, Rational(1)}}),
                                make_action("beta", {{i + 1, Rational(1)}})});
        states[bottom0 + i] = make_state(Owner::Maximizer,
                                         {make_action("alpha", {{bottom0 + i, Rational(1)}}),
                                          make_action("beta", {{bottom0 + i + 1, Rational(1)}})});
    }
    states[n] = make_state(Owner::Maximizer,
                           {make_action("alpha", {{n, Rational(1)}}),
                            make_action("beta", {{sink, rest}, {target, eps}})});
    states[bottom0 + n] = make_state(Owner::Maximizer,
                                     {make_action("alpha", {{bottom0 + n, Rational(1)}}),
                                      make_action("beta", {{target, rest}, {sink, eps}})});
    states[sink] = make_state(Owner::Maximizer, {make_action("alpha", {{sink, Rational(1)}})});
    states[target] = make_state(Owner::Maximizer, {make_action("alpha", {{target, Rational(1)}})});
    return StochasticGame(std::move(states), 0, {target});
}

StochasticGame gen_random_sg(std::uint32_t n_states, std::uint32_t max_actions,
                             std::uint32_t branching, double target_fraction,
                             std::uint64_t seed) {
    if (n_states < 1 || max_actions < 1 || branching < 1)
        throw std::invalid_argument("gen_random_sg requires n_states, max_actions, branching >= 1");

    std::mt19937_64 rng(seed);
    std::vector<State> states(n_states);
    for (std::uint32_t s = 0; s < n_states; ++s)
        states[s].owner = rng_below(rng, 2) == 0 ? Owner::Maximizer : Owner::Minimizer;

    std::vector<std::uint32_t> pool(n_states);
    for (std::uint32_t s = 0; s < n_states; ++s) {
        const auto n_actions = 1 + rng_below(rng, max_actions);
        for (std::uint64_t a = 0; a < n_actions; ++a) {
            const auto n_succ =
                1 + rng_below(rng, std::min<std::uint64_t>(branching, n_states));
            // Partial Fisher-Yates draw of n_succ distinct successors.
            for (std::uint32_t i = 0; i < n_states; ++i)
                pool[i] = i;
            Action act;
            act.label = "a" + std::to_string(a);
            for (std::uint64_t i = 0; i < n_succ; ++i) {
                const auto j = i + rng_below(rng, n_states - i);
                std::swap(pool[i], pool[j]);
            }
            // Rational weights with a common denominator of at most 16 (or
            // the successor count when that is larger).
            const auto den_max = std::max<std::uint64_t>(16, n_succ);
            const auto den = n_succ + rng_below(rng, den_max - n_succ + 1);
            std::vector<std::int64_t> weight(n_succ, 1);
            for (std::uint64_t extra = n_succ; extra < den; ++extra)
                ++weight[rng_below(rng, n_succ)];
            for (std::uint64_t i = 0; i < n_succ; ++i) {
                Rational p(weight[i], static_cast<std::int64_t>(den));
                act.dist.push_back({pool[i], p.to_double(), p});
            }
            states[s].actions.push_back(std::move(act));
        }
    }

    std::vector<std::uint32_t> targets;
    for (std::uint32_t s = 0; s < n_states; ++s)
        if (rng_unit(rng) < target_fraction)
            targets.push_back(s);
    if (targets.empty() && target_fraction > 0.0)
        targets.push_back(static_cast<std::uint32_t>(rng_below(rng, n_states)));
    const auto init = static_cast<std::uint32_t>(rng_below(rng, n_states));
    return StochasticGame(std::move(states), init, std::move(targets));
}

StochasticGame gen_many_loops(std::uint32_t k) {
    if (k < 1)
        throw std::invalid_argument("gen_many_loops requires k >= 1");

    // Gadget i: Maximizer 2i with a self loop, Minimizer 2i+1 passing on.
    const std::uint32_t coin = 2 * k;
    const std::uint32_t target = 2 * k + 1;
    const std::uint32_t sink = 2 * k + 2;
    std::vector<State> states(2 * k + 3);
    for (std::uint32_t i = 0; i < k; ++i) {
        states[2 * i] = make_state(Owner::Maximizer,
                                   {make_action("alpha", {{2 * i, Rational(1)}}),
                                    make_action("beta", {{2 * i + 1, Rational(1)}})});
        states[2 * i + 1] =
            make_state(Owner::Minimizer, {make_action("alpha", {{2 * i + 2, Rational(1)}})});
    }
    states[coin] = make_state(Owner::Maximizer,
                              {make_action("alpha",
                                           {{target, Rational(1, 2)}, {sink, Rational(1, 2)}})});
    states[target] = make_state(Owner::Maximizer, {make_action("alpha", {{target, Rational(1)}})});
    states[sink] = make_state(Owner::Maximizer, {make_action("alpha", {{sink, Rational(1)}})});
    return StochasticGame(std::move(states), 0, {target});
}

}  // namespace sgsolve::modelio

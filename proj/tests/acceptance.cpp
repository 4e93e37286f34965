// Acceptance suite: runs every shipping criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sgsolve/modelio.hpp"
#include "sgsolve/oracle.hpp"
#include "sgsolve/reach.hpp"
#include "sgsolve/solvers.hpp"
#include "sgsolve/wpg.hpp"

using namespace sgsolve;

namespace {

int g_failures = 0;
bool g_current_ok = true;
std::string g_current_detail;

void expect(bool cond, const std::string& detail) {
    if (!cond && g_current_ok) {
        g_current_ok = false;
        g_current_detail = detail;
    }
}

void run_criterion(int number, const std::string& title, const std::function<void()>& body) {
    g_current_ok = true;
    g_current_detail.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (g_current_ok) {
        std::printf("[PASS] criterion %2d: %s (%.2fs)\n", number, title.c_str(), secs);
    } else {
        std::printf("[FAIL] criterion %2d: %s (%.2fs) -- %s\n", number, title.c_str(), secs,
                    g_current_detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool close_all(const ValueVector& a, const ValueVector& b, double tol) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], tol))
            return false;
    return true;
}

double max_abs_diff(const ValueVector& a, const ValueVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool leq_all(const ValueVector& a, const ValueVector& b, double slack) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i] + slack)
            return false;
    return true;
}

ValueVector random_unit_vector(std::mt19937_64& rng, std::size_t n) {
    ValueVector v(n);
    for (auto& x : v)
        x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

std::string vec_str(const ValueVector& v) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6g", v[i]);
        s += buf;
        if (i + 1 < v.size())
            s += ", ";
    }
    return s + ")";
}

// Turn the last state into an absorbing non-target sink. Plain random games
// rarely contain inescapable traps, so their values collapse to 0 or 1; a
// guaranteed sink makes strictly interior values common.
StochasticGame with_sink(const StochasticGame& game) {
    auto states = game.states();
    const std::uint32_t sink = game.num_states() - 1;
    Action stay;
    stay.label = "stay";
    stay.dist.push_back({sink, 1.0, Rational(1)});
    states[sink].actions = {stay};
    std::vector<std::uint32_t> targets;
    for (auto t : game.targets())
        if (t != sink)
            targets.push_back(t);
    return StochasticGame(std::move(states), game.init_state() == sink ? 0 : game.init_state(),
                          targets);
}

// Fuzz population for criteria 8 and 9: 200 seeded games, up to 6 states and
// 3 actions per state, mixing sizes, target densities and sink-augmented
// instances.
StochasticGame fuzz_game_small(int index) {
    const auto seed = 90000 + static_cast<std::uint64_t>(index);
    if (index < 100)
        return modelio::gen_random_sg(2 + index % 5, 1 + index % 3, 2, 0.3, seed);
    if (index < 150)
        return modelio::gen_random_sg(6, 1 + index % 3, 2, 0.12, seed);
    return with_sink(modelio::gen_random_sg(6, 3, 2, 0.3, seed));
}

void criterion_1() {
    auto values = oracle::exact_values(modelio::gen_fig1());
    const std::vector<Rational> expected{Rational(4, 5), Rational(3, 5), Rational(1),
                                         Rational(0), Rational(0), Rational(0)};
    expect(values == expected, "rational oracle values differ from (4/5, 3/5, 1, 0, 0, 0)");
}

void criterion_2() {
    auto game = modelio::gen_fig1();
    const std::vector<ValueVector> expected{{0, 0, 1, 0, 0, 0},
                                            {1.0 / 3, 0, 1, 0, 0, 0},
                                            {4.0 / 9, 0.25, 1, 0, 0, 0},
                                            {61.0 / 108, 1.0 / 3, 1, 0, 0, 0}};
    auto f = bottom_vector(6);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        f = reach::bellman_apply(game, f);
        expect(close_all(f, expected[k], 1e-12),
               "Bellman iterate " + std::to_string(k + 1) + " is " + vec_str(f));
    }
}

void criterion_3() {
    auto game = modelio::gen_fig1();
    const std::vector<ValueVector> expected{{1, 1, 1, 0, 0, 0},
                                            {1, 0.75, 1, 0, 0, 0},
                                            {11.0 / 12, 0.75, 1, 0, 0, 0},
                                            {8.0 / 9, 11.0 / 16, 1, 0, 0, 0}};
    auto u = top_vector(6);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        u = solvers::omega_apply(game, u);
        expect(close_all(u, expected[k], 1e-12),
               "widest path iterate " + std::to_string(k + 1) + " is " + vec_str(u));
    }
}

void criterion_4() {
    using wpg::BreakReason;
    using wpg::TraceEventKind;
    auto game = modelio::gen_fig1();
    const ValueVector u{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    auto [value, trace] = wpg::wp_value_dijkstra(game, u);
    expect(close_all(value, {0.2, 0.15, 1, 0, 0, 0}, 1e-12),
           "value is " + vec_str(value));

    struct Step {
        TraceEventKind kind;
        std::uint32_t state;
        std::uint32_t action;
        double value;
    };
    const std::vector<Step> expected{
        {TraceEventKind::Select, 5, 0, 0.6},  {TraceEventKind::RemoveMinAction, 5, 0, 0},
        {TraceEventKind::Select, 1, 2, 0.48}, {TraceEventKind::RemoveMinAction, 1, 2, 0},
        {TraceEventKind::Select, 1, 0, 0.4},  {TraceEventKind::RemoveMinAction, 1, 0, 0},
        {TraceEventKind::Select, 0, 0, 0.2},  {TraceEventKind::Assign, 0, 0, 0.2},
        {TraceEventKind::Select, 1, 1, 0.15}, {TraceEventKind::Assign, 1, 1, 0.15},
    };
    expect(trace.size() == expected.size() + 1, "unexpected trace length");
    if (trace.size() == expected.size() + 1) {
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const auto& ev = trace[i];
            const auto& want = expected[i];
            bool ok = ev.kind == want.kind && ev.state == want.state &&
                      ev.action == want.action;
            if (want.kind != TraceEventKind::RemoveMinAction)
                ok = ok && close(ev.value, want.value, 1e-12);
            expect(ok, "trace event " + std::to_string(i) + " differs");
        }
        expect(trace.back().kind == TraceEventKind::Break &&
                   trace.back().reason == BreakReason::ZeroWidth,
               "run did not end on the zero-width break");
    }
}

void criterion_5() {
    SolverConfig cfg;
    auto report = solvers::two_wp_bvi(modelio::gen_fig1(), cfg);
    expect(report.converged, "did not converge");
    expect(report.iterations < cfg.max_iters, "converged only at the cap");
    expect(close(report.estimate, 0.8, 1e-6),
           "estimate " + std::to_string(report.estimate));
}

void criterion_6() {
    SolverConfig naive_cfg;
    naive_cfg.max_iters = 10000;
    auto fig1 = solvers::naive_bvi(modelio::gen_fig1(), naive_cfg);
    expect(!fig1.converged, "naive iteration converged on the running example");
    expect(fig1.final_upper == top_vector(6), "naive upper vector left the top");

    for (std::uint32_t k : {1u, 10u, 100u}) {
        auto game = modelio::gen_many_loops(k);
        auto naive = solvers::naive_bvi(game, naive_cfg);
        expect(!naive.converged,
               "naive iteration converged on the loop benchmark k=" + std::to_string(k));
        SolverConfig cfg;
        auto wp = solvers::two_wp_bvi(game, cfg);
        expect(wp.converged && wp.iterations < cfg.max_iters,
               "widest path iteration failed on the loop benchmark k=" + std::to_string(k));
        expect(close(wp.estimate, 0.5, 1e-6),
               "loop benchmark estimate " + std::to_string(wp.estimate));
    }
}

void criterion_7() {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 200; ++i) {
        auto game = modelio::gen_random_sg(2 + i % 7, 1 + i % 3, 2, 0.25,
                                           70000 + static_cast<std::uint64_t>(i));
        const auto n = game.num_states();
        auto u = random_unit_vector(rng, n);

        auto dijkstra = wpg::wp_value_dijkstra(game, u).value;
        auto kleene = wpg::wp_value_kleene(game, u);
        expect(max_abs_diff(dijkstra, kleene) <= 1e-12,
               "engines disagree on pair " + std::to_string(i));

        // stabilization within |S| applications, checked explicitly
        ValueVector f = bottom_vector(n);
        for (std::uint32_t k = 0; k < n; ++k)
            f = wpg::wp_bellman_apply(game, u, f);
        expect(wpg::wp_bellman_apply(game, u, f) == f,
               "Kleene not stationary after |S| steps on pair " + std::to_string(i));
    }
}

void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i) {
        auto game = fuzz_game_small(i);
        const auto n = game.num_states();
        auto exact = oracle::exact_value(game);

        SolverConfig cfg;
        cfg.max_iters = 1000000;

        auto two = solvers::two_wp_bvi(game, cfg);
        expect(two.converged, "2wp did not converge on game " + std::to_string(i));
        expect(close(two.estimate, exact[game.init_state()], 1e-6),
               "2wp estimate off on game " + std::to_string(i));
        auto one = solvers::one_wp_bvi(game, cfg);
        expect(one.converged, "1wp did not converge on game " + std::to_string(i));
        expect(close(one.estimate, exact[game.init_state()], 1e-6),
               "1wp estimate off on game " + std::to_string(i));

        // sandwich at every iteration, mirrored with the public operators
        for (int variant = 0; variant < 2; ++variant) {
            auto lower = bottom_vector(n);
            auto upper = top_vector(n);
            for (std::uint64_t k = 0; k < cfg.max_iters; ++k) {
                if (upper[game.init_state()] - lower[game.init_state()] <= 2 * cfg.epsilon)
                    break;
                lower = reach::bellman_apply(game, lower);
                upper = variant == 0
                            ? solvers::omega_apply(game, upper)
                            : wpg::wp_value_dijkstra(solvers::player_reduction(game, lower),
                                                     upper)
                                  .value;
                if (!(leq_all(lower, exact, 1e-9) && leq_all(exact, upper, 1e-9))) {
                    expect(false, std::string(variant == 0 ? "2wp" : "1wp") +
                                      " sandwich broken on game " + std::to_string(i));
                    break;
                }
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(secs < 300.0, "fuzz took " + std::to_string(secs) + "s, over the budget");
}

void criterion_9() {
    for (int i = 0; i < 200; ++i) {
        auto game = fuzz_game_small(i);
        auto exact = oracle::exact_value(game);
        expect(max_abs_diff(solvers::omega_apply(game, exact), exact) <= 1e-9,
               "widest path operator moves the value on game " + std::to_string(i));
        expect(max_abs_diff(reach::bellman_apply(game, exact), exact) <= 1e-9,
               "Bellman operator moves the value on game " + std::to_string(i));
    }
    for (int i = 0; i < 50; ++i) {
        expect(oracle::minmax_equals_maxmin(fuzz_game_small(i)),
               "optimization orders disagree on game " + std::to_string(i));
    }
}

void criterion_10() {
    for (int i = 0; i < 100; ++i) {
        auto chain = reach::MarkovChain(modelio::gen_random_sg(
            2 + i % 19, 1, 3, 0.2, 100000 + static_cast<std::uint64_t>(i)));
        auto zeros = reach::mc_zero_states(chain);
        auto lo = bottom_vector(chain.num_states());
        auto hi = top_vector(chain.num_states());
        for (std::uint64_t k = 0; k < 5000000 && max_abs_diff(lo, hi) > 1e-10; ++k) {
            lo = reach::mc_modified_bellman_apply(chain, lo, zeros);
            hi = reach::mc_modified_bellman_apply(chain, hi, zeros);
        }
        auto direct = reach::mc_reachability_exact(chain);
        expect(max_abs_diff(lo, hi) <= 1e-9, "sequences apart on chain " + std::to_string(i));
        expect(close_all(lo, direct, 1e-9) && close_all(hi, direct, 1e-9),
               "fixed point differs from the linear solve on chain " + std::to_string(i));
    }
}

void criterion_11() {
    const auto start = std::chrono::steady_clock::now();
    for (std::uint32_t n : {10u, 100u, 1000u}) {
        auto game = modelio::gen_ecchain(n, Rational(1, 100));
        SolverConfig cfg;
        cfg.record_trace = true;

        auto two = solvers::two_wp_bvi(game, cfg);
        auto one = solvers::one_wp_bvi(game, cfg);
        expect(two.converged && one.converged, "a solver missed on n=" + std::to_string(n));
        expect(close(two.estimate, 0.01, 1e-6) && close(one.estimate, 0.01, 1e-6),
               "estimates off on n=" + std::to_string(n));
        expect(two.iterations <= one.iterations,
               "widest path iteration needed more iterations on n=" + std::to_string(n));

        // The first update still sees width one everywhere; beyond iteration
        // one the upper bound sits at the top-path value 0.01 for good.
        expect(two.trace.size() >= 2, "2wp trace too short on n=" + std::to_string(n));
        for (std::size_t k = 1; k < two.trace.size(); ++k) {
            if (!close(two.trace[k].upper, 0.01, 1e-12)) {
                expect(false, "2wp upper bound not 0.01 at iteration " +
                                  std::to_string(two.trace[k].iteration) + " of n=" +
                                  std::to_string(n));
                break;
            }
        }
        for (const auto& entry : two.trace)
            expect(!close(entry.upper, 0.99, 1e-12),
                   "2wp upper bound lingered at 0.99 on n=" + std::to_string(n));

        // The player-reduction variant keeps the bottom-path bound 0.99 for
        // at least the first n-2 iterations (from iteration 2 on).
        expect(one.trace.size() >= n, "1wp trace too short on n=" + std::to_string(n));
        for (std::size_t k = 1; k + 1 < n && k < one.trace.size(); ++k) {
            if (!close(one.trace[k].upper, 0.99, 1e-12)) {
                expect(false, "1wp upper bound left 0.99 at iteration " +
                                  std::to_string(one.trace[k].iteration) + " of n=" +
                                  std::to_string(n));
                break;
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(secs < 60.0, "chain benchmarks took " + std::to_string(secs) + "s");
}

void criterion_12() {
    // Absolute timings and third-party benchmark suites are out of scope by
    // design; the relative claims live in criteria 6 and 11. Nothing to run.
}

}  // namespace

int main() {
    run_criterion(1, "exact ground truth on the running example", criterion_1);
    run_criterion(2, "under-approximation iterates", criterion_2);
    run_criterion(3, "over-approximation iterates", criterion_3);
    run_criterion(4, "Dijkstra worked run and trace", criterion_4);
    run_criterion(5, "widest path iteration end to end", criterion_5);
    run_criterion(6, "naive iteration failure mode", criterion_6);
    run_criterion(7, "engine agreement fuzz, 200 pairs", criterion_7);
    run_criterion(8, "solver-vs-oracle fuzz, 200 games", criterion_8);
    run_criterion(9, "fixed point and determinacy fuzz", criterion_9);
    run_criterion(10, "Markov chain unique fixed point, 100 chains", criterion_10);
    run_criterion(11, "chain benchmark separation", criterion_11);
    run_criterion(12, "absolute timings excluded by design", criterion_12);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}

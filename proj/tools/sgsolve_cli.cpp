// Command line front end for the sgsolve shared library. Talks to the
// solver exclusively through the C API in sgsolve.h.
//
// Exit codes: 0 converged, 1 usage/input error, 2 non-convergence at the
// iteration cap, 3 oracle cap exceeded.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgsolve.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitCapExceeded = 3;

struct GameDeleter {
    void operator()(sg_game* g) const { sg_game_free(g); }
};
struct ReportDeleter {
    void operator()(sg_report* r) const { sg_report_free(r); }
};
using GamePtr = std::unique_ptr<sg_game, GameDeleter>;
using ReportPtr = std::unique_ptr<sg_report, ReportDeleter>;

int fail(const std::string& context) {
    std::cerr << "error: " << context;
    const char* detail = sg_last_error();
    if (detail && *detail)
        std::cerr << ": " << detail;
    std::cerr << "\n";
    return kExitUsage;
}

GamePtr load_game(const std::string& path, int& exit_code) {
    sg_game* game = nullptr;
    if (sg_game_from_file(path.c_str(), &game) != SG_OK) {
        exit_code = fail("cannot load model '" + path + "'");
        return nullptr;
    }
    exit_code = kExitOk;
    return GamePtr(game);
}

struct AlgoRun {
    std::string name;
    ReportPtr report;
    double wall_ms = 0.0;
};

bool algo_id(const std::string& name, sg_algorithm& out) {
    if (name == "vi")
        out = SG_ALGO_VI;
    else if (name == "naive-bvi")
        out = SG_ALGO_NAIVE_BVI;
    else if (name == "1wp")
        out = SG_ALGO_1WP_BVI;
    else if (name == "2wp")
        out = SG_ALGO_2WP_BVI;
    else
        return false;
    return true;
}

bool run_algo(const sg_game* game, const std::string& name, double epsilon,
              std::uint64_t max_iters, bool trace, AlgoRun& out) {
    sg_algorithm algo;
    if (!algo_id(name, algo)) {
        std::cerr << "error: unknown algorithm '" << name << "' (expected vi|naive-bvi|1wp|2wp)\n";
        return false;
    }
    sg_solve_config cfg{epsilon, max_iters, trace ? 1 : 0};
    sg_report* report = nullptr;
    const auto start = std::chrono::steady_clock::now();
    if (sg_solve(game, algo, &cfg, &report) != SG_OK) {
        fail("solve failed");
        return false;
    }
    const auto stop = std::chrono::steady_clock::now();
    out.name = name;
    out.report.reset(report);
    out.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return true;
}

json report_json(const std::string& model, const AlgoRun& run, double epsilon, bool with_trace) {
    const sg_report* r = run.report.get();
    json j{{"model", model},
           {"algorithm", run.name},
           {"epsilon", epsilon},
           {"iterations", sg_report_iterations(r)},
           {"lower", sg_report_lower(r)},
           {"upper", sg_report_upper(r)},
           {"estimate", sg_report_estimate(r)},
           {"converged", sg_report_converged(r) != 0},
           {"wall_ms", run.wall_ms}};
    if (with_trace) {
        json trace = json::array();
        const std::uint64_t size = sg_report_trace_size(r);
        for (std::uint64_t i = 0; i < size; ++i) {
            std::uint64_t it = 0;
            double lo = 0, hi = 0;
            sg_report_trace_entry(r, i, &it, &lo, &hi);
            trace.push_back({{"iteration", it}, {"lower", lo}, {"upper", hi}});
        }
        j["trace"] = std::move(trace);
    }
    return j;
}

void print_report_text(const std::string& model, const AlgoRun& run, double epsilon,
                       bool with_trace) {
    const sg_report* r = run.report.get();
    std::printf("model:      %s\n", model.c_str());
    std::printf("algorithm:  %s\n", run.name.c_str());
    std::printf("epsilon:    %g\n", epsilon);
    std::printf("iterations: %llu\n", static_cast<unsigned long long>(sg_report_iterations(r)));
    std::printf("lower:      %.17g\n", sg_report_lower(r));
    std::printf("upper:      %.17g\n", sg_report_upper(r));
    std::printf("estimate:   %.17g\n", sg_report_estimate(r));
    std::printf("converged:  %s\n", sg_report_converged(r) ? "true" : "false");
    if (!sg_report_precision_sound(r))
        std::printf("note:       stopping rule carries no precision guarantee\n");
    std::printf("wall_ms:    %.3f\n", run.wall_ms);
    if (with_trace) {
        const std::uint64_t size = sg_report_trace_size(r);
        for (std::uint64_t i = 0; i < size; ++i) {
            std::uint64_t it = 0;
            double lo = 0, hi = 0;
            sg_report_trace_entry(r, i, &it, &lo, &hi);
            std::printf("iter %6llu  lower %.12g  upper %.12g\n",
                        static_cast<unsigned long long>(it), lo, hi);
        }
    }
}

int cmd_check(const std::string& model, const std::string& algo, double epsilon,
              std::uint64_t max_iters, bool trace, const std::string& output) {
    int code = kExitOk;
    GamePtr game = load_game(model, code);
    if (!game)
        return code;
    AlgoRun run;
    if (!run_algo(game.get(), algo, epsilon, max_iters, trace, run))
        return kExitUsage;
    if (output == "json")
        std::cout << report_json(model, run, epsilon, trace).dump(2) << "\n";
    else
        print_report_text(model, run, epsilon, trace);
    return sg_report_converged(run.report.get()) ? kExitOk : kExitNotConverged;
}

int cmd_compare(const std::string& model, std::vector<std::string> algos, double epsilon,
                std::uint64_t max_iters, const std::string& output) {
    if (algos.empty()) {
        std::cerr << "error: --algos requires at least one algorithm\n";
        return kExitUsage;
    }
    int code = kExitOk;
    GamePtr game = load_game(model, code);
    if (!game)
        return code;

    std::vector<AlgoRun> runs;
    for (const auto& name : algos) {
        AlgoRun run;
        if (!run_algo(game.get(), name, epsilon, max_iters, false, run))
            return kExitUsage;
        runs.push_back(std::move(run));
    }

    bool all_converged = true;
    if (output == "json") {
        json rows = json::array();
        for (const auto& run : runs)
            rows.push_back(report_json(model, run, epsilon, false));
        std::cout << json{{"model", model}, {"epsilon", epsilon}, {"rows", rows}}.dump(2)
                  << "\n";
    } else {
        std::printf("algorithm,iterations,lower,upper,estimate,converged,wall_ms\n");
        for (const auto& run : runs) {
            const sg_report* r = run.report.get();
            std::printf("%s,%llu,%.17g,%.17g,%.17g,%s,%.3f\n", run.name.c_str(),
                        static_cast<unsigned long long>(sg_report_iterations(r)),
                        sg_report_lower(r), sg_report_upper(r), sg_report_estimate(r),
                        sg_report_converged(r) ? "true" : "false", run.wall_ms);
        }
    }
    for (const auto& run : runs)
        all_converged = all_converged && sg_report_converged(run.report.get());
    return all_converged ? kExitOk : kExitNotConverged;
}

int write_model(sg_game* raw, const std::string& out_path) {
    GamePtr game(raw);
    char* text = nullptr;
    if (sg_game_serialize(game.get(), &text) != SG_OK)
        return fail("serialization failed");
    std::string body(text);
    sg_buffer_free(text);
    if (out_path.empty()) {
        std::cout << body;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return kExitUsage;
    }
    out << body;
    return kExitOk;
}

int cmd_oracle(const std::string& model, std::uint64_t cap) {
    int code = kExitOk;
    GamePtr game = load_game(model, code);
    if (!game)
        return code;
    double* values = nullptr;
    uint32_t count = 0;
    const sg_status status = sg_oracle_values(game.get(), cap, &values, &count);
    if (status == SG_ERR_CAP_EXCEEDED) {
        std::cerr << "error: " << sg_last_error() << "\n";
        return kExitCapExceeded;
    }
    if (status != SG_OK)
        return fail("oracle failed");
    json vals = json::array();
    for (uint32_t i = 0; i < count; ++i)
        vals.push_back(values[i]);
    sg_buffer_free(values);
    std::cout << json{{"model", model},
                      {"n_states", count},
                      {"init_state", sg_game_init_state(game.get())},
                      {"values", vals}}
                     .dump(2)
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic game reachability solver"};
    app.require_subcommand(1);

    std::string model, algo = "2wp", output = "text";
    double epsilon = 1e-6;
    std::uint64_t max_iters = 100000;
    bool trace = false;

    auto* check = app.add_subcommand("check", "solve one model with one algorithm");
    check->add_option("model", model, "model file")->required();
    check->add_option("--algo", algo, "vi|naive-bvi|1wp|2wp")->capture_default_str();
    check->add_option("--epsilon", epsilon, "precision")->capture_default_str();
    check->add_option("--max-iters", max_iters, "iteration cap")->capture_default_str();
    check->add_flag("--trace", trace, "record per-iteration bounds");
    check->add_option("--output", output, "text|json")->capture_default_str();

    std::vector<std::string> algos;
    std::string cmp_output = "csv";
    auto* compare = app.add_subcommand("compare", "run several algorithms on one model");
    compare->add_option("model", model, "model file")->required();
    compare->add_option("--algos", algos, "comma-separated algorithms")
        ->delimiter(',')
        ->required();
    compare->add_option("--epsilon", epsilon, "precision")->capture_default_str();
    compare->add_option("--max-iters", max_iters, "iteration cap")->capture_default_str();
    compare->add_option("--output", cmp_output, "csv|json")->capture_default_str();

    std::string kind, out_path, eps_text = "1/100";
    std::uint32_t gen_n = 3, gen_k = 1, gen_states = 5, gen_max_actions = 2, gen_branching = 2;
    double target_fraction = 0.2;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a benchmark model");
    gen->add_option("kind", kind, "fig1|ecchain|random|manyloops")->required();
    gen->add_option("--out", out_path, "output file (stdout when omitted)");
    gen->add_option("--n", gen_n, "ecchain: chain length")->capture_default_str();
    gen->add_option("--eps", eps_text, "ecchain: coin probability, e.g. 1/100")
        ->capture_default_str();
    gen->add_option("--k", gen_k, "manyloops: gadget count")->capture_default_str();
    gen->add_option("--states", gen_states, "random: state count")->capture_default_str();
    gen->add_option("--max-actions", gen_max_actions, "random: actions per state")
        ->capture_default_str();
    gen->add_option("--branching", gen_branching, "random: successors per action")
        ->capture_default_str();
    gen->add_option("--target-fraction", target_fraction, "random: target density")
        ->capture_default_str();
    gen->add_option("--seed", seed, "random: seed")->capture_default_str();

    std::uint64_t cap = 1000000;
    auto* oracle = app.add_subcommand("oracle", "exact brute-force values (desk scale)");
    oracle->add_option("model", model, "model file")->required();
    oracle->add_option("--cap", cap, "strategy-pair cap")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return kExitOk;
        }
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (check->parsed()) {
        if (output != "text" && output != "json") {
            std::cerr << "error: --output must be text or json\n";
            return kExitUsage;
        }
        return cmd_check(model, algo, epsilon, max_iters, trace, output);
    }
    if (compare->parsed()) {
        if (cmp_output != "csv" && cmp_output != "json") {
            std::cerr << "error: --output must be csv or json\n";
            return kExitUsage;
        }
        return cmd_compare(model, algos, epsilon, max_iters, cmp_output);
    }
    if (gen->parsed()) {
        sg_game* game = nullptr;
        sg_status status = SG_ERR_ARGUMENT;
        if (kind == "fig1") {
            status = sg_game_fig1(&game);
        } else if (kind == "ecchain") {
            int64_t num = 0, den = 1;
            if (sg_parse_probability(eps_text.c_str(), &num, &den) != SG_OK)
                return fail("bad --eps '" + eps_text + "'");
            status = sg_game_ecchain(gen_n, num, den, &game);
        } else if (kind == "random") {
            status = sg_game_random(gen_states, gen_max_actions, gen_branching,
                                    target_fraction, seed, &game);
        } else if (kind == "manyloops") {
            status = sg_game_many_loops(gen_k, &game);
        } else {
            std::cerr << "error: unknown generator '" << kind
                      << "' (expected fig1|ecchain|random|manyloops)\n";
            return kExitUsage;
        }
        if (status != SG_OK)
            return fail("generation failed");
        return write_model(game, out_path);
    }
    if (oracle->parsed())
        return cmd_oracle(model, cap);
    return kExitUsage;
}

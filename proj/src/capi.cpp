#include "sgsolve.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "sgsolve/game.hpp"
#include "sgsolve/modelio.hpp"
#include "sgsolve/oracle.hpp"
#include "sgsolve/solvers.hpp"

struct sg_game {
    sgsolve::StochasticGame impl;
};

struct sg_report {
    sgsolve::SolveReport impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
sg_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const sgsolve::modelio::ParseError& e) {
        set_error(e.what());
        return SG_ERR_PARSE;
    } catch (const sgsolve::oracle::CapExceeded& e) {
        set_error(e.what());
        return SG_ERR_CAP_EXCEEDED;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SG_ERR_ARGUMENT;
    } catch (const std::out_of_range& e) {
        set_error(e.what());
        return SG_ERR_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SG_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return SG_ERR_INTERNAL;
    }
}

sg_status wrap_game(sgsolve::StochasticGame game, sg_game** out) {
    *out = new sg_game{std::move(game)};
    return SG_OK;
}

char* copy_to_buffer(const std::string& text) {
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf)
        throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return buf;
}

bool require(bool cond, const char* msg) {
    if (!cond)
        set_error(msg);
    return cond;
}

}  // namespace

extern "C" {

const char* sg_last_error(void) { return g_last_error.c_str(); }

sg_status sg_game_from_string(const char* text, sg_game** out) {
    if (!require(text && out, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] { return wrap_game(sgsolve::modelio::parse_model(text), out); });
}

sg_status sg_game_from_file(const char* path, sg_game** out) {
    if (!require(path && out, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] { return wrap_game(sgsolve::modelio::load_model(path), out); });
}

sg_status sg_game_fig1(sg_game** out) {
    if (!require(out != nullptr, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] { return wrap_game(sgsolve::modelio::gen_fig1(), out); });
}

sg_status sg_game_ecchain(uint32_t n, int64_t eps_num, int64_t eps_den, sg_game** out) {
    if (!require(out != nullptr, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        return wrap_game(
            sgsolve::modelio::gen_ecchain(n, sgsolve::Rational(eps_num, eps_den)), out);
    });
}

sg_status sg_game_random(uint32_t n_states, uint32_t max_actions, uint32_t branching,
                         double target_fraction, uint64_t seed, sg_game** out) {
    if (!require(out != nullptr, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        return wrap_game(sgsolve::modelio::gen_random_sg(n_states, max_actions, branching,
                                                         target_fraction, seed),
                         out);
    });
}

sg_status sg_game_many_loops(uint32_t k, sg_game** out) {
    if (!require(out != nullptr, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] { return wrap_game(sgsolve::modelio::gen_many_loops(k), out); });
}

void sg_game_free(sg_game* game) { delete game; }

uint32_t sg_game_num_states(const sg_game* game) {
    return game ? game->impl.num_states() : 0;
}

uint32_t sg_game_init_state(const sg_game* game) {
    return game ? game->impl.init_state() : 0;
}

sg_status sg_game_serialize(const sg_game* game, char** out_text) {
    if (!require(game && out_text, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        *out_text = copy_to_buffer(sgsolve::modelio::serialize_model(game->impl));
        return SG_OK;
    });
}

sg_status sg_game_validate(const sg_game* game, char** out_violations) {
    if (!require(game && out_violations, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        std::string joined;
        for (const auto& v : sgsolve::validate_game(game->impl)) {
            joined += v;
            joined += '\n';
        }
        *out_violations = copy_to_buffer(joined);
        return SG_OK;
    });
}

sg_status sg_parse_probability(const char* token, int64_t* out_num, int64_t* out_den) {
    if (!require(token && out_num && out_den, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        sgsolve::Rational r = sgsolve::modelio::parse_probability(token);
        if (r.numerator() > INT64_MAX || r.denominator() > INT64_MAX) {
            set_error("probability does not fit 64-bit integers");
            return SG_ERR_ARGUMENT;
        }
        *out_num = static_cast<int64_t>(r.numerator());
        *out_den = static_cast<int64_t>(r.denominator());
        return SG_OK;
    });
}

sg_status sg_solve(const sg_game* game, sg_algorithm algorithm,
                   const sg_solve_config* config, sg_report** out) {
    if (!require(game && config && out, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        sgsolve::solvers::Algorithm algo;
        switch (algorithm) {
            case SG_ALGO_VI: algo = sgsolve::solvers::Algorithm::ValueIteration; break;
            case SG_ALGO_NAIVE_BVI: algo = sgsolve::solvers::Algorithm::NaiveBvi; break;
            case SG_ALGO_1WP_BVI: algo = sgsolve::solvers::Algorithm::OneWpBvi; break;
            case SG_ALGO_2WP_BVI: algo = sgsolve::solvers::Algorithm::TwoWpBvi; break;
            default:
                set_error("unknown algorithm id");
                return SG_ERR_ARGUMENT;
        }
        sgsolve::SolverConfig cfg;
        cfg.epsilon = config->epsilon;
        cfg.max_iters = config->max_iters;
        cfg.record_trace = config->record_trace != 0;
        *out = new sg_report{sgsolve::solvers::solve(game->impl, algo, cfg)};
        return SG_OK;
    });
}

double sg_report_lower(const sg_report* report) { return report->impl.lower; }
double sg_report_upper(const sg_report* report) { return report->impl.upper; }
double sg_report_estimate(const sg_report* report) { return report->impl.estimate; }
uint64_t sg_report_iterations(const sg_report* report) { return report->impl.iterations; }
int sg_report_converged(const sg_report* report) { return report->impl.converged ? 1 : 0; }
int sg_report_precision_sound(const sg_report* report) {
    return report->impl.precision_sound ? 1 : 0;
}
uint64_t sg_report_trace_size(const sg_report* report) { return report->impl.trace.size(); }

sg_status sg_report_trace_entry(const sg_report* report, uint64_t index,
                                uint64_t* out_iteration, double* out_lower,
                                double* out_upper) {
    if (!require(report && out_iteration && out_lower && out_upper, "null argument"))
        return SG_ERR_ARGUMENT;
    if (!require(index < report->impl.trace.size(), "trace index out of range"))
        return SG_ERR_ARGUMENT;
    const auto& entry = report->impl.trace[index];
    *out_iteration = entry.iteration;
    *out_lower = entry.lower;
    *out_upper = entry.upper;
    return SG_OK;
}

void sg_report_free(sg_report* report) { delete report; }

sg_status sg_oracle_values(const sg_game* game, uint64_t cap, double** out_values,
                           uint32_t* out_count) {
    if (!require(game && out_values && out_count, "null argument"))
        return SG_ERR_ARGUMENT;
    return guarded([&] {
        const uint64_t effective = cap == 0 ? sgsolve::oracle::kDefaultCap : cap;
        sgsolve::ValueVector values = sgsolve::oracle::exact_value(game->impl, effective);
        auto* buf = static_cast<double*>(std::malloc(sizeof(double) * values.size()));
        if (!buf)
            throw std::bad_alloc();
        std::memcpy(buf, values.data(), sizeof(double) * values.size());
        *out_values = buf;
        *out_count = static_cast<uint32_t>(values.size());
        return SG_OK;
    });
}

void sg_buffer_free(void* buffer) { std::free(buffer); }

}  // extern "C"

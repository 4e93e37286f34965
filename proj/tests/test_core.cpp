#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sgsolve/game.hpp"
#include "sgsolve/modelio.hpp"
#include "test_util.hpp"

using namespace sgsolve;
using test_util::action;
using test_util::state;

TEST_CASE("validate accepts the running example") {
    CHECK(validate_game(modelio::gen_fig1()).empty());
}

TEST_CASE("validate reports a state without actions") {
    std::vector<State> states;
    states.push_back(state(Owner::Maximizer, {action("a", {{1, Rational(1)}})}));
    states.push_back(state(Owner::Minimizer, {}));
    StochasticGame game(std::move(states), 0, {0});
    auto violations = validate_game(game);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("state 1") != std::string::npos);
    CHECK(violations[0].find("no available action") != std::string::npos);
}

TEST_CASE("validate reports a distribution not summing to one") {
    std::vector<State> states;
    sgsolve::Action bad;
    bad.label = "a";
    bad.dist.push_back({0, 0.5, Rational(1, 2)});
    bad.dist.push_back({1, 0.3, Rational(3, 10)});
    states.push_back(state(Owner::Maximizer, {bad}));
    states.push_back(state(Owner::Maximizer, {action("a", {{1, Rational(1)}})}));
    StochasticGame game(std::move(states), 0, {1});
    auto violations = validate_game(game);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("state 0") != std::string::npos);
    CHECK(violations[0].find("'a'") != std::string::npos);
    CHECK(violations[0].find("sum") != std::string::npos);
}

TEST_CASE("validate reports bad indices, duplicate labels and successors") {
    std::vector<State> states;
    states.push_back(state(Owner::Maximizer,
                           {action("a", {{0, Rational(1, 2)}, {0, Rational(1, 2)}}),
                            action("a", {{5, Rational(1)}})}));
    StochasticGame game(std::move(states), 3, {7});
    auto violations = validate_game(game);
    // init out of range, target out of range, duplicate label, duplicate
    // successor, successor out of range
    CHECK(violations.size() == 5);
}

TEST_CASE("post returns positive-probability successors in stored order") {
    auto fig1 = modelio::gen_fig1();
    CHECK(post(fig1, 0, 0) == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(post(fig1, 2, 0) == std::vector<std::uint32_t>{2});
    CHECK(post(fig1, 3, 1) == std::vector<std::uint32_t>{4});  // deterministic action
    CHECK_THROWS_AS((void)post(fig1, 6, 0), std::out_of_range);
    CHECK_THROWS_AS((void)post(fig1, 0, 5), std::out_of_range);
}

TEST_CASE("round trip: valid games serialize and reparse identically") {
    auto games = {modelio::gen_fig1(), modelio::gen_ecchain(3, Rational(1, 4)),
                  modelio::gen_random_sg(6, 3, 3, 0.3, 7), modelio::gen_many_loops(4)};
    for (const auto& game : games) {
        REQUIRE(validate_game(game).empty());
        auto text = modelio::serialize_model(game);
        auto reparsed = modelio::parse_model(text);
        CHECK(modelio::serialize_model(reparsed) == text);
        REQUIRE(reparsed.num_states() == game.num_states());
        CHECK(reparsed.init_state() == game.init_state());
        CHECK(reparsed.targets() == game.targets());
        for (std::uint32_t s = 0; s < game.num_states(); ++s) {
            CHECK(reparsed.owner(s) == game.owner(s));
            REQUIRE(reparsed.actions(s).size() == game.actions(s).size());
            for (std::uint32_t a = 0; a < game.actions(s).size(); ++a) {
                const auto& lhs = reparsed.action(s, a);
                const auto& rhs = game.action(s, a);
                CHECK(lhs.label == rhs.label);
                REQUIRE(lhs.dist.size() == rhs.dist.size());
                for (std::size_t i = 0; i < lhs.dist.size(); ++i) {
                    CHECK(lhs.dist[i].target == rhs.dist[i].target);
                    CHECK(lhs.dist[i].exact == rhs.dist[i].exact);
                    CHECK(lhs.dist[i].prob == rhs.dist[i].prob);
                }
            }
        }
    }
}

TEST_CASE("value vector lattice ops satisfy partial-order laws") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 50; ++round) {
        auto a = test_util::random_unit_vector(rng, 8);
        auto b = test_util::random_unit_vector(rng, 8);
        auto c = test_util::random_unit_vector(rng, 8);
        auto j = test_util::join(a, b);
        auto m = test_util::meet(a, b);
        CHECK(test_util::leq_all(m, a));
        CHECK(test_util::leq_all(m, b));
        CHECK(test_util::leq_all(a, j));
        CHECK(test_util::leq_all(b, j));
        // commutativity and associativity
        CHECK(test_util::join(a, b) == test_util::join(b, a));
        CHECK(test_util::meet(a, b) == test_util::meet(b, a));
        CHECK(test_util::join(test_util::join(a, b), c) ==
              test_util::join(a, test_util::join(b, c)));
        // absorption
        CHECK(test_util::join(a, test_util::meet(a, b)) == a);
        CHECK(test_util::meet(a, test_util::join(a, b)) == a);
        // antisymmetry via leq both ways implies equality
        if (test_util::leq_all(a, b) && test_util::leq_all(b, a))
            CHECK(a == b);
    }
}

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

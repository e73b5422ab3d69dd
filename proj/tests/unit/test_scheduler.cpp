#include "doctest.h"

#include "arco/scheduler.hpp"
#include "arco/types.hpp"

#include <random>

using namespace arco;

TEST_SUITE("scheduler") {

TEST_CASE("intervals from budgets") {
    CHECK(BudgetState::init({50, 50, 25, 25, 50, 25}).tau() == std::vector<int>{1, 1, 2, 2, 1, 2});
    const auto w = BudgetState::init({30, 10, 20, 20});
    CHECK(w.b_max() == 30);
    CHECK(w.tau() == std::vector<int>{1, 3, 1, 1});
    CHECK(BudgetState::init({20, 20, 20}).tau() == std::vector<int>{1, 1, 1});
}

TEST_CASE("activity rule") {
    auto s = BudgetState::init({4, 2});
    CHECK(s.is_active(1, 0));
    CHECK_FALSE(s.is_active(1, 3));
    CHECK(s.is_active(1, 2));
    s.record_evaluation(1);
    s.record_evaluation(1);
    CHECK_FALSE(s.is_active(1, 4));
}

TEST_CASE("decrement and exhaustion") {
    auto s = BudgetState::init({25});
    s.record_evaluation(0);
    CHECK(s.remaining()[0] == 24);
    auto z = BudgetState::init({1, 0});
    CHECK_FALSE(z.is_active(1, 0));
    CHECK_THROWS(z.record_evaluation(1));
    CHECK_THROWS(BudgetState::init({0, 0}));
    CHECK_THROWS(BudgetState::init({}));
    CHECK_THROWS(BudgetState::init({3, -1}));
}

namespace {

std::vector<int> simulate(const std::vector<int>& budgets, int T) {
    auto s = BudgetState::init(budgets);
    std::vector<int> used(budgets.size(), 0);
    for (int t = 0; t < T && s.any_remaining(); ++t) {
        for (int k = 0; k < s.num_agents(); ++k) {
            if (s.is_active(k, t)) {
                s.record_evaluation(k);
                ++used[static_cast<std::size_t>(k)];
            }
        }
    }
    return used;
}

}  // namespace

TEST_CASE("enumerated schedules") {
    CHECK(simulate({50, 25}, 50)[1] == 25);
    CHECK(simulate({30, 10}, 30)[1] == 10);
    // t = 0, 3, ..., 27 are the activations
    int count = 0;
    for (int t = 0; t < 30; ++t) count += t % 3 == 0 ? 1 : 0;
    CHECK(count == 10);
}

TEST_CASE("fuzzed sweep never exceeds budgets") {
    std::mt19937 gen(42);
    std::uniform_int_distribution<int> kd(1, 8), bd(0, 60), td(1, 120);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<int> b(static_cast<std::size_t>(kd(gen)));
        for (auto& v : b) v = bd(gen);
        if (*std::max_element(b.begin(), b.end()) == 0) b[0] = 1;
        const auto used = simulate(b, td(gen));
        for (std::size_t k = 0; k < b.size(); ++k) REQUIRE(used[k] <= b[k]);
    }
}

TEST_CASE("equal budgets run synchronously") {
    auto s = BudgetState::init({5, 5, 5});
    for (int t = 0; t < 5; ++t) {
        for (int k = 0; k < 3; ++k) {
            CHECK(s.is_active(k, t));
            s.record_evaluation(k);
        }
    }
    CHECK_FALSE(s.any_remaining());
}

}  // TEST_SUITE

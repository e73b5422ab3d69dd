#include "doctest.h"

#include "arco/benchmarks.hpp"
#include "arco/oracle.hpp"
#include "oracles.hpp"

#include <random>

using namespace arco;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

}  // namespace

TEST_SUITE("benchmarks") {

TEST_CASE("hand-evaluated points") {
    CHECK(bench::evaluate("sasena", 1, vec({0.0})) == doctest::Approx(9.0));
    CHECK(std::abs(bench::evaluate("ackley", 1, vec({0.0, 0.0}))) < 1e-12);
}

TEST_CASE("borehole agrees with an independent transcription") {
    const auto& fam = bench::family("borehole");
    const Vector mid = 0.5 * (fam.bounds.lower + fam.bounds.upper);
    const double want = oracle::borehole_flow(mid[0], mid[1], mid[2], mid[3], mid[4], mid[5], mid[6], mid[7]);
    CHECK(std::abs(bench::evaluate("borehole", 1, mid) - want) <= 1e-10 * std::abs(want));

    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Vector x(8);
        for (int j = 0; j < 8; ++j) x[j] = fam.bounds.lower[j] + u(gen) * fam.bounds.range(j);
        const double ref = oracle::borehole_flow(x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7]);
        CHECK(std::abs(bench::evaluate("borehole", 1, x) - ref) <= 1e-10 * std::abs(ref));
    }
}

TEST_CASE("input checks") {
    CHECK_THROWS(bench::evaluate("ackley", 1, vec({0.0})));
    CHECK_THROWS(bench::evaluate("ackley", 1, vec({0.0, 6.0})));
    CHECK_THROWS(bench::evaluate("nope", 1, vec({0.0})));
    CHECK_THROWS(bench::reference_optimum("sasena", 4));
}

TEST_CASE("every agent is finite across its domain") {
    std::mt19937_64 gen(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& id : bench::family_ids()) {
        const auto& fam = bench::family(id);
        for (int a = 1; a <= bench::num_agents(id); ++a) {
            for (int i = 0; i < 500; ++i) {
                Vector x(fam.dim);
                for (int j = 0; j < fam.dim; ++j) x[j] = fam.bounds.lower[j] + u(gen) * fam.bounds.range(j);
                REQUIRE(std::isfinite(bench::evaluate(id, a, x)));
            }
            REQUIRE(std::isfinite(bench::evaluate(id, a, fam.bounds.lower)));
            REQUIRE(std::isfinite(bench::evaluate(id, a, fam.bounds.upper)));
        }
    }
}

TEST_CASE("ackley agent 4 ignores x2") {
    for (double x1 : {-4.0, -0.4, 0.0, 2.2})
        CHECK(bench::evaluate("ackley", 4, vec({x1, -5.0})) == bench::evaluate("ackley", 4, vec({x1, 3.3})));
}

TEST_CASE("reference optima") {
    CHECK(bench::reference_optimum("sasena", 1).value == 6.782);
    CHECK(bench::reference_optimum("sasena", 2).value == 8.269);
    CHECK(bench::reference_optimum("sasena", 3).value == 5.959);
    const double bh[] = {3.985, 15.582, 1.000, 3.434, 3.153};
    for (int a = 1; a <= 5; ++a) CHECK(bench::reference_optimum("borehole", a).value == bh[a - 1]);
    CHECK(bench::reference_optimum("wingweight", 4).value == 268.13);
    CHECK(bench::reference_optimum("ackley", 5).tolerance == doctest::Approx(0.01));
}

TEST_CASE("sasena minimum on a dense grid") {
    double best = 1e300;
    for (int i = 0; i <= 1'000'000; ++i) best = std::min(best, bench::evaluate("sasena", 1, vec({10.0 * i / 1e6})));
    CHECK(std::abs(best - 6.782) < 1e-3);
}

TEST_CASE("cached ranges bound the optimum") {
    for (const auto& id : bench::family_ids()) {
        for (int a = 1; a <= bench::num_agents(id); ++a) {
            const auto [lo, hi] = bench::function_range(id, a);
            const auto ref = bench::reference_optimum(id, a);
            CHECK(lo < hi);
            // The printed wing weight formula for agent 1 puts s_w * w_p inside
            // the product; the tabulated 123.25 only follows from the additive form.
            if (id == "wingweight" && a == 1) {
                CHECK(lo == doctest::Approx(126.977).epsilon(1e-4));
                continue;
            }
            CHECK(lo <= ref.value + ref.tolerance);
        }
    }
}

TEST_CASE("oracle is deterministic") {
    auto f = [](const Vector& x) { return bench::evaluate_unchecked("sasena", 2, x); };
    const Bounds b({0.0}, {10.0});
    const auto r1 = bench::dense_search(f, b, 5, 2000, 10);
    const auto r2 = bench::dense_search(f, b, 5, 2000, 10);
    CHECK(r1.f_min == r2.f_min);
    CHECK(r1.f_max == r2.f_max);
    CHECK(r1.f_min == doctest::Approx(8.269).epsilon(1e-3));
}

TEST_CASE("range cache text round trip") {
    bench::RangeCache c;
    c.oracle_seed = 3;
    c.samples = 10;
    c.entries.push_back({"sasena", 1, 6.7820169078334223, 9.4106786895143113, 6.782, true});
    const auto back = bench::parse_range_cache(bench::serialize(c));
    REQUIRE(back.entries.size() == 1);
    CHECK(back.entries[0].f_min == c.entries[0].f_min);
    CHECK(back.entries[0].f_max == c.entries[0].f_max);
    CHECK(back.oracle_seed == 3);
}

TEST_CASE("scenarios") {
    const auto s2 = bench::scenario_agents("ackley", 2);
    std::vector<int> budgets;
    for (const auto& e : s2) budgets.push_back(e.budget.value_or(50));
    CHECK(budgets == std::vector<int>{50, 25, 25, 50, 50, 25});
    const auto s3 = bench::scenario_agents("ackley", 3);
    const auto a = bench::make_agent(s3[0], 0);
    CHECK(a.layout.shared_dims == std::vector<int>{0});
    CHECK(a.layout.private_dims == std::vector<int>{1});
    CHECK_THROWS(bench::scenario_agents("sasena", 2));

    const auto w = bench::make_agent(bench::scenario_agents("wingweight", 1)[0], 0);
    CHECK(w.layout.shared_dims == std::vector<int>{0, 1, 2, 4, 8});
    CHECK(w.budget == 30);
    CHECK(w.n_init == 5);
}

}  // TEST_SUITE

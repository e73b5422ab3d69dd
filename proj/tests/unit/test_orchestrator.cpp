#include "doctest.h"

#include "arco/acquisition.hpp"
#include "arco/orchestrator.hpp"

using namespace arco;

namespace {

Experiment sasena(std::optional<int> iterations = std::nullopt) {
    ExperimentConfig c;
    c.benchmark = "sasena";
    c.iterations = iterations;
    return validate_experiment(c);
}

Experiment single_agent() {
    ExperimentConfig c;
    AgentEntry e;
    e.function = {"ackley", 1};
    e.budget = 8;
    c.agents = {e};
    return validate_experiment(c);
}

void check_record_invariants(const Experiment& exp, const RunRecord& r) {
    REQUIRE(r.ok());
    for (const auto& curve : r.best_so_far) {
        REQUIRE(static_cast<int>(curve.size()) == exp.iterations + 1);
        for (std::size_t t = 1; t < curve.size(); ++t) CHECK(curve[t] <= curve[t - 1]);
    }
    for (const auto& it : r.trace) {
        for (std::size_t a = 0; a < it.active.size(); ++a) {
            const auto& agent = exp.agents[static_cast<std::size_t>(it.active[a])];
            CHECK(agent.bounds.contains(it.evaluated[a]));
            CHECK(agent.layout.private_part(it.evaluated[a]) == agent.layout.private_part(it.raw[a]));
        }
        const auto m = static_cast<Eigen::Index>(it.active.size());
        if (m > 0) {
            CHECK(it.W.rows() == m);
            CHECK((it.W.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-6);
            CHECK((it.W.colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-6);
        }
    }
    for (std::size_t k = 0; k < r.budget.size(); ++k) CHECK(r.evaluations_used[k] <= r.budget[k]);
}

}  // namespace

TEST_SUITE("orchestrator") {

TEST_CASE("sasena datasets grow by the budget") {
    const auto exp = sasena();
    const auto r = run_arco(exp, 3);
    check_record_invariants(exp, r);
    for (const auto& d : r.datasets) CHECK(d.size() == 23);
    CHECK(r.trace.size() == 20);
}

TEST_CASE("one agent: ARCO equals separate BO") {
    const auto exp = single_agent();
    const auto a = run_arco(exp, 11);
    const auto s = run_separate(exp, 11);
    REQUIRE(a.trace.size() == s.trace.size());
    for (std::size_t t = 0; t < a.trace.size(); ++t) {
        CHECK(a.trace[t].raw == s.trace[t].raw);
        CHECK(a.trace[t].evaluated == s.trace[t].evaluated);
    }
    CHECK(a.best_so_far == s.best_so_far);
}

TEST_CASE("first separate step is the acquisition proposal") {
    const auto exp = single_agent();
    const auto r = run_separate(exp, 4);
    const auto& agent = exp.agents[0];
    const Dataset init = initial_design(agent, 4);
    const auto m = GpModel::fit(init, agent.bounds, exp.config.kernel);
    SeededRng rng(4, {StreamPurpose::candidates, agent.stream_key, 0});
    const auto p = propose(m, init, agent.bounds, rng, exp.config.candidates_per_dim);
    CHECK(r.trace[0].evaluated[0] == p.x);
}

TEST_CASE("identical agents propose identical points") {
    ExperimentConfig c;
    AgentEntry e;
    e.function = {"ackley", 1};
    e.budget = 6;
    e.stream_key = 0;
    c.agents = {e, e, e};
    const auto exp = validate_experiment(c);
    const auto r = run_arco(exp, 2);
    check_record_invariants(exp, r);
    for (const auto& it : r.trace) {
        for (std::size_t a = 1; a < it.raw.size(); ++a) CHECK(it.raw[a] == it.raw[0]);
        for (std::size_t a = 0; a < it.raw.size(); ++a)
            CHECK((it.evaluated[a] - it.raw[a]).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("uniform baseline averages at t = 0") {
    ExperimentConfig c;
    AgentEntry a, b;
    a.function = {"sasena", 1};
    b.function = {"sasena", 3};
    c.agents = {a, b};
    const auto exp = validate_experiment(c);
    const auto r = run_uniform_cbo(exp, 1);
    check_record_invariants(exp, r);
    const auto& it = r.trace[0];
    const double mid = 0.5 * (it.raw[0][0] + it.raw[1][0]);
    CHECK(it.evaluated[0][0] == doctest::Approx(mid));
    CHECK(it.evaluated[1][0] == doctest::Approx(mid));
    CHECK(r.trace.back().W.isApprox(ColMatrix::Identity(2, 2), 0.1));
    CHECK_FALSE(r.protocol_extension);
}

TEST_CASE("same seed, same record") {
    const auto exp = sasena(8);
    for (auto fn : {run_arco, run_separate, run_uniform_cbo}) {
        const auto a = fn(exp, 9);
        const auto b = fn(exp, 9);
        REQUIRE(a.trace.size() == b.trace.size());
        CHECK(a.best_so_far == b.best_so_far);
        for (std::size_t t = 0; t < a.trace.size(); ++t) {
            CHECK(a.trace[t].evaluated == b.trace[t].evaluated);
            CHECK(a.trace[t].W == b.trace[t].W);
        }
    }
}

TEST_CASE("initial designs match across methods") {
    const auto exp = sasena(3);
    const auto a = run_arco(exp, 5);
    const auto s = run_separate(exp, 5);
    const auto u = run_uniform_cbo(exp, 5);
    for (std::size_t k = 0; k < a.initial.size(); ++k) {
        CHECK(a.initial[k].inputs() == s.initial[k].inputs());
        CHECK(a.initial[k].inputs() == u.initial[k].inputs());
    }
}

TEST_CASE("unequal budgets follow the schedule") {
    ExperimentConfig c;
    c.benchmark = "wingweight";
    c.candidates_per_dim = 64;
    const auto exp = validate_experiment(c);
    const auto r = run_arco(exp, 1);
    check_record_invariants(exp, r);
    CHECK(r.evaluations_used == std::vector<int>{30, 10, 20, 20});
    CHECK(r.trace[1].active == std::vector<int>{0, 2, 3});
    for (const auto& it : r.trace) CHECK(it.S.rows() == static_cast<Eigen::Index>(it.active.size()));

    const auto u = run_uniform_cbo(exp, 1);
    check_record_invariants(exp, u);
    CHECK(u.protocol_extension);
}

TEST_CASE("failures are captured per replicate") {
    AgentSpec a;
    a.id = 0;
    a.bounds = Bounds({0.0}, {1.0});
    a.layout = InputLayout::all_shared(1);
    a.budget = 3;
    a.n_init = 2;
    int calls = 0;
    a.objective = [&calls](const Vector& x) {
        if (++calls > 3) throw Error("simulator crashed");
        return x[0];
    };
    ExperimentConfig c;
    const auto exp = make_experiment(c, {a});
    const auto r = run_method(exp, Method::arco, 0);
    CHECK_FALSE(r.ok());
    CHECK(r.error->find("simulator crashed") != std::string::npos);
}

}  // TEST_SUITE

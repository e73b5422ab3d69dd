#include "arco/orchestrator.hpp"

#include "arco/acquisition.hpp"
#include "arco/consensus.hpp"
#include "arco/scheduler.hpp"

#include <algorithm>
#include <memory>

namespace arco {

std::vector<Vector> RunRecord::solutions() const {
    std::vector<Vector> out;
    out.reserve(datasets.size());
    for (const auto& d : datasets) out.push_back(incumbent(d).x_star_obs);
    return out;
}

Dataset initial_design(const AgentSpec& agent, std::uint64_t seed) {
    SeededRng rng(seed, {StreamPurpose::initial_design, agent.stream_key, 0});
    const Matrix x = lhs(agent.n_init, agent.bounds, rng);
    Dataset data;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        Vector xi = x.row(i).transpose();
        const double y = agent.objective(xi);
        data.append(std::move(xi), y);
    }
    return data;
}

namespace {

ColMatrix restrict_to(const ColMatrix& full, const std::vector<int>& active) {
    const auto m = static_cast<Eigen::Index>(active.size());
    ColMatrix out(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            out(a, b) = full(active[static_cast<std::size_t>(a)], active[static_cast<std::size_t>(b)]);
    return out;
}

RunRecord run_loop(const Experiment& exp, Method method, std::uint64_t seed) {
    const auto& cfg = exp.config;
    const auto& agents = exp.agents;
    const int K = exp.num_agents();
    const int T = exp.iterations;

    RunRecord rec;
    rec.method = method;
    rec.seed = seed;
    rec.iterations = T;
    rec.best_so_far.assign(static_cast<std::size_t>(K), std::vector<double>(static_cast<std::size_t>(T) + 1, 0.0));
    rec.y_at.assign(static_cast<std::size_t>(K),
                    std::vector<std::optional<double>>(static_cast<std::size_t>(T) + 1, std::nullopt));

    std::vector<Dataset> data;
    data.reserve(agents.size());
    std::vector<double> best(static_cast<std::size_t>(K));
    std::vector<int> budgets;
    for (const auto& a : agents) {
        data.push_back(initial_design(a, seed));
        best[static_cast<std::size_t>(a.id)] = incumbent(data.back()).f_star;
        budgets.push_back(a.budget);
    }
    rec.initial = data;
    rec.budget = budgets;
    for (int k = 0; k < K; ++k) rec.best_so_far[static_cast<std::size_t>(k)][0] = best[static_cast<std::size_t>(k)];

    auto state = BudgetState::init(budgets);

    std::unique_ptr<TestGrid> grid;
    double lambda_p = 0.0;
    if (method == Method::arco) {
        grid = std::make_unique<TestGrid>(make_test_grid(agents, cfg.grid_multiplier, seed));
        lambda_p = proximity_lambda(shared_domain_range(agents.front().bounds, agents.front().layout),
                                    cfg.proximity_fraction);
    }

    std::vector<std::optional<GpModel>> models(static_cast<std::size_t>(K));
    for (int t = 0; t < T; ++t) {
        const auto column = static_cast<std::size_t>(t) + 1;
        if (!state.any_remaining()) {
            for (int k = 0; k < K; ++k) rec.best_so_far[static_cast<std::size_t>(k)][column] = best[static_cast<std::size_t>(k)];
            continue;
        }

        IterationRecord it;
        it.t = t;
        for (int k = 0; k < K; ++k) {
            if (state.is_active(k, t)) it.active.push_back(k);
        }

        std::vector<Vector> proposals(static_cast<std::size_t>(K));
        for (int k : it.active) {
            const auto& agent = agents[static_cast<std::size_t>(k)];
            auto& model = models[static_cast<std::size_t>(k)];
            model = GpModel::fit(data[static_cast<std::size_t>(k)], agent.bounds, cfg.kernel);
            it.jitter.push_back(model->jitter());
            SeededRng rng(seed, {StreamPurpose::candidates, agent.stream_key, static_cast<std::uint32_t>(t)});
            auto p = propose(*model, data[static_cast<std::size_t>(k)], agent.bounds, rng, cfg.candidates_per_dim);
            proposals[static_cast<std::size_t>(k)] = p.x;
            it.raw.push_back(std::move(p.x));
        }

        const auto m = static_cast<Eigen::Index>(it.active.size());
        std::vector<Vector> evaluated = proposals;
        if (m > 0) {
            switch (method) {
                case Method::separate:
                    it.W = ColMatrix::Identity(m, m);
                    break;
                case Method::arco: {
                    std::vector<const GpModel*> ptrs(static_cast<std::size_t>(K), nullptr);
                    for (int k : it.active) ptrs[static_cast<std::size_t>(k)] = &*models[static_cast<std::size_t>(k)];
                    const auto emb = compute_embeddings(ptrs, agents, it.active, *grid);
                    it.S = similarity_matrix(emb, lambda_p);
                    it.gamma = gamma_decay(t, T, cfg.alpha);
                    it.W = build_w(it.S, t, T, cfg.alpha, cfg.sinkhorn_tol, cfg.sinkhorn_max_iter);
                    break;
                }
                case Method::uniform_cbo: {
                    const ColMatrix full = baseline_w(t, T, K);
                    if (m == K) {
                        it.W = full;
                    } else {
                        it.W = sinkhorn(restrict_to(full, it.active), cfg.sinkhorn_tol, cfg.sinkhorn_max_iter).matrix;
                        rec.protocol_extension = true;
                    }
                    break;
                }
            }
            if (method != Method::separate) evaluated = apply_consensus(it.W, proposals, agents, it.active);
        }

        for (int k : it.active) {
            const auto ks = static_cast<std::size_t>(k);
            Vector x = evaluated[ks];
            const double y = agents[ks].objective(x);
            it.evaluated.push_back(x);
            it.y.push_back(y);
            data[ks].append(std::move(x), y);
            state.record_evaluation(k);
            best[ks] = std::min(best[ks], y);
            rec.y_at[ks][column] = y;
        }
        for (int k = 0; k < K; ++k) rec.best_so_far[static_cast<std::size_t>(k)][column] = best[static_cast<std::size_t>(k)];
        it.remaining = state.remaining();
        rec.trace.push_back(std::move(it));
    }

    rec.datasets = std::move(data);
    rec.evaluations_used.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        rec.evaluations_used[ks] = state.initial()[ks] - state.remaining()[ks];
    }
    return rec;
}

}  // namespace

RunRecord run_arco(const Experiment& exp, std::uint64_t seed) { return run_loop(exp, Method::arco, seed); }
RunRecord run_separate(const Experiment& exp, std::uint64_t seed) { return run_loop(exp, Method::separate, seed); }
RunRecord run_uniform_cbo(const Experiment& exp, std::uint64_t seed) {
    return run_loop(exp, Method::uniform_cbo, seed);
}

RunRecord run_method(const Experiment& exp, Method method, std::uint64_t seed) {
    try {
        return run_loop(exp, method, seed);
    } catch (const std::exception& e) {
        RunRecord rec;
        rec.method = method;
        rec.seed = seed;
        rec.iterations = exp.iterations;
        rec.error = e.what();
        return rec;
    }
}

}  // namespace arco

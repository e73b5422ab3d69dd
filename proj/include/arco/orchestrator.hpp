#pragma once

#include "arco/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arco {

struct IterationRecord {
    int t = 0;
    std::vector<int> active;              // agent ids, ascending
    std::vector<Vector> raw;              // per active agent, pre-consensus
    std::vector<Vector> evaluated;        // per active agent, post-consensus
    std::vector<double> y;                // per active agent
    std::vector<double> jitter;           // Cholesky jitter of each active agent's fit
    std::vector<int> remaining;           // all agents, after this iteration
    double gamma = 0.0;                   // ARCO decay; 0 for other methods
    ColMatrix S;                          // ARCO only, over the active set
    ColMatrix W;                          // consensus weights over the active set
};

struct RunRecord {
    Method method = Method::arco;
    std::uint64_t seed = 0;
    int iterations = 0;                         // T
    std::vector<Dataset> initial;               // per agent
    std::vector<Dataset> datasets;              // per agent, final
    std::vector<IterationRecord> trace;         // one entry per executed iteration
    // best_so_far[k][0] is the initial-design best; [k][t + 1] follows iteration t.
    std::vector<std::vector<double>> best_so_far;
    std::vector<std::vector<std::optional<double>>> y_at;  // same indexing, evaluations only
    std::vector<int> budget;
    std::vector<int> evaluations_used;
    bool protocol_extension = false;  // uniform CBO run with a partial active set
    std::optional<std::string> error;

    bool ok() const noexcept { return !error.has_value(); }
    /// Best observation per agent; the solution x_hat_i is its input.
    std::vector<Vector> solutions() const;
};

RunRecord run_arco(const Experiment& exp, std::uint64_t seed);
RunRecord run_separate(const Experiment& exp, std::uint64_t seed);
RunRecord run_uniform_cbo(const Experiment& exp, std::uint64_t seed);

/// Dispatches on method. Errors inside a run are captured in RunRecord::error.
RunRecord run_method(const Experiment& exp, Method method, std::uint64_t seed);

/// Initial LHS design for one agent, identical for every method.
Dataset initial_design(const AgentSpec& agent, std::uint64_t seed);

}  // namespace arco

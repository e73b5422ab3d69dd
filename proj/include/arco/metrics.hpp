#pragma once

#include "arco/orchestrator.hpp"

#include <span>
#include <vector>

namespace arco {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
    int count = 0;
};

/// Best-so-far curves of one method over R replicates.
struct ReplicateBatch {
    Method method = Method::arco;
    int iterations = 0;
    // curves[r][k][t], t = 0..T
    std::vector<std::vector<std::vector<double>>> curves;

    static ReplicateBatch from_runs(Method method, std::span<const RunRecord> runs);
    int replicates() const noexcept { return static_cast<int>(curves.size()); }
    void merge(const ReplicateBatch& other);
};

/// Per-agent normalization: optimum and range of the true function.
struct MetricReference {
    double optimum;
    double f_min;
    double f_max;
    double range() const noexcept { return f_max - f_min; }
};

/// One entry per agent; agents without a reference are skipped.
std::vector<std::optional<MetricReference>> metric_references(std::span<const AgentSpec> agents);

/// Mean over agents of (best-found - optimum) / range at t = T; mean and
/// sample std over replicates. Throws when no agent has a reference.
MeanStd final_regret(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs);

/// Early-window length: max(1, round(fraction * T)).
int auc_window(int T, double early_fraction);

struct AucResult {
    double mean = 0.0;       // from replicate-averaged curves
    double std = 0.0;        // sample std of per-replicate values
    double replicate_mean = 0.0;
    int window = 0;
};

AucResult auc(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs,
              double early_fraction = 0.1);

/// Per-replicate values behind final_regret and auc.
std::vector<double> replicate_regrets(const ReplicateBatch& batch,
                                      std::span<const std::optional<MetricReference>> refs);
std::vector<double> replicate_aucs(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs,
                                   int window);

}  // namespace arco

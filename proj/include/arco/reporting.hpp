#pragma once

#include "arco/metrics.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace arco {

struct MethodSummary {
    Method method;
    AucResult auc;
    MeanStd regret;
    int replicates_ok = 0;
    int replicates_failed = 0;
};

struct SuiteResult {
    Experiment experiment;
    // runs[m][r]: methods in config order, replicates in seed order
    std::vector<std::vector<RunRecord>> runs;
    std::vector<MethodSummary> summary;
};

/// Runs every (method, seed) pair on up to `parallelism` threads. Failed
/// replicates keep their error and are left out of the aggregates.
SuiteResult run_suite(const Experiment& exp, int parallelism = 1);

/// Summaries from finished runs.
std::vector<MethodSummary> summarize(const Experiment& exp, const std::vector<std::vector<RunRecord>>& runs);

/// Writes trajectories.csv, weights.csv, budgets.csv, summary.csv and
/// manifest.json into out_dir. Each file goes through a temp file + rename.
void write_suite(const SuiteResult& result, const std::filesystem::path& out_dir);

/// 17 significant digits, the shortest form that round-trips any double.
std::string format_double(double v);

std::string trajectories_csv(const SuiteResult& result);
std::string weights_csv(const SuiteResult& result);
std::string budgets_csv(const SuiteResult& result);
std::string summary_csv(const std::vector<MethodSummary>& summary);
std::string manifest_json(const SuiteResult& result);

/// Rebuilds batches from a trajectories.csv body.
std::map<Method, ReplicateBatch> batches_from_trajectories(const std::string& csv_text);

/// Recomputes summary rows from a run directory (manifest + trajectories).
std::vector<MethodSummary> recompute_metrics(const std::filesystem::path& run_dir);

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace arco

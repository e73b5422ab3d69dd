#include "arco/benchmarks.hpp"
#include "arco/config_io.hpp"
#include "arco/oracle.hpp"
#include "arco/reporting.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir, int jobs, const std::string& ranges) {
    if (!ranges.empty()) arco::bench::set_range_cache_path(ranges);
    const auto config = arco::load_config(config_path);
    const auto exp = arco::validate_experiment(config);
    const auto result = arco::run_suite(exp, jobs);
    arco::write_suite(result, out_dir);
    std::cout << arco::summary_csv(result.summary);
    int failed = 0;
    for (const auto& s : result.summary) failed += s.replicates_failed;
    if (failed > 0) std::cerr << failed << " replicate(s) failed; see manifest.json\n";
    return 0;
}

int cmd_metrics(const std::string& run_dir) {
    std::cout << arco::summary_csv(arco::recompute_metrics(run_dir));
    return 0;
}

int cmd_oracle(const std::string& out, int samples, std::uint64_t seed) {
    const auto cache = arco::bench::build_range_cache(seed, samples);
    arco::bench::write_range_cache(cache, out);
    for (const auto& e : cache.entries) {
        std::cout << e.family << ' ' << e.agent << " f_min=" << arco::format_double(e.f_min)
                  << " f_max=" << arco::format_double(e.f_max) << " table=" << e.table_optimum
                  << (e.within_tolerance ? "" : "  [outside 1% of table value]") << '\n';
    }
    return 0;
}

int cmd_list() {
    for (const auto& id : arco::bench::family_ids()) {
        const auto& f = arco::bench::family(id);
        std::cout << id << "  dim=" << f.dim << "  shared=";
        for (std::size_t i = 0; i < f.shared.size(); ++i) std::cout << (i ? "," : "") << f.shared[i];
        std::cout << '\n';
        for (std::size_t a = 0; a < f.agents.size(); ++a) {
            const auto& info = f.agents[a];
            std::cout << "  agent " << a + 1 << "  budget=" << info.budget << "  n_init=" << info.n_init
                      << "  optimum=" << info.table_optimum << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive resource-aware collaborative Bayesian optimization"};
    app.set_version_flag("--version", std::string(ARCO_VERSION));
    app.require_subcommand(1);

    std::string config_path, out_dir, ranges;
    int jobs = 1;
    auto* run = app.add_subcommand("run", "Run every method x replicate of a config or manifest");
    run->add_option("config", config_path, "Config JSON or manifest.json")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--out", out_dir, "Output directory")->required();
    run->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--ranges", ranges, "Benchmark range cache to use");

    std::string run_dir;
    auto* metrics = app.add_subcommand("metrics", "Recompute summary metrics from a run directory");
    metrics->add_option("run_dir", run_dir)->required()->check(CLI::ExistingDirectory);

    std::string oracle_out = arco::bench::default_range_cache_path().string();
    int samples = arco::bench::kOracleSamples;
    std::uint64_t seed = arco::bench::kOracleSeed;
    auto* oracle = app.add_subcommand("oracle", "Build the benchmark range cache");
    oracle->add_option("--out", oracle_out, "Cache file to write");
    oracle->add_option("--samples", samples, "LHS samples per agent")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", seed, "Oracle seed");

    auto* list = app.add_subcommand("list-benchmarks", "Show built-in benchmark families");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(config_path, out_dir, jobs, ranges);
        if (*metrics) return cmd_metrics(run_dir);
        if (*oracle) return cmd_oracle(oracle_out, samples, seed);
        if (*list) return cmd_list();
    } catch (const arco::ConfigError& e) {
        std::cerr << "error: invalid config\n";
        for (const auto& issue : e.issues()) std::cerr << "  " << issue << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

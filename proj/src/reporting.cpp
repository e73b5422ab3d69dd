#include "arco/reporting.hpp"

#include "arco/config_io.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace arco {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

SuiteResult run_suite(const Experiment& exp, int parallelism) {
    SuiteResult res;
    res.experiment = exp;
    const auto& methods = exp.config.methods;
    const auto& seeds = exp.config.seeds;
    res.runs.assign(methods.size(), std::vector<RunRecord>(seeds.size()));

    const std::size_t total = methods.size() * seeds.size();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const std::size_t m = i / seeds.size();
            const std::size_t r = i % seeds.size();
            res.runs[m][r] = run_method(exp, methods[m], seeds[r]);
        }
    };
    const auto n = static_cast<std::size_t>(std::clamp(parallelism, 1, static_cast<int>(std::max<std::size_t>(total, 1))));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    res.summary = summarize(exp, res.runs);
    return res;
}

namespace {

MethodSummary summarize_batch(Method method, const ReplicateBatch& batch,
                              std::span<const std::optional<MetricReference>> refs, double early_fraction) {
    MethodSummary s{method, {}, {}, batch.replicates(), 0};
    bool any_ref = false;
    for (const auto& r : refs) any_ref = any_ref || r.has_value();
    if (batch.replicates() > 0 && any_ref) {
        s.auc = auc(batch, refs, early_fraction);
        s.regret = final_regret(batch, refs);
    }
    return s;
}

}  // namespace

std::vector<MethodSummary> summarize(const Experiment& exp, const std::vector<std::vector<RunRecord>>& runs) {
    const auto refs = metric_references(exp.agents);
    std::vector<MethodSummary> out;
    for (std::size_t m = 0; m < runs.size(); ++m) {
        const Method method = exp.config.methods.at(m);
        auto s = summarize_batch(method, ReplicateBatch::from_runs(method, runs[m]), refs, exp.config.early_fraction);
        for (const auto& r : runs[m]) s.replicates_failed += r.ok() ? 0 : 1;
        out.push_back(s);
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trajectories_csv(const SuiteResult& result) {
    std::ostringstream os;
    os << "method,replicate,seed,agent,iteration,best_so_far,y_t\n";
    for (const auto& per_method : result.runs) {
        for (std::size_t r = 0; r < per_method.size(); ++r) {
            const auto& run = per_method[r];
            if (!run.ok()) continue;
            for (std::size_t k = 0; k < run.best_so_far.size(); ++k) {
                for (std::size_t t = 0; t < run.best_so_far[k].size(); ++t) {
                    os << to_string(run.method) << ',' << r << ',' << run.seed << ',' << k << ',' << t << ','
                       << format_double(run.best_so_far[k][t]) << ',';
                    if (const auto& y = run.y_at[k][t]) os << format_double(*y);
                    os << '\n';
                }
            }
        }
    }
    return os.str();
}

std::string weights_csv(const SuiteResult& result) {
    std::ostringstream os;
    os << "method,replicate,iteration,gamma,i,j,S_ij,W_ij\n";
    for (const auto& per_method : result.runs) {
        for (std::size_t r = 0; r < per_method.size(); ++r) {
            const auto& run = per_method[r];
            if (!run.ok() || run.method == Method::separate) continue;
            for (const auto& it : run.trace) {
                const auto m = it.active.size();
                for (std::size_t a = 0; a < m; ++a) {
                    for (std::size_t b = 0; b < m; ++b) {
                        const auto ia = static_cast<Eigen::Index>(a);
                        const auto ib = static_cast<Eigen::Index>(b);
                        os << to_string(run.method) << ',' << r << ',' << it.t << ',' << format_double(it.gamma)
                           << ',' << it.active[a] << ',' << it.active[b] << ',';
                        if (it.S.size() > 0) os << format_double(it.S(ia, ib));
                        os << ',' << format_double(it.W(ia, ib)) << '\n';
                    }
                }
            }
        }
    }
    return os.str();
}

std::string budgets_csv(const SuiteResult& result) {
    std::ostringstream os;
    os << "method,replicate,agent,budget,evaluations_used,unspent\n";
    for (const auto& per_method : result.runs) {
        for (std::size_t r = 0; r < per_method.size(); ++r) {
            const auto& run = per_method[r];
            if (!run.ok()) continue;
            for (std::size_t k = 0; k < run.budget.size(); ++k) {
                os << to_string(run.method) << ',' << r << ',' << k << ',' << run.budget[k] << ','
                   << run.evaluations_used[k] << ',' << run.budget[k] - run.evaluations_used[k] << '\n';
            }
        }
    }
    return os.str();
}

std::string summary_csv(const std::vector<MethodSummary>& summary) {
    std::ostringstream os;
    os << "method,auc_mean,auc_std,auc_replicate_mean,auc_window,regret_mean,regret_std,replicates_ok,"
          "replicates_failed\n";
    for (const auto& s : summary) {
        os << to_string(s.method) << ',' << format_double(s.auc.mean) << ',' << format_double(s.auc.std) << ','
           << format_double(s.auc.replicate_mean) << ',' << s.auc.window << ',' << format_double(s.regret.mean)
           << ',' << format_double(s.regret.std) << ',' << s.replicates_ok << ',' << s.replicates_failed << '\n';
    }
    return os.str();
}

std::string manifest_json(const SuiteResult& result) {
    const auto& exp = result.experiment;
    ojson j;
    j["manifest_version"] = 1;
    j["code_version"] = ARCO_VERSION;
    j["config_hash"] = config_hash(exp.config);
    j["config"] = to_json(exp.config);
    j["iterations"] = exp.iterations;
    j["seeds"] = exp.config.seeds;

    j["agents"] = ojson::array();
    for (const auto& a : exp.agents) {
        ojson e;
        e["id"] = a.id;
        e["function"] = a.objective_ref.family + "/" + std::to_string(a.objective_ref.variant);
        e["budget"] = a.budget;
        e["n_init"] = a.n_init;
        e["shared_dims"] = a.layout.shared_dims;
        if (a.has_metric_reference()) {
            e["optimum"] = *a.true_optimum;
            e["f_min"] = *a.f_min;
            e["f_max"] = *a.f_max;
        }
        j["agents"].push_back(e);
    }

    j["failures"] = ojson::array();
    j["protocol_extension_runs"] = ojson::object();
    for (const auto& per_method : result.runs) {
        int extended = 0;
        Method method = Method::arco;
        for (const auto& run : per_method) {
            method = run.method;
            extended += run.protocol_extension ? 1 : 0;
            if (!run.ok())
                j["failures"].push_back({{"method", to_string(run.method)}, {"seed", run.seed}, {"error", *run.error}});
        }
        if (!per_method.empty()) j["protocol_extension_runs"][to_string(method)] = extended;
    }
    j["files"] = {"trajectories.csv", "weights.csv", "budgets.csv", "summary.csv"};
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_suite(const SuiteResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_file_atomic(out_dir / "trajectories.csv", trajectories_csv(result));
    write_file_atomic(out_dir / "weights.csv", weights_csv(result));
    write_file_atomic(out_dir / "budgets.csv", budgets_csv(result));
    write_file_atomic(out_dir / "summary.csv", summary_csv(result.summary));
    write_file_atomic(out_dir / "manifest.json", manifest_json(result));
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw Error("bad number '" + s + "' in trajectories");
    return v;
}

}  // namespace

std::map<Method, ReplicateBatch> batches_from_trajectories(const std::string& csv_text) {
    std::istringstream is(csv_text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("method,replicate,seed,agent,iteration,best_so_far", 0) != 0)
        throw Error("trajectories CSV has an unexpected header");

    // method -> replicate -> agent -> values by iteration
    std::map<Method, std::map<long, std::map<long, std::vector<double>>>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() < 6) throw Error("short trajectories row: " + line);
        auto& curve = rows[method_from_string(cells[0])][std::stol(cells[1])][std::stol(cells[3])];
        const auto t = static_cast<std::size_t>(std::stol(cells[4]));
        if (t != curve.size()) throw Error("trajectories rows out of order");
        curve.push_back(parse_double(cells[5]));
    }

    std::map<Method, ReplicateBatch> out;
    for (auto& [method, reps] : rows) {
        ReplicateBatch b;
        b.method = method;
        for (auto& [r, agents] : reps) {
            std::vector<std::vector<double>> rep;
            for (auto& [k, curve] : agents) {
                if (k != static_cast<long>(rep.size())) throw Error("trajectories skip an agent");
                rep.push_back(std::move(curve));
            }
            const int T = static_cast<int>(rep.front().size()) - 1;
            if (b.curves.empty()) b.iterations = T;
            if (T != b.iterations) throw Error("trajectories disagree on T");
            b.curves.push_back(std::move(rep));
        }
        out[method] = std::move(b);
    }
    return out;
}

std::vector<MethodSummary> recompute_metrics(const std::filesystem::path& run_dir) {
    const auto manifest = json::parse(read_file(run_dir / "manifest.json"));
    const auto config = config_from_json(manifest.at("config"));
    std::vector<std::optional<MetricReference>> refs;
    for (const auto& a : manifest.at("agents")) {
        if (a.contains("optimum"))
            refs.emplace_back(MetricReference{a.at("optimum").get<double>(), a.at("f_min").get<double>(),
                                              a.at("f_max").get<double>()});
        else
            refs.emplace_back();
    }
    auto batches = batches_from_trajectories(read_file(run_dir / "trajectories.csv"));

    std::map<std::string, int> failed;
    for (const auto& f : manifest.at("failures")) failed[f.at("method").get<std::string>()]++;

    std::vector<MethodSummary> out;
    for (Method m : config.methods) {
        ReplicateBatch b;
        b.method = m;
        if (auto it = batches.find(m); it != batches.end()) b = it->second;
        auto s = summarize_batch(m, b, refs, config.early_fraction);
        s.replicates_failed = failed[to_string(m)];
        out.push_back(s);
    }
    return out;
}

}  // namespace arco

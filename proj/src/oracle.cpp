#include "arco/oracle.hpp"

#include "arco/benchmarks.hpp"
#include "arco/sampling.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace arco::bench {

namespace {

// Bounded compass search; minimizes sign * f.
std::pair<Vector, double> polish(const std::function<double(const Vector&)>& f, const Bounds& bounds, Vector x,
                                 double sign, int max_evals = 20000) {
    const int d = bounds.dim();
    double fx = sign * f(x);
    Vector step(d);
    for (int j = 0; j < d; ++j) step[j] = 0.1 * bounds.range(j);
    int evals = 1;
    while (evals < max_evals) {
        bool improved = false;
        for (int j = 0; j < d && evals < max_evals; ++j) {
            for (double dir : {-1.0, 1.0}) {
                Vector y = x;
                y[j] = std::clamp(y[j] + dir * step[j], bounds.lower[j], bounds.upper[j]);
                if (y[j] == x[j]) continue;
                const double fy = sign * f(y);
                ++evals;
                if (fy < fx) {
                    x = std::move(y);
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
            bool done = true;
            for (int j = 0; j < d; ++j) done = done && step[j] < 1e-12 * bounds.range(j);
            if (done) break;
        }
    }
    return {x, sign * fx};
}

std::vector<Eigen::Index> extreme_indices(const Vector& values, int count, bool smallest) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(count), idx.size());
    auto cmp = [&](Eigen::Index a, Eigen::Index b) {
        if (values[a] != values[b]) return smallest ? values[a] < values[b] : values[a] > values[b];
        return a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), cmp);
    idx.resize(k);
    return idx;
}

}  // namespace

OracleResult dense_search(const std::function<double(const Vector&)>& f, const Bounds& bounds, std::uint64_t seed,
                          int samples, int polish_starts) {
    SeededRng rng(seed, {StreamPurpose::oracle, 0, 0});
    const Matrix pts = lhs(samples, bounds, rng);
    Vector values(pts.rows());
    for (Eigen::Index i = 0; i < pts.rows(); ++i) values[i] = f(pts.row(i).transpose());

    OracleResult res{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), {}, {}};
    for (auto i : extreme_indices(values, polish_starts, true)) {
        auto [x, v] = polish(f, bounds, pts.row(i).transpose(), 1.0);
        if (v < res.f_min) {
            res.f_min = v;
            res.x_min = x;
        }
    }
    for (auto i : extreme_indices(values, polish_starts, false)) {
        auto [x, v] = polish(f, bounds, pts.row(i).transpose(), -1.0);
        if (v > res.f_max) {
            res.f_max = v;
            res.x_max = x;
        }
    }
    return res;
}

const RangeEntry* RangeCache::find(const std::string& family, int agent) const {
    for (const auto& e : entries) {
        if (e.family == family && e.agent == agent) return &e;
    }
    return nullptr;
}

RangeCache build_range_cache(std::uint64_t seed, int samples) {
    RangeCache cache;
    cache.oracle_seed = seed;
    cache.samples = samples;
    for (const auto& id : family_ids()) {
        const auto& fam = family(id);
        for (int a = 1; a <= num_agents(id); ++a) {
            auto f = [&id, a](const Vector& x) { return evaluate_unchecked(id, a, x); };
            const auto res = dense_search(f, fam.bounds, seed, samples);
            const auto ref = reference_optimum(id, a);
            cache.entries.push_back(
                {id, a, res.f_min, res.f_max, ref.value, std::abs(res.f_min - ref.value) <= ref.tolerance});
        }
    }
    return cache;
}

std::string serialize(const RangeCache& cache) {
    nlohmann::ordered_json j;
    j["version"] = cache.version;
    j["oracle_seed"] = cache.oracle_seed;
    j["samples"] = cache.samples;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : cache.entries) {
        nlohmann::ordered_json row;
        row["family"] = e.family;
        row["agent"] = e.agent;
        row["f_min"] = e.f_min;
        row["f_max"] = e.f_max;
        row["table_optimum"] = e.table_optimum;
        row["within_tolerance"] = e.within_tolerance;
        j["entries"].push_back(row);
    }
    return j.dump(2) + "\n";
}

RangeCache parse_range_cache(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RangeCache cache;
    cache.version = j.at("version").get<int>();
    cache.oracle_seed = j.at("oracle_seed").get<std::uint64_t>();
    cache.samples = j.at("samples").get<int>();
    for (const auto& row : j.at("entries")) {
        cache.entries.push_back({row.at("family").get<std::string>(), row.at("agent").get<int>(),
                                 row.at("f_min").get<double>(), row.at("f_max").get<double>(),
                                 row.at("table_optimum").get<double>(), row.at("within_tolerance").get<bool>()});
    }
    return cache;
}

void write_range_cache(const RangeCache& cache, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << serialize(cache);
        if (!out) throw Error("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<RangeCache> read_range_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return parse_range_cache(os.str());
}

std::filesystem::path default_range_cache_path() {
    return std::filesystem::path(ARCO_DATA_DIR) / "benchmark_ranges.json";
}

namespace {

struct RangeRegistry {
    std::mutex mu;
    std::filesystem::path path = default_range_cache_path();
    std::optional<RangeCache> file;
    bool loaded = false;
    std::map<std::pair<std::string, int>, std::pair<double, double>> computed;
};

RangeRegistry& registry() {
    static RangeRegistry r;
    return r;
}

}  // namespace

void set_range_cache_path(const std::filesystem::path& path) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    r.path = path;
    r.file.reset();
    r.loaded = false;
}

std::pair<double, double> function_range(const std::string& family_id, int agent) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    if (!r.loaded) {
        r.file = read_range_cache(r.path);
        r.loaded = true;
    }
    if (r.file) {
        if (const auto* e = r.file->find(family_id, agent)) return {e->f_min, e->f_max};
    }
    const auto key = std::make_pair(family_id, agent);
    if (auto it = r.computed.find(key); it != r.computed.end()) return it->second;
    auto f = [&family_id, agent](const Vector& x) { return evaluate_unchecked(family_id, agent, x); };
    const auto res = dense_search(f, family(family_id).bounds, kOracleSeed, kOracleSamples);
    r.computed[key] = {res.f_min, res.f_max};
    return {res.f_min, res.f_max};
}

}  // namespace arco::bench

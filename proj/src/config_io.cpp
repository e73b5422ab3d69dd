#include "arco/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace arco {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where,
                    std::vector<std::string>& issues) {
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) issues.push_back("unknown key '" + key + "' in " + where);
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where, std::vector<std::string>& issues) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        issues.push_back("bad value for '" + std::string(key) + "' in " + where);
    }
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& out, const std::string& where,
          std::vector<std::string>& issues) {
    if (!j.contains(key)) return;
    T v{};
    read(j, key, v, where, issues);
    out = v;
}

AgentEntry agent_from_json(const json& j, const std::string& where, std::vector<std::string>& issues) {
    AgentEntry e;
    if (!j.is_object()) {
        issues.push_back(where + " must be an object");
        return e;
    }
    reject_unknown(j, {"family", "variant", "lower", "upper", "shared", "budget", "n_init", "stream_key"}, where,
                   issues);
    if (!j.contains("family")) issues.push_back(where + " needs 'family'");
    read(j, "family", e.function.family, where, issues);
    read(j, "variant", e.function.variant, where, issues);
    read(j, "lower", e.lower, where, issues);
    read(j, "upper", e.upper, where, issues);
    read(j, "shared", e.shared, where, issues);
    read(j, "budget", e.budget, where, issues);
    read(j, "n_init", e.n_init, where, issues);
    read(j, "stream_key", e.stream_key, where, issues);
    return e;
}

}  // namespace

json to_json(const ExperimentConfig& c) {
    ojson j;
    j["name"] = c.name;
    j["methods"] = ojson::array();
    for (auto m : c.methods) j["methods"].push_back(to_string(m));
    if (c.benchmark) {
        j["benchmark"] = *c.benchmark;
        j["scenario"] = c.scenario;
    }
    if (!c.agents.empty()) {
        j["agents"] = ojson::array();
        for (const auto& a : c.agents) {
            ojson e;
            e["family"] = a.function.family;
            e["variant"] = a.function.variant;
            if (a.lower) e["lower"] = *a.lower;
            if (a.upper) e["upper"] = *a.upper;
            if (a.shared) e["shared"] = *a.shared;
            if (a.budget) e["budget"] = *a.budget;
            if (a.n_init) e["n_init"] = *a.n_init;
            if (a.stream_key) e["stream_key"] = *a.stream_key;
            j["agents"].push_back(e);
        }
    }
    if (c.iterations) j["iterations"] = *c.iterations;
    j["alpha"] = c.alpha;
    j["proximity_fraction"] = c.proximity_fraction;
    j["seeds"] = c.seeds;
    j["grid_multiplier"] = c.grid_multiplier;
    j["candidates_per_dim"] = c.candidates_per_dim;
    j["sinkhorn"] = {{"tol", c.sinkhorn_tol}, {"max_iter", c.sinkhorn_max_iter}};
    j["kernel"] = {{"lengthscale", c.kernel.lengthscale},
                   {"signal_variance", c.kernel.signal_variance},
                   {"noise_variance", c.kernel.noise_variance}};
    j["early_fraction"] = c.early_fraction;
    // ordered_json keeps insertion order; the plain json copy sorts keys.
    return json::parse(j.dump());
}

ExperimentConfig config_from_json(const json& in) {
    if (!in.is_object()) throw ConfigError({"config must be a JSON object"});
    if (in.contains("config") && in.contains("manifest_version")) return config_from_json(in.at("config"));

    std::vector<std::string> issues;
    const std::string where = "config";
    reject_unknown(in,
                   {"name", "method", "methods", "benchmark", "scenario", "agents", "iterations", "alpha",
                    "proximity_fraction", "seeds", "replicates", "base_seed", "grid_multiplier",
                    "candidates_per_dim", "sinkhorn", "kernel", "early_fraction"},
                   where, issues);

    ExperimentConfig c;
    read(in, "name", c.name, where, issues);

    if (in.contains("method") && in.contains("methods")) issues.push_back("give 'method' or 'methods', not both");
    std::vector<std::string> names;
    if (in.contains("method")) {
        std::string m;
        read(in, "method", m, where, issues);
        names.push_back(m);
    } else if (in.contains("methods")) {
        read(in, "methods", names, where, issues);
    }
    if (!names.empty()) {
        c.methods.clear();
        for (const auto& n : names) {
            try {
                c.methods.push_back(method_from_string(n));
            } catch (const std::exception& e) {
                issues.push_back(e.what());
            }
        }
    }

    read(in, "benchmark", c.benchmark, where, issues);
    read(in, "scenario", c.scenario, where, issues);
    if (in.contains("agents")) {
        if (!in.at("agents").is_array()) {
            issues.push_back("'agents' must be a list");
        } else {
            int i = 0;
            for (const auto& a : in.at("agents"))
                c.agents.push_back(agent_from_json(a, "agents[" + std::to_string(i++) + "]", issues));
        }
    }
    read(in, "iterations", c.iterations, where, issues);
    read(in, "alpha", c.alpha, where, issues);
    read(in, "proximity_fraction", c.proximity_fraction, where, issues);

    if (in.contains("seeds") && (in.contains("replicates") || in.contains("base_seed")))
        issues.push_back("give 'seeds' or 'replicates'/'base_seed', not both");
    if (in.contains("seeds")) read(in, "seeds", c.seeds, where, issues);
    if (in.contains("replicates") || in.contains("base_seed")) {
        int replicates = 1;
        std::uint64_t base = 0;
        read(in, "replicates", replicates, where, issues);
        read(in, "base_seed", base, where, issues);
        if (replicates < 1) {
            issues.push_back("'replicates' must be at least 1");
        } else {
            c.seeds.clear();
            for (int r = 0; r < replicates; ++r) c.seeds.push_back(base + static_cast<std::uint64_t>(r));
        }
    }

    read(in, "grid_multiplier", c.grid_multiplier, where, issues);
    read(in, "candidates_per_dim", c.candidates_per_dim, where, issues);
    if (in.contains("sinkhorn")) {
        const auto& s = in.at("sinkhorn");
        reject_unknown(s, {"tol", "max_iter"}, "sinkhorn", issues);
        read(s, "tol", c.sinkhorn_tol, "sinkhorn", issues);
        read(s, "max_iter", c.sinkhorn_max_iter, "sinkhorn", issues);
    }
    if (in.contains("kernel")) {
        const auto& k = in.at("kernel");
        reject_unknown(k, {"lengthscale", "signal_variance", "noise_variance"}, "kernel", issues);
        read(k, "lengthscale", c.kernel.lengthscale, "kernel", issues);
        read(k, "signal_variance", c.kernel.signal_variance, "kernel", issues);
        read(k, "noise_variance", c.kernel.noise_variance, "kernel", issues);
    }
    read(in, "early_fraction", c.early_fraction, where, issues);

    if (!issues.empty()) throw ConfigError(std::move(issues));
    return c;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    return config_from_json(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot open " + path.string()});
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

std::string serialize(const ExperimentConfig& config) { return to_json(config).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& config) {
    const std::string text = to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace arco

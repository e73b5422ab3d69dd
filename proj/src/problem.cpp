#include "arco/problem.hpp"

#include "arco/benchmarks.hpp"
#include "arco/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace arco {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::ostringstream os;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << "; ";
        os << items[i];
    }
    return os.str();
}

std::string agent_prefix(int id) { return "agent " + std::to_string(id) + ": "; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : Error("invalid experiment: " + join(issues)), issues_(std::move(issues)) {}

Bounds::Bounds(std::initializer_list<double> lo, std::initializer_list<double> hi)
    : lower(static_cast<Eigen::Index>(lo.size())), upper(static_cast<Eigen::Index>(hi.size())) {
    std::copy(lo.begin(), lo.end(), lower.data());
    std::copy(hi.begin(), hi.end(), upper.data());
}

bool Bounds::contains(const Vector& x) const {
    if (x.size() != lower.size()) return false;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    }
    return true;
}

Vector Bounds::clamp(const Vector& x) const { return x.cwiseMax(lower).cwiseMin(upper); }

std::vector<std::string> Bounds::check() const {
    std::vector<std::string> issues;
    if (lower.size() == 0) issues.emplace_back("bounds have dimension 0");
    if (lower.size() != upper.size()) {
        issues.emplace_back("lower and upper bounds differ in length");
        return issues;
    }
    for (Eigen::Index j = 0; j < lower.size(); ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
            issues.push_back("non-finite bound in dimension " + std::to_string(j));
        } else if (!(lower[j] < upper[j])) {
            issues.push_back("degenerate bound in dimension " + std::to_string(j));
        }
    }
    return issues;
}

bool Bounds::operator==(const Bounds& other) const {
    return lower.size() == other.lower.size() && upper.size() == other.upper.size() && lower == other.lower &&
           upper == other.upper;
}

InputLayout InputLayout::all_shared(int d) {
    InputLayout layout;
    layout.shared_dims.resize(static_cast<std::size_t>(d));
    std::iota(layout.shared_dims.begin(), layout.shared_dims.end(), 0);
    return layout;
}

InputLayout InputLayout::from_shared(std::vector<int> shared, int d) {
    InputLayout layout;
    layout.shared_dims = std::move(shared);
    for (int j = 0; j < d; ++j) {
        if (std::find(layout.shared_dims.begin(), layout.shared_dims.end(), j) == layout.shared_dims.end())
            layout.private_dims.push_back(j);
    }
    return layout;
}

std::vector<std::string> InputLayout::check(int d) const {
    std::vector<std::string> issues;
    std::vector<int> seen(static_cast<std::size_t>(std::max(d, 0)), 0);
    auto mark = [&](int j) {
        if (j < 0 || j >= d) {
            issues.push_back("layout index " + std::to_string(j) + " out of range");
        } else {
            ++seen[static_cast<std::size_t>(j)];
        }
    };
    for (int j : shared_dims) mark(j);
    for (int j : private_dims) mark(j);
    for (int j = 0; j < d; ++j) {
        if (seen[static_cast<std::size_t>(j)] != 1)
            issues.push_back("layout does not partition dimension " + std::to_string(j));
    }
    return issues;
}

Vector InputLayout::shared_part(const Vector& x) const {
    Vector out(d_s());
    for (int i = 0; i < d_s(); ++i) out[i] = x[shared_dims[static_cast<std::size_t>(i)]];
    return out;
}

Vector InputLayout::private_part(const Vector& x) const {
    Vector out(d_p());
    for (int i = 0; i < d_p(); ++i) out[i] = x[private_dims[static_cast<std::size_t>(i)]];
    return out;
}

void Dataset::append(Vector x, double y) {
    if (!inputs_.empty() && x.size() != inputs_.front().size()) throw Error("dataset input dimension mismatch");
    inputs_.push_back(std::move(x));
    observations_.push_back(y);
}

Matrix Dataset::input_matrix() const {
    Matrix m(size(), dim());
    for (int i = 0; i < size(); ++i) m.row(i) = inputs_[static_cast<std::size_t>(i)].transpose();
    return m;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::arco: return "arco";
        case Method::separate: return "separate";
        case Method::uniform_cbo: return "uniform_cbo";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "arco") return Method::arco;
    if (s == "separate") return Method::separate;
    if (s == "uniform_cbo") return Method::uniform_cbo;
    throw Error("unknown method '" + s + "'");
}

std::vector<std::string> check_agents(const std::vector<AgentSpec>& agents) {
    std::vector<std::string> issues;
    if (agents.empty()) {
        issues.emplace_back("no agents");
        return issues;
    }
    bool any_budget = false;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& a = agents[i];
        const auto prefix = agent_prefix(a.id);
        if (a.id != static_cast<int>(i)) issues.push_back(prefix + "ids must run 0..K-1 in order");
        for (const auto& s : a.bounds.check()) issues.push_back(prefix + s);
        for (const auto& s : a.layout.check(a.dim())) issues.push_back(prefix + s);
        if (!a.objective) issues.push_back(prefix + "missing objective");
        if (a.budget < 0) issues.push_back(prefix + "negative budget");
        if (a.n_init < 1) {
            issues.push_back(prefix + (a.budget == 0 ? "budget 0 with no initial samples contributes nothing"
                                                     : "n_init must be at least 1"));
        }
        if (a.budget > 0) any_budget = true;
        if (a.f_min && a.f_max) {
            if (!(*a.f_min < *a.f_max)) issues.push_back(prefix + "f_min must be below f_max");
            if (a.true_optimum && (*a.true_optimum < *a.f_min || *a.true_optimum > *a.f_max))
                issues.push_back(prefix + "true optimum outside [f_min, f_max]");
        }
    }
    if (!any_budget) issues.emplace_back("all budgets are zero");

    const auto& first = agents.front();
    for (const auto& a : agents) {
        if (a.layout.d_s() != first.layout.d_s()) {
            issues.push_back(agent_prefix(a.id) + "shared layout mismatch (d_s " + std::to_string(a.layout.d_s()) +
                             " vs " + std::to_string(first.layout.d_s()) + ")");
            continue;
        }
        if (!a.bounds.check().empty() || !first.bounds.check().empty()) continue;
        if (!a.layout.check(a.dim()).empty() || !first.layout.check(first.dim()).empty()) continue;
        for (int s = 0; s < a.layout.d_s(); ++s) {
            const int ja = a.layout.shared_dims[static_cast<std::size_t>(s)];
            const int j0 = first.layout.shared_dims[static_cast<std::size_t>(s)];
            if (a.bounds.lower[ja] != first.bounds.lower[j0] || a.bounds.upper[ja] != first.bounds.upper[j0]) {
                issues.push_back(agent_prefix(a.id) + "shared bounds mismatch in shared slot " + std::to_string(s));
                break;
            }
        }
    }
    return issues;
}

namespace {

std::vector<std::string> check_scalars(const ExperimentConfig& c) {
    std::vector<std::string> issues;
    if (c.methods.empty()) issues.emplace_back("no methods");
    if (c.iterations && *c.iterations < 1) issues.emplace_back("iterations must be at least 1");
    if (!(c.alpha > 0.0)) issues.emplace_back("alpha must be positive");
    if (!(c.proximity_fraction > 0.0 && c.proximity_fraction < 1.0))
        issues.emplace_back("proximity_fraction must lie in (0, 1)");
    if (c.seeds.empty()) issues.emplace_back("no seeds");
    if (std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size())
        issues.emplace_back("seeds must be distinct");
    if (c.grid_multiplier < 1) issues.emplace_back("grid_multiplier must be at least 1");
    if (c.candidates_per_dim < 1) issues.emplace_back("candidates_per_dim must be at least 1");
    if (!(c.sinkhorn_tol > 0.0)) issues.emplace_back("sinkhorn tolerance must be positive");
    if (c.sinkhorn_max_iter < 1) issues.emplace_back("sinkhorn max_iter must be at least 1");
    if (!(c.kernel.lengthscale > 0.0 && c.kernel.signal_variance > 0.0 && c.kernel.noise_variance > 0.0))
        issues.emplace_back("kernel parameters must be positive");
    if (!(c.early_fraction > 0.0 && c.early_fraction <= 1.0)) issues.emplace_back("early_fraction must lie in (0, 1]");
    return issues;
}

int resolve_iterations(const ExperimentConfig& c, const std::vector<AgentSpec>& agents) {
    if (c.iterations) return *c.iterations;
    int b_max = 0;
    for (const auto& a : agents) b_max = std::max(b_max, a.budget);
    return std::max(b_max, 1);
}

void attach_metric_reference(AgentSpec& agent) {
    const auto& fam = bench::family(agent.objective_ref.family);
    if (agent.bounds == fam.bounds) {
        auto [lo, hi] = bench::function_range(agent.objective_ref.family, agent.objective_ref.variant);
        agent.f_min = lo;
        agent.f_max = hi;
    } else {
        auto res = bench::dense_search(agent.objective, agent.bounds, bench::kOracleSeed, bench::kOracleSamples);
        agent.f_min = res.f_min;
        agent.f_max = res.f_max;
    }
    agent.true_optimum = agent.f_min;
}

}  // namespace

Experiment validate_experiment(const ExperimentConfig& config) {
    auto issues = check_scalars(config);

    std::vector<AgentEntry> entries;
    if (config.benchmark && !config.agents.empty()) {
        issues.emplace_back("give either benchmark or agents, not both");
    } else if (config.benchmark) {
        try {
            entries = bench::scenario_agents(*config.benchmark, config.scenario);
        } catch (const std::exception& e) {
            issues.emplace_back(e.what());
        }
    } else if (!config.agents.empty()) {
        entries = config.agents;
    } else {
        issues.emplace_back("no benchmark and no agents given");
    }

    std::vector<AgentSpec> agents;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
            agents.push_back(bench::make_agent(entries[i], static_cast<int>(i)));
        } catch (const std::exception& e) {
            issues.push_back(agent_prefix(static_cast<int>(i)) + e.what());
        }
    }
    if (issues.empty()) {
        for (auto& s : check_agents(agents)) issues.push_back(std::move(s));
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));

    for (auto& a : agents) attach_metric_reference(a);

    Experiment exp;
    exp.config = config;
    exp.agents = std::move(agents);
    exp.iterations = resolve_iterations(config, exp.agents);
    exp.config.iterations = exp.iterations;
    return exp;
}

Experiment make_experiment(ExperimentConfig config, std::vector<AgentSpec> agents) {
    auto issues = check_scalars(config);
    for (auto& s : check_agents(agents)) issues.push_back(std::move(s));
    if (!issues.empty()) throw ConfigError(std::move(issues));
    Experiment exp;
    exp.iterations = resolve_iterations(config, agents);
    config.iterations = exp.iterations;
    exp.config = std::move(config);
    exp.agents = std::move(agents);
    return exp;
}

}  // namespace arco

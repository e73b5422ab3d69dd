#pragma once

#include "arco/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arco {

struct Bounds {
    Vector lower;
    Vector upper;

    Bounds() = default;
    Bounds(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {}
    Bounds(std::initializer_list<double> lo, std::initializer_list<double> hi);

    int dim() const noexcept { return static_cast<int>(lower.size()); }
    double range(int j) const { return upper[j] - lower[j]; }
    bool contains(const Vector& x) const;
    Vector clamp(const Vector& x) const;

    /// Issues found, empty when the bounds are usable.
    std::vector<std::string> check() const;

    bool operator==(const Bounds& other) const;
};

/// Which coordinates of an agent's input take part in consensus.
struct InputLayout {
    std::vector<int> shared_dims;
    std::vector<int> private_dims;

    int d_s() const noexcept { return static_cast<int>(shared_dims.size()); }
    int d_p() const noexcept { return static_cast<int>(private_dims.size()); }

    static InputLayout all_shared(int d);
    static InputLayout from_shared(std::vector<int> shared, int d);

    std::vector<std::string> check(int d) const;

    Vector shared_part(const Vector& x) const;
    Vector private_part(const Vector& x) const;

    bool operator==(const InputLayout&) const = default;
};

using Objective = std::function<double(const Vector&)>;

/// Names a built-in benchmark function: family id plus 1-based agent variant.
struct ObjectiveRef {
    std::string family;
    int variant = 1;

    bool operator==(const ObjectiveRef&) const = default;
};

struct AgentSpec {
    int id = 0;
    ObjectiveRef objective_ref;
    Objective objective;
    Bounds bounds;
    InputLayout layout;
    int budget = 0;
    int n_init = 1;
    std::optional<double> true_optimum;
    std::optional<double> f_min;
    std::optional<double> f_max;
    // Agents with equal keys draw identical random streams; defaults to id.
    std::uint32_t stream_key = 0;

    int dim() const noexcept { return bounds.dim(); }
    bool has_metric_reference() const noexcept {
        return true_optimum.has_value() && f_min.has_value() && f_max.has_value();
    }
};

/// An agent's accumulated evaluations, original units, append-only.
class Dataset {
public:
    void append(Vector x, double y);
    int size() const noexcept { return static_cast<int>(observations_.size()); }
    bool empty() const noexcept { return observations_.empty(); }
    int dim() const noexcept { return inputs_.empty() ? 0 : static_cast<int>(inputs_.front().size()); }

    const std::vector<Vector>& inputs() const noexcept { return inputs_; }
    const std::vector<double>& observations() const noexcept { return observations_; }
    Matrix input_matrix() const;

private:
    std::vector<Vector> inputs_;
    std::vector<double> observations_;
};

enum class Method { arco, separate, uniform_cbo };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct KernelParams {
    double lengthscale = 0.5;
    double signal_variance = 1.0;
    double noise_variance = 1e-6;

    bool operator==(const KernelParams&) const = default;
};

/// One inline agent entry; unset fields fall back to the family tables.
struct AgentEntry {
    ObjectiveRef function;
    std::optional<std::vector<double>> lower;
    std::optional<std::vector<double>> upper;
    std::optional<std::vector<std::string>> shared;
    std::optional<int> budget;
    std::optional<int> n_init;
    std::optional<std::uint32_t> stream_key;

    bool operator==(const AgentEntry&) const = default;
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<Method> methods{Method::arco};

    // Exactly one of benchmark or agents is used.
    std::optional<std::string> benchmark;
    int scenario = 1;
    std::vector<AgentEntry> agents;

    std::optional<int> iterations;  // T; defaults to the largest budget
    double alpha = 3.0;
    double proximity_fraction = 0.1;
    std::vector<std::uint64_t> seeds{0};
    int grid_multiplier = 50;
    int candidates_per_dim = 1024;
    double sinkhorn_tol = 1e-9;
    int sinkhorn_max_iter = 1000;
    KernelParams kernel;
    double early_fraction = 0.1;

    bool operator==(const ExperimentConfig&) const = default;
};

/// A config with every default resolved and agents materialized.
struct Experiment {
    ExperimentConfig config;
    std::vector<AgentSpec> agents;
    int iterations = 1;

    int num_agents() const noexcept { return static_cast<int>(agents.size()); }
    int shared_dim() const noexcept { return agents.empty() ? 0 : agents.front().layout.d_s(); }
};

/// Resolves defaults and checks cross-agent consistency. Throws ConfigError
/// listing every issue found.
Experiment validate_experiment(const ExperimentConfig& config);

/// Checks a hand-built agent list (no benchmark lookup). Same rules as
/// validate_experiment.
std::vector<std::string> check_agents(const std::vector<AgentSpec>& agents);

/// Builds an Experiment from explicit agents, e.g. custom objectives.
Experiment make_experiment(ExperimentConfig config, std::vector<AgentSpec> agents);

}  // namespace arco

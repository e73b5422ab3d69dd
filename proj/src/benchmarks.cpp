#include "arco/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace arco::bench {

namespace {

using std::numbers::e;
using std::numbers::pi;

std::vector<FamilyInfo> make_families() {
    std::vector<FamilyInfo> f;
    f.push_back({"sasena", 1, {"x"}, Bounds({0.0}, {10.0}), {"x"},
                 {{3, 20, 6.782}, {3, 20, 8.269}, {3, 20, 5.959}}});
    f.push_back({"ackley", 2, {"x1", "x2"}, Bounds({-5.0, -5.0}, {5.0, 5.0}), {"x1", "x2"},
                 {{5, 50, 0.0}, {5, 50, 2.5}, {5, 50, 1.0}, {5, 50, 3.0}, {5, 50, -0.359}, {5, 50, 3.978}}});
    f.push_back({"borehole", 8, {"r_w", "r", "T_u", "H_u", "T_l", "H_l", "L", "K_w"},
                 Bounds({0.05, 100.0, 100.0, 990.0, 10.0, 700.0, 1000.0, 6000.0},
                        {0.15, 10000.0, 1000.0, 1110.0, 500.0, 820.0, 2000.0, 12000.0}),
                 {"r_w", "T_u", "H_u", "T_l", "H_l"},
                 {{8, 50, 3.985}, {8, 25, 15.582}, {8, 25, 1.000}, {8, 50, 3.434}, {8, 25, 3.153}}});
    f.push_back({"wingweight", 10, {"s_w", "w_fw", "A", "Lambda", "q", "lambda", "t_c", "N_z", "W_dg", "w_p"},
                 Bounds({150.0, 220.0, 6.0, -10.0, 16.0, 0.5, 0.08, 2.5, 1700.0, 0.025},
                        {200.0, 300.0, 10.0, 10.0, 45.0, 1.0, 0.18, 6.0, 2500.0, 0.08}),
                 {"s_w", "w_fw", "A", "q", "W_dg"},
                 {{5, 30, 123.25}, {5, 10, 119.53}, {5, 20, 131.65}, {5, 20, 268.13}}});
    return f;
}

const std::vector<FamilyInfo>& families() {
    static const std::vector<FamilyInfo> all = make_families();
    return all;
}

double sasena(int agent, const Vector& x) {
    const double v = x[0];
    switch (agent) {
        case 1: return -std::sin(v) - std::exp(v / 10.0) + 10.0;
        case 2: return -std::sin(0.95 * v) - std::exp(v / 50.0) + 0.03 * (v - 2.0) * (v - 2.0) + 10.3;
        case 3: return -std::sin(0.8 * v) - std::exp(v / 50.0) + 0.03 * (v - 2.0) * (v - 2.0) + 8.0;
    }
    throw Error("sasena has agents 1..3");
}

// -20 exp(-0.2 sqrt(0.5 sum z^2)) - amp * exp(0.5 sum cos(freq * pi * z)) + 20 + e
double ackley_core(double z1, double z2, double freq, double amp) {
    const double r = std::sqrt(0.5 * (z1 * z1 + z2 * z2));
    const double c = 0.5 * (std::cos(freq * pi * z1) + std::cos(freq * pi * z2));
    return -20.0 * std::exp(-0.2 * r) - amp * std::exp(c) + 20.0 + e;
}

double ackley(int agent, const Vector& x) {
    const double x1 = x[0];
    const double x2 = x[1];
    switch (agent) {
        case 1: return ackley_core(x1, x2, 1.0, 1.0);
        case 2: return ackley_core(x1 + 0.2, x2 + 0.2, 1.1, 1.0) + 2.5;
        case 3: {
            const double z1 = 0.8 * (x1 - 0.3);
            const double z2 = 0.8 * (x2 - 0.3);
            return ackley_core(z1, z2, 0.9, 1.0) + 1.0;
        }
        case 4: {
            const double z = x1 + 0.4;
            return -20.0 * std::exp(-0.2 * std::sqrt(z * z)) - std::exp(std::cos(pi * z)) + 20.0 + e + 3.0;
        }
        case 5: return ackley_core(x1 - 0.5, x2 - 0.5, 1.0, 1.5) + 1.0;
        case 6: return 1.1 * ackley_core(x1 - 0.1, x2 - 0.1, 1.0, 1.0) + 4.0;
    }
    throw Error("ackley has agents 1..6");
}

double borehole(int agent, const Vector& x) {
    const double rw = x[0], r = x[1], tu = x[2], hu = x[3], tl = x[4], hl = x[5], L = x[6], kw = x[7];
    const double log_ratio = std::log(r / rw);
    const double leak = L * tu / (rw * rw * kw * log_ratio);
    switch (agent) {
        case 1: return 2.0 * pi * tu * (hu - hl) / (log_ratio * (1.0 + 2.0 * leak + tu / tl));
        case 2: return 2.0 * pi * tu * (hu - 0.8 * hl) / (log_ratio * (1.0 + leak + tu / tl));
        case 3: return 2.0 * pi * tu * (hu - hl) / (log_ratio * (1.0 + 8.0 * leak + 0.75 * tu / tl));
        case 4: return 2.0 * pi * tu * (1.09 * hu - hl) / (std::log(4.0 * r / rw) * (1.0 + 3.0 * leak + tu / tl));
        case 5: return 2.0 * pi * tu * (1.05 * hu - hl) / (std::log(2.0 * r / rw) * (1.0 + 3.0 * leak + tu / tl));
    }
    throw Error("borehole has agents 1..5");
}

double wingweight(int agent, const Vector& x) {
    const double sw = x[0], wfw = x[1], A = x[2], sweep_deg = x[3], q = x[4], taper = x[5], tc = x[6], nz = x[7],
                 wdg = x[8], wp = x[9];
    // Sweep angle is tabulated in degrees.
    const double c = std::cos(sweep_deg * pi / 180.0);
    const double sw_exp = agent == 4 ? 0.9 : 0.758;
    const double q_exp = agent <= 2 ? 0.006 : 0.005;
    const double front = 0.036 * std::pow(sw, sw_exp) * std::pow(wfw, 0.0035) * std::pow(A / (c * c), 0.6) *
                         std::pow(q, q_exp) * std::pow(taper, 0.04) * std::pow(100.0 * tc / c, -0.3);
    const double load = std::pow(nz * wdg, 0.49);
    switch (agent) {
        case 1: return front * (load + sw * wp);
        case 2:
        case 3: return front * (load + wp);
        case 4: return front * load;
    }
    throw Error("wingweight has agents 1..4");
}

}  // namespace

const std::vector<std::string>& family_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& f : families()) v.push_back(f.id);
        return v;
    }();
    return ids;
}

const FamilyInfo& family(std::string_view id) {
    for (const auto& f : families()) {
        if (f.id == id) return f;
    }
    throw Error("unknown benchmark family '" + std::string(id) + "'");
}

int num_agents(std::string_view id) { return static_cast<int>(family(id).agents.size()); }

int variable_index(std::string_view family_id, std::string_view name) {
    const auto& vars = family(family_id).variables;
    const auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end())
        throw Error("family '" + std::string(family_id) + "' has no variable '" + std::string(name) + "'");
    return static_cast<int>(it - vars.begin());
}

double evaluate_unchecked(std::string_view family_id, int agent, const Vector& x) {
    const auto& fam = family(family_id);
    if (x.size() != fam.dim)
        throw Error("dimension mismatch: " + fam.id + " expects " + std::to_string(fam.dim) + " inputs");
    if (fam.id == "sasena") return sasena(agent, x);
    if (fam.id == "ackley") return ackley(agent, x);
    if (fam.id == "borehole") return borehole(agent, x);
    return wingweight(agent, x);
}

double evaluate(std::string_view family_id, int agent, const Vector& x) {
    const auto& fam = family(family_id);
    if (x.size() != fam.dim)
        throw Error("dimension mismatch: " + fam.id + " expects " + std::to_string(fam.dim) + " inputs");
    if (!fam.bounds.contains(x)) throw Error("input outside the bounds of " + fam.id);
    return evaluate_unchecked(family_id, agent, x);
}

ReferenceOptimum reference_optimum(std::string_view family_id, int agent) {
    const auto& fam = family(family_id);
    if (agent < 1 || agent > static_cast<int>(fam.agents.size()))
        throw Error(fam.id + " has no agent " + std::to_string(agent));
    const double v = fam.agents[static_cast<std::size_t>(agent - 1)].table_optimum;
    return {v, 0.01 * std::max(std::abs(v), 1.0)};
}

std::vector<AgentEntry> scenario_agents(std::string_view family_id, int scenario) {
    const auto& fam = family(family_id);
    const int max_scenario = fam.id == "ackley" ? 3 : 1;
    if (scenario < 1 || scenario > max_scenario)
        throw Error(fam.id + " has no scenario " + std::to_string(scenario));
    std::vector<AgentEntry> out;
    for (std::size_t i = 0; i < fam.agents.size(); ++i) {
        AgentEntry e;
        e.function = {fam.id, static_cast<int>(i) + 1};
        if (fam.id == "ackley" && scenario == 2 && (i == 1 || i == 2 || i == 5)) e.budget = fam.agents[i].budget / 2;
        if (fam.id == "ackley" && scenario == 3) e.shared = std::vector<std::string>{"x1"};
        out.push_back(std::move(e));
    }
    return out;
}

AgentSpec make_agent(const AgentEntry& entry, int id) {
    const auto& fam = family(entry.function.family);
    const int variant = entry.function.variant;
    if (variant < 1 || variant > static_cast<int>(fam.agents.size()))
        throw Error(fam.id + " has no agent " + std::to_string(variant));
    const auto& info = fam.agents[static_cast<std::size_t>(variant - 1)];

    AgentSpec a;
    a.id = id;
    a.stream_key = entry.stream_key.value_or(static_cast<std::uint32_t>(id));
    a.objective_ref = entry.function;
    a.bounds = fam.bounds;
    if (entry.lower) a.bounds.lower = Eigen::Map<const Vector>(entry.lower->data(), static_cast<Eigen::Index>(entry.lower->size()));
    if (entry.upper) a.bounds.upper = Eigen::Map<const Vector>(entry.upper->data(), static_cast<Eigen::Index>(entry.upper->size()));
    if (a.bounds.dim() != fam.dim || a.bounds.upper.size() != fam.dim)
        throw Error(fam.id + " bounds must have " + std::to_string(fam.dim) + " entries");

    std::vector<int> shared;
    for (const auto& name : entry.shared.value_or(fam.shared)) shared.push_back(variable_index(fam.id, name));
    a.layout = InputLayout::from_shared(std::move(shared), fam.dim);
    a.budget = entry.budget.value_or(info.budget);
    a.n_init = entry.n_init.value_or(info.n_init);

    const std::string fam_id = fam.id;
    const Bounds bounds = a.bounds;
    a.objective = [fam_id, variant, bounds](const Vector& x) {
        if (!bounds.contains(x)) throw Error("input outside the agent's bounds");
        return evaluate_unchecked(fam_id, variant, x);
    };
    return a;
}

}  // namespace arco::bench

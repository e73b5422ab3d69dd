#pragma once

#include "arco/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace arco::bench {

/// Static description of one agent of a built-in family.
struct AgentInfo {
    int n_init;
    int budget;
    double table_optimum;
};

struct FamilyInfo {
    std::string id;
    int dim;
    std::vector<std::string> variables;
    Bounds bounds;
    std::vector<std::string> shared;   // default shareable variables
    std::vector<AgentInfo> agents;
};

const std::vector<std::string>& family_ids();
const FamilyInfo& family(std::string_view id);
int num_agents(std::string_view id);

/// Variable name to index. Throws on unknown names.
int variable_index(std::string_view family_id, std::string_view name);

/// Exact formula value. agent is 1-based. Rejects wrong dimension and
/// out-of-bounds inputs.
double evaluate(std::string_view family_id, int agent, const Vector& x);

/// Same formulas without the bounds check, for oracles that polish at the
/// boundary.
double evaluate_unchecked(std::string_view family_id, int agent, const Vector& x);

struct ReferenceOptimum {
    double value;
    double tolerance;  // 1% relative, with unit scale floor
};

ReferenceOptimum reference_optimum(std::string_view family_id, int agent);

/// Agent entries for a family scenario. Ackley: 1 equal budgets and both
/// dims shared, 2 halved budgets for agents 2, 3, 6, 3 only x1 shared.
std::vector<AgentEntry> scenario_agents(std::string_view family_id, int scenario);

/// Materializes an AgentSpec (objective bound to evaluate()).
AgentSpec make_agent(const AgentEntry& entry, int id);

}  // namespace arco::bench

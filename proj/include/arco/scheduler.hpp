#pragma once

#include <vector>

namespace arco {

/// Budget-aware participation. Agent i proposes at iterations that are
/// multiples of tau_i = floor(B_max / B_i) while it has budget left.
class BudgetState {
public:
    static BudgetState init(const std::vector<int>& budgets);

    bool is_active(int agent, int t) const;
    void record_evaluation(int agent);

    bool any_remaining() const;
    int num_agents() const noexcept { return static_cast<int>(remaining_.size()); }
    int b_max() const noexcept { return b_max_; }
    const std::vector<int>& remaining() const noexcept { return remaining_; }
    const std::vector<int>& initial() const noexcept { return initial_; }
    // Agents with zero budget carry tau = 1; they are never active.
    const std::vector<int>& tau() const noexcept { return tau_; }

private:
    std::vector<int> initial_;
    std::vector<int> remaining_;
    std::vector<int> tau_;
    int b_max_ = 0;
};

}  // namespace arco

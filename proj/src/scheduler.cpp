#include "arco/scheduler.hpp"

#include "arco/types.hpp"

#include <algorithm>

namespace arco {

BudgetState BudgetState::init(const std::vector<int>& budgets) {
    if (budgets.empty()) throw Error("no budgets");
    BudgetState s;
    for (int b : budgets) {
        if (b < 0) throw Error("negative budget");
    }
    s.b_max_ = *std::max_element(budgets.begin(), budgets.end());
    if (s.b_max_ == 0) throw Error("all budgets are zero");
    s.initial_ = budgets;
    s.remaining_ = budgets;
    s.tau_.reserve(budgets.size());
    for (int b : budgets) s.tau_.push_back(b > 0 ? s.b_max_ / b : 1);
    return s;
}

bool BudgetState::is_active(int agent, int t) const {
    const auto i = static_cast<std::size_t>(agent);
    return t >= 0 && t % tau_.at(i) == 0 && remaining_.at(i) > 0;
}

void BudgetState::record_evaluation(int agent) {
    auto& r = remaining_.at(static_cast<std::size_t>(agent));
    if (r <= 0) throw Error("evaluation recorded for agent " + std::to_string(agent) + " with no budget left");
    --r;
}

bool BudgetState::any_remaining() const {
    return std::any_of(remaining_.begin(), remaining_.end(), [](int r) { return r > 0; });
}

}  // namespace arco

#include "arco/acquisition.hpp"

#include <cmath>
#include <numbers>

namespace arco {

Incumbent incumbent(const Dataset& data) {
    if (data.empty()) throw Error("incumbent of an empty dataset");
    const auto& obs = data.observations();
    int best = 0;
    for (int i = 1; i < data.size(); ++i) {
        if (obs[static_cast<std::size_t>(i)] < obs[static_cast<std::size_t>(best)]) best = i;
    }
    return {obs[static_cast<std::size_t>(best)], data.inputs()[static_cast<std::size_t>(best)], best};
}

double ei(double mean, double std, double f_star) {
    if (!std::isfinite(mean) || !std::isfinite(std) || !std::isfinite(f_star)) throw Error("non-finite EI input");
    if (std < 0.0) throw Error("negative standard deviation");
    const double improvement = f_star - mean;
    if (std < 1e-12) return std::max(0.0, improvement);
    const double z = improvement / std;
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    return std::max(0.0, improvement * cdf + std * pdf);
}

Matrix candidate_set(const Dataset& data, const Bounds& bounds, SeededRng& rng, int candidates_per_dim) {
    const int d = bounds.dim();
    const Matrix base = lhs(candidates_per_dim * d, bounds, rng);
    const Vector x_star = incumbent(data).x_star_obs;
    Matrix out(base.rows() + 2 * d, d);
    out.topRows(base.rows()) = base;
    Eigen::Index row = base.rows();
    for (int j = 0; j < d; ++j) {
        for (double sign : {-1.0, 1.0}) {
            Vector x = x_star;
            x[j] += sign * 0.01 * bounds.range(j);
            out.row(row++) = bounds.clamp(x).transpose();
        }
    }
    return out;
}

Proposal propose(const GpModel& model, const Dataset& data, const Bounds& bounds, SeededRng& rng,
                 int candidates_per_dim) {
    const Matrix cands = candidate_set(data, bounds, rng, candidates_per_dim);
    Vector mean;
    Vector var;
    model.predict_standardized(cands, mean, var);
    const double f_star = model.standardize(incumbent(data).f_star);

    int best = 0;
    double best_ei = -1.0;
    for (Eigen::Index i = 0; i < cands.rows(); ++i) {
        const double v = ei(mean[i], std::sqrt(var[i]), f_star);
        if (v > best_ei) {
            best_ei = v;
            best = static_cast<int>(i);
        }
    }
    return {cands.row(best).transpose(), best_ei, best};
}

}  // namespace arco

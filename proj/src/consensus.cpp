#include "arco/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace arco {

Matrix TestGrid::assemble(const AgentSpec& agent) const {
    const auto& fill = private_fills.at(static_cast<std::size_t>(agent.id));
    Matrix out(size(), agent.dim());
    for (int s = 0; s < agent.layout.d_s(); ++s)
        out.col(agent.layout.shared_dims[static_cast<std::size_t>(s)]) = shared_points.col(s);
    for (int p = 0; p < agent.layout.d_p(); ++p)
        out.col(agent.layout.private_dims[static_cast<std::size_t>(p)]) = fill.col(p);
    return out;
}

namespace {

Bounds sub_bounds(const Bounds& b, const std::vector<int>& dims) {
    Bounds out;
    out.lower.resize(static_cast<Eigen::Index>(dims.size()));
    out.upper.resize(static_cast<Eigen::Index>(dims.size()));
    for (std::size_t i = 0; i < dims.size(); ++i) {
        out.lower[static_cast<Eigen::Index>(i)] = b.lower[dims[i]];
        out.upper[static_cast<Eigen::Index>(i)] = b.upper[dims[i]];
    }
    return out;
}

}  // namespace

TestGrid make_test_grid(std::span<const AgentSpec> agents, int multiplier, std::uint64_t seed) {
    if (agents.empty()) throw Error("test grid needs at least one agent");
    int d_grid = 0;
    for (const auto& a : agents) d_grid = std::max(d_grid, a.dim());
    const int n = std::max(2, multiplier * d_grid);

    TestGrid grid;
    const auto& first = agents.front();
    if (first.layout.d_s() > 0) {
        SeededRng rng(seed, {StreamPurpose::grid_shared, 0, 0});
        grid.shared_points = lhs(n, sub_bounds(first.bounds, first.layout.shared_dims), rng);
    } else {
        grid.shared_points.resize(n, 0);
    }
    grid.private_fills.reserve(agents.size());
    for (const auto& a : agents) {
        if (a.layout.d_p() > 0) {
            SeededRng rng(seed, {StreamPurpose::grid_private, a.stream_key, 0});
            grid.private_fills.push_back(lhs(n, sub_bounds(a.bounds, a.layout.private_dims), rng));
        } else {
            grid.private_fills.emplace_back(n, 0);
        }
    }
    return grid;
}

std::vector<BehaviorEmbedding> compute_embeddings(std::span<const GpModel* const> models,
                                                  std::span<const AgentSpec> agents,
                                                  std::span<const int> which, const TestGrid& grid) {
    std::vector<BehaviorEmbedding> out;
    out.reserve(which.size());
    for (int k : which) {
        const auto& agent = agents[static_cast<std::size_t>(k)];
        const GpModel* model = models[static_cast<std::size_t>(k)];
        if (model == nullptr) throw Error("embedding requested for an unfitted agent");
        BehaviorEmbedding e;
        Vector var;
        model->predict_standardized(grid.assemble(agent), e.mu, var);
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < e.mu.size(); ++i) {
            if (e.mu[i] < e.mu[best]) best = i;
        }
        e.argmin = static_cast<int>(best);
        e.x_min_shared = grid.shared_points.row(best).transpose();
        out.push_back(std::move(e));
    }
    return out;
}

double pearson_similarity(const Vector& a, const Vector& b) {
    if (a.size() != b.size() || a.size() < 2) throw Error("pearson needs equal-length vectors of length >= 2");
    const double n = static_cast<double>(a.size());
    const double ma = a.mean();
    const double mb = b.mean();
    const Vector da = a.array() - ma;
    const Vector db = b.array() - mb;
    const double saa = da.squaredNorm();
    const double sbb = db.squaredNorm();
    // Constant up to rounding of the mean carries no shape information.
    auto flat = [n](double ss, const Vector& v) {
        const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
        return ss <= 1e-24 * n * scale * scale;
    };
    if (flat(saa, a) || flat(sbb, b)) return 0.5;
    const double rho = std::clamp(da.dot(db) / std::sqrt(saa * sbb), -1.0, 1.0);
    return 0.5 * (rho + 1.0);
}

double proximity_similarity(const Vector& a, const Vector& b, double lambda_p) {
    if (a.size() != b.size()) throw Error("proximity needs equal-length vectors");
    return std::exp(-lambda_p * (a - b).squaredNorm());
}

double proximity_lambda(double delta, double fraction) {
    if (!(delta > 0.0)) return 0.0;
    const double dist = fraction * delta;
    return -std::log(0.1) / (dist * dist);
}

double shared_domain_range(const Bounds& bounds, const InputLayout& layout) {
    double delta = 0.0;
    for (int j : layout.shared_dims) delta = std::max(delta, bounds.range(j));
    return delta;
}

ColMatrix similarity_matrix(std::span<const BehaviorEmbedding> embeddings, double lambda_p) {
    const auto K = static_cast<Eigen::Index>(embeddings.size());
    ColMatrix S = ColMatrix::Identity(K, K);
    for (Eigen::Index i = 0; i < K; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const auto& ei = embeddings[static_cast<std::size_t>(i)];
            const auto& ej = embeddings[static_cast<std::size_t>(j)];
            const double s = pearson_similarity(ei.mu, ej.mu) *
                             proximity_similarity(ei.x_min_shared, ej.x_min_shared, lambda_p);
            S(i, j) = s;
            S(j, i) = s;
        }
    }
    return S;
}

double gamma_decay(int t, int T, double alpha) {
    if (T < 1 || t < 0) throw Error("gamma needs T >= 1 and t >= 0");
    return std::exp(-alpha * static_cast<double>(t) / static_cast<double>(T));
}

namespace {

double stochastic_residual(const ColMatrix& m) {
    const double rows = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
    return std::max(rows, cols);
}

// For symmetric m with positive diagonal the limit is D m D. Newton on
// x .* (m x) = 1 finds D quickly even when m is nearly block-diagonal,
// where plain alternation crawls. Returns m unchanged if Newton stalls.
ColMatrix symmetric_prescale(const ColMatrix& m) {
    if (!m.isApprox(m.transpose(), 0.0) || (m.diagonal().array() <= 0.0).any()) return m;
    Vector x = m.diagonal().array().rsqrt();
    for (int it = 0; it < 60; ++it) {
        const Vector mx = m * x;
        const Vector f = x.cwiseProduct(mx).array() - 1.0;
        const double err = f.cwiseAbs().maxCoeff();
        if (err < 1e-15) break;
        ColMatrix J = x.asDiagonal() * m;
        J.diagonal() += mx;
        const Vector step = J.partialPivLu().solve(f);
        if (!step.allFinite()) return m;
        double s = 1.0;
        Vector next = x - step;
        while ((next.array() <= 0.0).any() && s > 1e-8) {
            s *= 0.5;
            next = x - s * step;
        }
        if ((next.array() <= 0.0).any()) return m;
        x = next;
    }
    ColMatrix out = x.asDiagonal() * m * x.asDiagonal();
    return out.allFinite() ? out : m;
}

}  // namespace

SinkhornResult sinkhorn(const ColMatrix& m, double tol, int max_iter) {
    if (m.rows() != m.cols() || m.rows() == 0) throw Error("sinkhorn needs a non-empty square matrix");
    if ((m.array() < 0.0).any() || !m.allFinite()) throw Error("sinkhorn needs a finite nonnegative matrix");
    if ((m.rowwise().maxCoeff().array() <= 0.0).any() || (m.colwise().maxCoeff().array() <= 0.0).any())
        throw SinkhornError("sinkhorn input has an all-zero row or column", std::numeric_limits<double>::infinity());

    double residual = stochastic_residual(m);
    if (residual < tol) return {m, 0, residual};
    ColMatrix w = symmetric_prescale(m);
    residual = stochastic_residual(w);
    if (residual < tol) return {w, 0, residual};
    for (int it = 1; it <= max_iter; ++it) {
        w.array().colwise() /= w.rowwise().sum().array();
        w.array().rowwise() /= w.colwise().sum().array();
        residual = stochastic_residual(w);
        if (residual < tol) return {w, it, residual};
    }
    std::ostringstream os;
    os << "sinkhorn did not converge in " << max_iter << " iterations (residual " << residual << ")";
    throw SinkhornError(os.str(), residual);
}

ColMatrix build_w(const ColMatrix& S, int t, int T, double alpha, double tol, int max_iter) {
    const double g = gamma_decay(t, T, alpha);
    ColMatrix blend = g * S;
    blend.diagonal().array() += 1.0 - g;
    return sinkhorn(blend, tol, max_iter).matrix;
}

std::vector<Vector> apply_consensus(const ColMatrix& W, const std::vector<Vector>& proposals,
                                    std::span<const AgentSpec> agents, std::span<const int> active) {
    const auto m = static_cast<Eigen::Index>(active.size());
    if (W.rows() != m || W.cols() != m) throw Error("consensus matrix does not match the active set");
    if (proposals.size() != agents.size()) throw Error("one proposal slot per agent expected");
    std::vector<Vector> out = proposals;
    if (m == 0) return out;

    const int d_s = agents[static_cast<std::size_t>(active[0])].layout.d_s();
    ColMatrix shared(m, d_s);
    for (Eigen::Index a = 0; a < m; ++a) {
        const auto& agent = agents[static_cast<std::size_t>(active[static_cast<std::size_t>(a)])];
        const auto& x = proposals[static_cast<std::size_t>(agent.id)];
        if (agent.layout.d_s() != d_s || x.size() != agent.dim()) throw Error("consensus dimension mismatch");
        shared.row(a) = agent.layout.shared_part(x).transpose();
    }
    const ColMatrix mixed = W * shared;
    for (Eigen::Index a = 0; a < m; ++a) {
        const auto& agent = agents[static_cast<std::size_t>(active[static_cast<std::size_t>(a)])];
        Vector& x = out[static_cast<std::size_t>(agent.id)];
        for (int s = 0; s < d_s; ++s) x[agent.layout.shared_dims[static_cast<std::size_t>(s)]] = mixed(a, s);
        x = agent.bounds.clamp(x);
    }
    return out;
}

ColMatrix baseline_w(int t, int T, int K) {
    if (T < 1 || K < 1 || t < 0 || t > T) throw Error("baseline_w needs 0 <= t <= T, T >= 1, K >= 1");
    const double off = static_cast<double>(T - t) / (static_cast<double>(T) * K);
    ColMatrix W = ColMatrix::Constant(K, K, off);
    W.diagonal().setConstant(1.0 - (K - 1) * off);
    return W;
}

}  // namespace arco

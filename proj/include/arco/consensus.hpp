#pragma once

#include "arco/sampling.hpp"
#include "arco/surrogate.hpp"

#include <span>

namespace arco {

/// Common test set for behavior embeddings. Shared coordinates come from one
/// LHS over the shared subspace; each agent fills its private coordinates
/// from its own LHS of the same size. Fixed for a replicate.
struct TestGrid {
    Matrix shared_points;                  // N x d_s
    std::vector<Matrix> private_fills;     // per agent, N x d_p(agent)

    int size() const noexcept { return static_cast<int>(shared_points.rows()); }

    /// Full-dimensional grid for one agent, N x d.
    Matrix assemble(const AgentSpec& agent) const;
};

/// N = multiplier * (largest agent dimension).
TestGrid make_test_grid(std::span<const AgentSpec> agents, int multiplier, std::uint64_t seed);

struct BehaviorEmbedding {
    Vector mu;           // standardized predictive means over the grid
    int argmin = 0;      // first index attaining the minimum
    Vector x_min_shared; // shared coordinates of grid point argmin
};

/// Embeddings for the agents listed in `which` (indices into agents/models).
std::vector<BehaviorEmbedding> compute_embeddings(std::span<const GpModel* const> models,
                                                  std::span<const AgentSpec> agents,
                                                  std::span<const int> which, const TestGrid& grid);

/// (rho + 1) / 2 with rho the sample Pearson correlation; 0.5 if either
/// vector is constant.
double pearson_similarity(const Vector& a, const Vector& b);

double proximity_similarity(const Vector& a, const Vector& b, double lambda_p);

/// lambda_p such that proximity is 0.1 at a distance of fraction * delta.
double proximity_lambda(double delta, double fraction = 0.1);

/// Largest range over the shared dimensions of `bounds`.
double shared_domain_range(const Bounds& bounds, const InputLayout& layout);

/// S_ij = pearson * proximity off the diagonal, 1 on it.
ColMatrix similarity_matrix(std::span<const BehaviorEmbedding> embeddings, double lambda_p);

double gamma_decay(int t, int T, double alpha);

struct SinkhornResult {
    ColMatrix matrix;
    int iterations;
    double residual;
};

/// Alternate row then column normalization until every row and column sum
/// is within tol of 1.
SinkhornResult sinkhorn(const ColMatrix& m, double tol, int max_iter);

/// sinkhorn(gamma * S + (1 - gamma) * I).
ColMatrix build_w(const ColMatrix& S, int t, int T, double alpha, double tol, int max_iter);

/// Mixes the shared coordinates of the active agents' proposals with W
/// (|active| x |active|). Private coordinates and inactive agents are left
/// alone; results are clamped to each agent's bounds.
std::vector<Vector> apply_consensus(const ColMatrix& W, const std::vector<Vector>& proposals,
                                    std::span<const AgentSpec> agents, std::span<const int> active);

/// Uniform-consensus schedule: (1/K) ones at t = 0, identity at t = T.
ColMatrix baseline_w(int t, int T, int K);

}  // namespace arco

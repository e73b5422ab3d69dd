#pragma once

#include "arco/sampling.hpp"
#include "arco/surrogate.hpp"

namespace arco {

struct Incumbent {
    double f_star;
    Vector x_star_obs;
    int index;
};

/// Minimum observation; ties go to the earliest index.
Incumbent incumbent(const Dataset& data);

/// Expected improvement for minimization. Below std = 1e-12 the
/// zero-variance limit max(0, f_star - mean) is returned.
double ei(double mean, double std, double f_star);

/// The candidate set propose() scores: an LHS of candidates_per_dim * d
/// points, then the incumbent moved by +/-1% of each dimension's range.
Matrix candidate_set(const Dataset& data, const Bounds& bounds, SeededRng& rng, int candidates_per_dim);

struct Proposal {
    Vector x;
    double ei;
    int candidate_index;
};

/// Argmax of EI over candidate_set(); ties go to the lowest candidate index.
Proposal propose(const GpModel& model, const Dataset& data, const Bounds& bounds, SeededRng& rng,
                 int candidates_per_dim);

}  // namespace arco

#pragma once

#include "arco/problem.hpp"

namespace arco {

struct Prediction {
    double mean;      // original y units
    double variance;  // standardized units
    double std;
};

/// Posterior of one point in standardized units.
struct StdPrediction {
    double mean;
    double variance;
};

/// Zero-mean GP with a squared-exponential kernel and fixed hyperparameters.
/// Inputs are min-max normalized to [0,1] per dimension and observations are
/// standardized before conditioning, so the lengthscale is in normalized units.
class GpModel {
public:
    static constexpr double kVarianceFloor = 1e-12;
    static constexpr double kMaxJitter = 1e-2;

    /// Throws Error on a non-finite observation and CholeskyError when the
    /// kernel matrix stays indefinite at the largest jitter.
    static GpModel fit(const Dataset& data, const Bounds& bounds, const KernelParams& params);

    Prediction predict(const Vector& x) const;
    StdPrediction predict_standardized(const Vector& x) const;

    /// Row-wise predictions over a point set; standardized units.
    void predict_standardized(const Matrix& xs, Vector& mean, Vector& variance) const;
    /// Row-wise predictions; mean in original units, variance standardized.
    void predict(const Matrix& xs, Vector& mean, Vector& variance) const;

    double standardize(double y) const noexcept { return (y - y_mean_) / y_std_; }
    double destandardize(double z) const noexcept { return y_mean_ + y_std_ * z; }

    double kernel(const Vector& a, const Vector& b) const;

    const Matrix& train_inputs() const noexcept { return x_train_; }
    const Vector& train_targets() const noexcept { return y_train_; }
    const ColMatrix& cholesky() const noexcept { return chol_; }
    const Vector& weights() const noexcept { return alpha_; }
    double y_mean() const noexcept { return y_mean_; }
    double y_std() const noexcept { return y_std_; }
    double jitter() const noexcept { return jitter_; }
    const KernelParams& params() const noexcept { return params_; }
    const Bounds& bounds() const noexcept { return bounds_; }

    Vector normalize(const Vector& x) const;

private:
    Matrix x_train_;
    Vector y_train_;
    ColMatrix chol_;
    Vector alpha_;
    double y_mean_ = 0.0;
    double y_std_ = 1.0;
    double jitter_ = 0.0;
    KernelParams params_;
    Bounds bounds_;

    void cross_kernel(const Matrix& xs_normalized, ColMatrix& out) const;
};

}  // namespace arco

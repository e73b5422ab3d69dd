#include "arco/surrogate.hpp"

#include <cmath>
#include <sstream>

namespace arco {

Vector GpModel::normalize(const Vector& x) const {
    Vector z(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double lo = bounds_.lower[j];
        const double hi = bounds_.upper[j];
        z[j] = (std::clamp(x[j], lo, hi) - lo) / (hi - lo);
    }
    return z;
}

double GpModel::kernel(const Vector& a, const Vector& b) const {
    const double sq = (a - b).squaredNorm();
    return params_.signal_variance * std::exp(-sq / (2.0 * params_.lengthscale * params_.lengthscale));
}

GpModel GpModel::fit(const Dataset& data, const Bounds& bounds, const KernelParams& params) {
    if (data.empty()) throw Error("cannot fit a GP to an empty dataset");
    if (data.dim() != bounds.dim()) throw Error("dataset and bounds differ in dimension");
    for (double y : data.observations()) {
        if (!std::isfinite(y)) throw Error("non-finite observation in dataset");
    }

    GpModel m;
    m.params_ = params;
    m.bounds_ = bounds;
    const int n = data.size();
    const int d = bounds.dim();

    m.x_train_.resize(n, d);
    for (int i = 0; i < n; ++i) m.x_train_.row(i) = m.normalize(data.inputs()[static_cast<std::size_t>(i)]).transpose();

    const auto& obs = data.observations();
    double mean = 0.0;
    for (double y : obs) mean += y;
    mean /= n;
    double ss = 0.0;
    for (double y : obs) ss += (y - mean) * (y - mean);
    double sd = n > 1 ? std::sqrt(ss / n) : 0.0;
    if (!(sd > 0.0) || !std::isfinite(sd)) sd = 1.0;
    m.y_mean_ = mean;
    m.y_std_ = sd;
    m.y_train_.resize(n);
    for (int i = 0; i < n; ++i) m.y_train_[i] = (obs[static_cast<std::size_t>(i)] - mean) / sd;

    ColMatrix K(n, n);
    const double inv_two_l2 = 1.0 / (2.0 * params.lengthscale * params.lengthscale);
    for (int i = 0; i < n; ++i) {
        K(i, i) = params.signal_variance;
        for (int j = 0; j < i; ++j) {
            const double sq = (m.x_train_.row(i) - m.x_train_.row(j)).squaredNorm();
            const double k = params.signal_variance * std::exp(-sq * inv_two_l2);
            K(i, j) = k;
            K(j, i) = k;
        }
    }

    double jitter = params.noise_variance;
    for (;;) {
        ColMatrix A = K;
        A.diagonal().array() += jitter;
        Eigen::LLT<ColMatrix> llt(A);
        bool ok = llt.info() == Eigen::Success;
        if (ok) {
            const ColMatrix L = llt.matrixL();
            ok = (L.diagonal().array() > 0.0).all() && L.allFinite();
            if (ok) {
                m.chol_ = L;
                m.alpha_ = llt.solve(m.y_train_);
                m.jitter_ = jitter;
                return m;
            }
        }
        const double next = jitter * 10.0;
        if (next > kMaxJitter * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "Cholesky failed with jitter " << jitter;
            throw CholeskyError(os.str(), jitter);
        }
        jitter = next;
    }
}

void GpModel::cross_kernel(const Matrix& xs_normalized, ColMatrix& out) const {
    const Eigen::Index m = xs_normalized.rows();
    const Eigen::Index n = x_train_.rows();
    const Eigen::Index d = x_train_.cols();
    const double inv_two_l2 = 1.0 / (2.0 * params_.lengthscale * params_.lengthscale);
    out.resize(n, m);
    for (Eigen::Index q = 0; q < m; ++q) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double sq = 0.0;
            for (Eigen::Index j = 0; j < d; ++j) {
                const double diff = xs_normalized(q, j) - x_train_(i, j);
                sq += diff * diff;
            }
            out(i, q) = params_.signal_variance * std::exp(-sq * inv_two_l2);
        }
    }
}

StdPrediction GpModel::predict_standardized(const Vector& x) const {
    Matrix row(1, x.size());
    row.row(0) = x.transpose();
    Vector mean;
    Vector var;
    predict_standardized(row, mean, var);
    return {mean[0], var[0]};
}

void GpModel::predict_standardized(const Matrix& xs, Vector& mean, Vector& variance) const {
    Matrix z(xs.rows(), xs.cols());
    for (Eigen::Index q = 0; q < xs.rows(); ++q) z.row(q) = normalize(xs.row(q).transpose()).transpose();
    ColMatrix Ks;
    cross_kernel(z, Ks);
    mean = Ks.transpose() * alpha_;
    chol_.triangularView<Eigen::Lower>().solveInPlace(Ks);
    variance = (params_.signal_variance + params_.noise_variance - Ks.colwise().squaredNorm().array())
                   .max(kVarianceFloor)
                   .matrix()
                   .transpose();
}

void GpModel::predict(const Matrix& xs, Vector& mean, Vector& variance) const {
    predict_standardized(xs, mean, variance);
    mean = (mean.array() * y_std_ + y_mean_).matrix();
}

Prediction GpModel::predict(const Vector& x) const {
    const auto p = predict_standardized(x);
    return {destandardize(p.mean), p.variance, std::sqrt(p.variance)};
}

}  // namespace arco

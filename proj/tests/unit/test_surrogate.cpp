#include "doctest.h"

#include "arco/sampling.hpp"
#include "arco/surrogate.hpp"
#include "oracles.hpp"

#include <random>

using namespace arco;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

Dataset noisy_data(std::mt19937_64& gen, const Bounds& b, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Dataset d;
    for (int i = 0; i < n; ++i) {
        Vector x(b.dim());
        for (int j = 0; j < b.dim(); ++j) x[j] = b.lower[j] + u(gen) * b.range(j);
        d.append(x, std::sin(3.0 * x.sum()) + 0.1 * x.squaredNorm() + u(gen));
    }
    return d;
}

oracle::Vec to_vec(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_SUITE("surrogate") {

TEST_CASE("single point interpolates and reverts to the prior") {
    Dataset d;
    d.append(Vector::Constant(1, 0.0), 1.0);
    const auto m = GpModel::fit(d, Bounds({0.0}, {1.0}), {});
    const auto p = m.predict(Vector::Constant(1, 0.0));
    CHECK(p.mean == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(p.variance <= 2e-6);

    Dataset wide;
    wide.append(Vector::Constant(1, 0.0), 1.0);
    const auto far = GpModel::fit(wide, Bounds({0.0}, {100.0}), {}).predict(Vector::Constant(1, 100.0));
    CHECK(far.mean == doctest::Approx(1.0));
    // normalized distance 1, so k = exp(-2)
    CHECK(far.variance == doctest::Approx(1.0 - std::exp(-4.0) / (1.0 + 1e-6) + 1e-6).epsilon(1e-9));
}

TEST_CASE("fit and predict agree with the dense-inverse oracle") {
    std::mt19937_64 gen(2024);
    const KernelParams kp;
    for (int d : {1, 2, 3, 5, 8}) {
        Bounds b(Vector::Constant(d, -2.0), Vector::Constant(d, 3.0));
        for (int n : {1, 2, 5, 10, 20}) {
            const Dataset data = noisy_data(gen, b, n);
            const auto model = GpModel::fit(data, b, kp);
            if (model.jitter() != kp.noise_variance) continue;
            oracle::Mat xs;
            for (const auto& x : data.inputs()) xs.push_back(to_vec(x));
            const Dataset queries = noisy_data(gen, b, 5);
            for (const auto& q : queries.inputs()) {
                const auto ref = oracle::dense_gp(xs, data.observations(), to_vec(b.lower), to_vec(b.upper), to_vec(q),
                                                  kp.lengthscale, kp.signal_variance, kp.noise_variance);
                const auto p = model.predict(q);
                CHECK(rel_close(p.mean, ref.mean, 1e-8));
                CHECK(rel_close(p.variance, ref.variance, 1e-8));
            }
        }
    }
}

TEST_CASE("training points are reproduced") {
    std::mt19937_64 gen(5);
    const Bounds b({0.0, 0.0}, {1.0, 1.0});
    const Dataset data = noisy_data(gen, b, 8);
    const auto m = GpModel::fit(data, b, {});
    for (int i = 0; i < data.size(); ++i)
        CHECK(std::abs(m.predict(data.inputs()[static_cast<std::size_t>(i)]).mean -
                       data.observations()[static_cast<std::size_t>(i)]) < 1e-3);
}

TEST_CASE("batch predict equals pointwise predict") {
    std::mt19937_64 gen(8);
    const Bounds b({0.0, -1.0, 5.0}, {1.0, 1.0, 6.0});
    const auto m = GpModel::fit(noisy_data(gen, b, 12), b, {});
    SeededRng rng(1);
    const Matrix grid = lhs(150, b, rng);
    Vector mean, var;
    m.predict_standardized(grid, mean, var);
    for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        const auto p = m.predict_standardized(Vector(grid.row(i).transpose()));
        CHECK(mean[i] == doctest::Approx(p.mean).epsilon(1e-12));
        CHECK(var[i] == doctest::Approx(p.variance).epsilon(1e-12));
    }
}

TEST_CASE("variance never exceeds the prior") {
    std::mt19937_64 gen(11);
    const Bounds b({0.0, 0.0}, {1.0, 1.0});
    const auto m = GpModel::fit(noisy_data(gen, b, 15), b, {});
    SeededRng rng(2);
    const Matrix q = lhs(500, b, rng);
    Vector mean, var;
    m.predict_standardized(q, mean, var);
    CHECK(var.maxCoeff() <= 1.0 + 1e-6 + 1e-12);
    CHECK(var.minCoeff() >= 1e-12);
}

TEST_CASE("permuting data leaves predictions; duplicates keep interpolation") {
    std::mt19937_64 gen(13);
    const Bounds b({0.0, 0.0}, {1.0, 1.0});
    const Dataset data = noisy_data(gen, b, 10);
    Dataset reversed;
    for (int i = data.size() - 1; i >= 0; --i)
        reversed.append(data.inputs()[static_cast<std::size_t>(i)], data.observations()[static_cast<std::size_t>(i)]);
    Dataset dup = data;
    dup.append(data.inputs()[3], data.observations()[3]);

    const auto m1 = GpModel::fit(data, b, {});
    const auto m2 = GpModel::fit(reversed, b, {});
    const auto m3 = GpModel::fit(dup, b, {});
    const Dataset q = noisy_data(gen, b, 20);
    for (const auto& x : q.inputs()) CHECK(std::abs(m1.predict(x).mean - m2.predict(x).mean) < 1e-10);
    // a duplicate shifts the standardization, so only training points stay put
    for (std::size_t i = 0; i < data.inputs().size(); ++i)
        CHECK(std::abs(m3.predict(data.inputs()[i]).mean - data.observations()[i]) < 1e-3 * std::max(1.0, m3.y_std()));
}

TEST_CASE("constant observations use unit scale") {
    Dataset d;
    d.append(Vector::Constant(1, 0.2), 4.0);
    d.append(Vector::Constant(1, 0.8), 4.0);
    const auto m = GpModel::fit(d, Bounds({0.0}, {1.0}), {});
    CHECK(m.y_std() == 1.0);
    CHECK(m.predict(Vector::Constant(1, 0.5)).mean == doctest::Approx(4.0));
}

TEST_CASE("near-duplicate inputs escalate jitter") {
    Dataset d;
    d.append(Vector::Constant(1, 0.5), 0.0);
    d.append(Vector::Constant(1, 0.5), 1.0);
    d.append(Vector::Constant(1, 0.5 + 1e-12), 2.0);
    const auto m = GpModel::fit(d, Bounds({0.0}, {1.0}), {});
    CHECK(m.jitter() >= 1e-6);
    CHECK(m.jitter() <= GpModel::kMaxJitter);
    const auto& L = m.cholesky();
    for (Eigen::Index i = 0; i < L.rows(); ++i) CHECK(L(i, i) > 0.0);
}

TEST_CASE("fit errors") {
    CHECK_THROWS(GpModel::fit(Dataset{}, Bounds({0.0}, {1.0}), {}));
    Dataset bad;
    bad.append(Vector::Constant(1, 0.5), std::nan(""));
    CHECK_THROWS(GpModel::fit(bad, Bounds({0.0}, {1.0}), {}));
}

TEST_CASE("queries outside the bounds are clamped") {
    Dataset d;
    d.append(Vector::Constant(1, 1.0), 2.0);
    d.append(Vector::Constant(1, 0.0), 0.0);
    const auto m = GpModel::fit(d, Bounds({0.0}, {1.0}), {});
    CHECK(m.predict(Vector::Constant(1, 1.0 + 1e-9)).mean == doctest::Approx(m.predict(Vector::Constant(1, 1.0)).mean));
}

}  // TEST_SUITE

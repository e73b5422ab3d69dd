#include "doctest.h"

#include "arco/metrics.hpp"

using namespace arco;

namespace {

ReplicateBatch batch_of(std::vector<std::vector<std::vector<double>>> curves) {
    ReplicateBatch b;
    b.iterations = static_cast<int>(curves.front().front().size()) - 1;
    b.curves = std::move(curves);
    return b;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("regret at the optimum is zero") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{1.0, 1.0, 5.0}};
    const auto b = batch_of({{{3.0, 2.0, 1.0}}, {{1.0, 1.0, 1.0}}});
    const auto r = final_regret(b, refs);
    CHECK(r.mean == 0.0);
    CHECK(r.std == 0.0);
    CHECK(r.count == 2);
}

TEST_CASE("hand-checkable regret") {
    const double fmax = 9.4106786895143113;
    const std::vector<std::optional<MetricReference>> refs{MetricReference{6.782, 6.782, fmax}};
    const auto b = batch_of({{{8.0, 7.0}}});
    CHECK(final_regret(b, refs).mean == doctest::Approx((7.0 - 6.782) / (fmax - 6.782)).epsilon(1e-15));
}

TEST_CASE("AUC of a two-step curve") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{0.0, 0.0, 4.0}};
    // t = 0 is the initial design and is not integrated
    const auto b = batch_of({{{9.0, 4.0, 0.0}}});
    const auto a = auc(b, refs, 1.0);
    CHECK(a.window == 2);
    CHECK(a.mean == doctest::Approx(0.5));

    const auto flat = batch_of({{{0.0, 0.0, 0.0}}});
    CHECK(auc(flat, refs, 1.0).mean == 0.0);
}

TEST_CASE("window length") {
    CHECK(auc_window(20, 0.1) == 2);
    CHECK(auc_window(50, 0.1) == 5);
    CHECK(auc_window(30, 0.1) == 3);
    CHECK(auc_window(4, 0.1) == 1);
    CHECK(auc_window(25, 0.1) == 3);
}

TEST_CASE("agents without references are skipped") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{0.0, 0.0, 1.0}, std::nullopt};
    const auto b = batch_of({{{0.5, 0.5}, {100.0, 100.0}}});
    CHECK(final_regret(b, refs).mean == 0.5);
    const std::vector<std::optional<MetricReference>> none{std::nullopt, std::nullopt};
    CHECK_THROWS(final_regret(b, none));
}

TEST_CASE("curve-averaged AUC equals the replicate mean") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{0.0, 0.0, 2.0},
                                                           MetricReference{1.0, 1.0, 3.0}};
    const auto b = batch_of({{{3, 2, 1, 0.5}, {3, 3, 2, 1}}, {{2, 1, 1, 1}, {4, 2, 2, 1.5}}, {{1, 1, 0, 0}, {2, 2, 2, 2}}});
    const auto a = auc(b, refs, 1.0);
    CHECK(a.mean == doctest::Approx(a.replicate_mean).epsilon(1e-14));
    CHECK(a.std > 0.0);
}

TEST_CASE("affine rescaling leaves metrics unchanged") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{1.0, 0.5, 4.0}};
    const auto b = batch_of({{{3.0, 2.0, 1.5, 1.2}}, {{2.5, 2.5, 1.0, 1.0}}});
    const double s = 7.0, c = -3.0;
    auto scaled = b;
    for (auto& rep : scaled.curves)
        for (auto& curve : rep)
            for (auto& v : curve) v = s * v + c;
    const std::vector<std::optional<MetricReference>> refs2{MetricReference{s * 1.0 + c, s * 0.5 + c, s * 4.0 + c}};
    CHECK(final_regret(b, refs).mean == doctest::Approx(final_regret(scaled, refs2).mean).epsilon(1e-13));
    CHECK(auc(b, refs, 0.5).mean == doctest::Approx(auc(scaled, refs2, 0.5).mean).epsilon(1e-13));
}

TEST_CASE("merged batches equal the union") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{0.0, 0.0, 10.0}};
    auto a = batch_of({{{5, 4, 3}}, {{6, 2, 1}}});
    const auto b = batch_of({{{9, 9, 0}}});
    const auto all = batch_of({{{5, 4, 3}}, {{6, 2, 1}}, {{9, 9, 0}}});
    a.merge(b);
    CHECK(final_regret(a, refs).mean == final_regret(all, refs).mean);
    CHECK(final_regret(a, refs).std == final_regret(all, refs).std);
    CHECK(auc(a, refs, 1.0).mean == auc(all, refs, 1.0).mean);
}

TEST_CASE("metrics are non-negative and bounded by the worst normalized value") {
    const std::vector<std::optional<MetricReference>> refs{MetricReference{0.0, 0.0, 10.0}};
    const auto b = batch_of({{{8, 7, 5, 3}}, {{9, 2, 2, 2}}});
    const auto r = final_regret(b, refs);
    CHECK(r.mean >= 0.0);
    CHECK(r.mean <= 0.9);
    CHECK(auc(b, refs).mean >= 0.0);
}

}  // TEST_SUITE

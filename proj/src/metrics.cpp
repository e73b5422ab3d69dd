#include "arco/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace arco {

ReplicateBatch ReplicateBatch::from_runs(Method method, std::span<const RunRecord> runs) {
    ReplicateBatch b;
    b.method = method;
    for (const auto& r : runs) {
        if (!r.ok()) continue;
        if (r.method != method) throw Error("replicate batch mixes methods");
        if (b.curves.empty()) {
            b.iterations = r.iterations;
        } else if (r.iterations != b.iterations) {
            throw Error("replicates disagree on T");
        }
        b.curves.push_back(r.best_so_far);
    }
    return b;
}

void ReplicateBatch::merge(const ReplicateBatch& other) {
    if (other.curves.empty()) return;
    if (curves.empty()) {
        *this = other;
        return;
    }
    if (other.method != method || other.iterations != iterations) throw Error("cannot merge unlike batches");
    curves.insert(curves.end(), other.curves.begin(), other.curves.end());
}

std::vector<std::optional<MetricReference>> metric_references(std::span<const AgentSpec> agents) {
    std::vector<std::optional<MetricReference>> out;
    for (const auto& a : agents) {
        if (!a.has_metric_reference()) {
            out.emplace_back();
            continue;
        }
        MetricReference r{*a.true_optimum, *a.f_min, *a.f_max};
        if (!(r.range() > 0.0)) throw Error("agent " + std::to_string(a.id) + " has an empty function range");
        out.emplace_back(r);
    }
    return out;
}

namespace {

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd m;
    m.count = static_cast<int>(v.size());
    if (v.empty()) return m;
    double s = 0.0;
    for (double x : v) s += x;
    m.mean = s / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - m.mean) * (x - m.mean);
        m.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return m;
}

void check_refs(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs) {
    bool any = false;
    for (const auto& r : refs) any = any || r.has_value();
    if (!any) throw Error("no agent has optimum and range data");
    for (const auto& rep : batch.curves) {
        if (rep.size() != refs.size()) throw Error("reference count does not match the agent count");
    }
}

// Mean over referenced agents of the normalized gap, for one replicate's curves at column t.
template <class ValueAt>
double agent_mean(std::span<const std::optional<MetricReference>> refs, ValueAt value_at) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t k = 0; k < refs.size(); ++k) {
        if (!refs[k]) continue;
        sum += (value_at(k) - refs[k]->optimum) / refs[k]->range();
        ++n;
    }
    return sum / n;
}

}  // namespace

std::vector<double> replicate_regrets(const ReplicateBatch& batch,
                                      std::span<const std::optional<MetricReference>> refs) {
    check_refs(batch, refs);
    const auto T = static_cast<std::size_t>(batch.iterations);
    std::vector<double> out;
    for (const auto& rep : batch.curves)
        out.push_back(agent_mean(refs, [&](std::size_t k) { return rep[k][T]; }));
    return out;
}

MeanStd final_regret(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs) {
    return mean_std(replicate_regrets(batch, refs));
}

int auc_window(int T, double early_fraction) {
    const long n = std::lround(early_fraction * static_cast<double>(T));
    return static_cast<int>(std::clamp<long>(n, 1, std::max(T, 1)));
}

std::vector<double> replicate_aucs(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs,
                                   int window) {
    check_refs(batch, refs);
    std::vector<double> out;
    for (const auto& rep : batch.curves) {
        double s = 0.0;
        for (int t = 1; t <= window; ++t)
            s += agent_mean(refs, [&](std::size_t k) { return rep[k][static_cast<std::size_t>(t)]; });
        out.push_back(s / window);
    }
    return out;
}

AucResult auc(const ReplicateBatch& batch, std::span<const std::optional<MetricReference>> refs,
              double early_fraction) {
    AucResult res;
    res.window = auc_window(batch.iterations, early_fraction);
    const auto per_rep = replicate_aucs(batch, refs, res.window);
    const auto ms = mean_std(per_rep);
    res.std = ms.std;
    res.replicate_mean = ms.mean;

    // Average the curves first, then integrate.
    const auto R = static_cast<double>(batch.curves.size());
    double s = 0.0;
    for (int t = 1; t <= res.window; ++t) {
        s += agent_mean(refs, [&](std::size_t k) {
            double m = 0.0;
            for (const auto& rep : batch.curves) m += rep[k][static_cast<std::size_t>(t)];
            return m / R;
        });
    }
    res.mean = batch.curves.empty() ? 0.0 : s / res.window;
    return res;
}

}  // namespace arco

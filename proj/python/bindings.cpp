#include "arco/acquisition.hpp"
#include "arco/benchmarks.hpp"
#include "arco/config_io.hpp"
#include "arco/consensus.hpp"
#include "arco/oracle.hpp"
#include "arco/reporting.hpp"
#include "arco/sampling.hpp"
#include "arco/surrogate.hpp"

#include <pybind11/eigen.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace arco;

namespace {

Dataset to_dataset(const Matrix& X, const Vector& y) {
    if (X.rows() != y.size()) throw Error("X and y disagree on the number of points");
    Dataset d;
    for (Eigen::Index i = 0; i < X.rows(); ++i) d.append(X.row(i).transpose(), y[i]);
    return d;
}

py::dict summary_dict(const MethodSummary& s) {
    py::dict d;
    d["method"] = to_string(s.method);
    d["auc_mean"] = s.auc.mean;
    d["auc_std"] = s.auc.std;
    d["auc_replicate_mean"] = s.auc.replicate_mean;
    d["auc_window"] = s.auc.window;
    d["regret_mean"] = s.regret.mean;
    d["regret_std"] = s.regret.std;
    d["replicates_ok"] = s.replicates_ok;
    d["replicates_failed"] = s.replicates_failed;
    return d;
}

py::list summary_list(const std::vector<MethodSummary>& v) {
    py::list out;
    for (const auto& s : v) out.append(summary_dict(s));
    return out;
}

py::dict run_dict(const RunRecord& r) {
    py::dict d;
    d["method"] = to_string(r.method);
    d["seed"] = r.seed;
    d["iterations"] = r.iterations;
    d["best_so_far"] = r.best_so_far;
    d["budget"] = r.budget;
    d["evaluations_used"] = r.evaluations_used;
    d["protocol_extension"] = r.protocol_extension;
    d["error"] = r.error ? py::cast(*r.error) : py::none();
    py::list weights;
    for (const auto& it : r.trace) weights.append(it.W);
    d["weights"] = weights;
    py::list solutions;
    if (r.ok())
        for (const auto& x : r.solutions()) solutions.append(x);
    d["solutions"] = solutions;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the ARCO-BO core library";
    m.attr("__version__") = ARCO_VERSION;

    // translators run newest first, so the subclass goes last
    const auto& base = py::register_exception<Error>(m, "ArcoError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base);

    // benchmarks
    m.def("benchmarks", [] { return bench::family_ids(); });
    m.def("num_agents", [](const std::string& f) { return bench::num_agents(f); }, py::arg("family"));
    m.def("evaluate", [](const std::string& f, int agent, const Vector& x) { return bench::evaluate(f, agent, x); },
          py::arg("family"), py::arg("agent"), py::arg("x"));
    m.def(
        "reference_optimum",
        [](const std::string& f, int agent) {
            const auto r = bench::reference_optimum(f, agent);
            return std::make_pair(r.value, r.tolerance);
        },
        py::arg("family"), py::arg("agent"));
    m.def("function_range", &bench::function_range, py::arg("family"), py::arg("agent"));
    m.def("set_range_cache_path", &bench::set_range_cache_path, py::arg("path"));

    // sampling
    m.def(
        "lhs",
        [](int n, const Vector& lower, const Vector& upper, std::uint64_t seed) {
            SeededRng rng(seed, {StreamPurpose::test, 0, 0});
            return lhs(n, Bounds(lower, upper), rng);
        },
        py::arg("n"), py::arg("lower"), py::arg("upper"), py::arg("seed") = 0);

    // surrogate and acquisition
    py::class_<GpModel>(m, "GpModel")
        .def_static(
            "fit",
            [](const Matrix& X, const Vector& y, const Vector& lower, const Vector& upper, double lengthscale,
               double signal_variance, double noise_variance) {
                return GpModel::fit(to_dataset(X, y), Bounds(lower, upper),
                                    KernelParams{lengthscale, signal_variance, noise_variance});
            },
            py::arg("X"), py::arg("y"), py::arg("lower"), py::arg("upper"), py::arg("lengthscale") = 0.5,
            py::arg("signal_variance") = 1.0, py::arg("noise_variance") = 1e-6)
        .def(
            "predict",
            [](const GpModel& g, const Matrix& X) {
                Vector mean, var;
                g.predict(X, mean, var);
                return std::make_pair(mean, var);
            },
            py::arg("X"), "Mean in original units and standardized variance, one row per point.")
        .def_property_readonly("jitter", &GpModel::jitter)
        .def_property_readonly("y_mean", &GpModel::y_mean)
        .def_property_readonly("y_std", &GpModel::y_std);
    m.def("ei", &ei, py::arg("mean"), py::arg("std"), py::arg("f_star"));

    // consensus
    m.def(
        "sinkhorn",
        [](const ColMatrix& M, double tol, int max_iter) {
            auto r = sinkhorn(M, tol, max_iter);
            return std::make_pair(r.matrix, r.iterations);
        },
        py::arg("M"), py::arg("tol") = 1e-9, py::arg("max_iter") = 1000);
    m.def("build_w", &build_w, py::arg("S"), py::arg("t"), py::arg("T"), py::arg("alpha") = 3.0,
          py::arg("tol") = 1e-9, py::arg("max_iter") = 1000);
    m.def("baseline_w", &baseline_w, py::arg("t"), py::arg("T"), py::arg("K"));
    m.def("gamma_decay", &gamma_decay, py::arg("t"), py::arg("T"), py::arg("alpha") = 3.0);
    m.def("pearson_similarity", &pearson_similarity, py::arg("a"), py::arg("b"));

    // experiments
    m.def("normalize_config", [](const std::string& text) { return serialize(parse_config(text)); },
          py::arg("config_json"));
    m.def("config_hash", [](const std::string& text) { return config_hash(parse_config(text)); },
          py::arg("config_json"));
    m.def(
        "run_replicate",
        [](const std::string& text, const std::string& method, std::uint64_t seed) {
            const auto exp = validate_experiment(parse_config(text));
            RunRecord r;
            {
                py::gil_scoped_release release;
                r = run_method(exp, method_from_string(method), seed);
            }
            return run_dict(r);
        },
        py::arg("config_json"), py::arg("method"), py::arg("seed"));
    m.def(
        "run_suite",
        [](const std::string& text, std::optional<std::filesystem::path> out_dir, int threads) {
            const auto exp = validate_experiment(parse_config(text));
            SuiteResult res;
            {
                py::gil_scoped_release release;
                res = run_suite(exp, threads);
                if (out_dir) write_suite(res, *out_dir);
            }
            return summary_list(res.summary);
        },
        py::arg("config_json"), py::arg("out_dir") = py::none(), py::arg("threads") = 1);
    m.def("recompute_metrics", [](const std::filesystem::path& dir) { return summary_list(recompute_metrics(dir)); },
          py::arg("run_dir"));
}

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kakeya/besicovitch.hpp"
#include "kakeya/bounds.hpp"
#include "kakeya/filterbank.hpp"
#include "kakeya/json_io.hpp"
#include "kakeya/multiplier.hpp"
#include "kakeya/spherical.hpp"
#include "kakeya/tube.hpp"

namespace py = pybind11;
using namespace kakeya;

namespace {

py::dict report_to_dict(const BoundReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["value"] = r.value;
    d["params"] = r.params;
    d["provenance"] = r.provenance;
    d["error_estimate"] = r.error_estimate;
    d["flags"] = r.flags;
    d["verdict"] = r.verdict;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kakeya_lab, m) {
    m.doc() = "tube-compression and multiplier-norm laboratory (C++ core)";

    py::class_<Tube>(m, "Tube")
        .def_readonly("d", &Tube::d)
        .def_readonly("origin", &Tube::origin)
        .def_readonly("direction", &Tube::direction)
        .def_readonly("delta", &Tube::delta)
        .def_readonly("window", &Tube::window)
        .def_readonly("length", &Tube::length)
        .def("measure", &Tube::measure);

    py::class_<TubeFamily>(m, "TubeFamily")
        .def_readonly("tubes", &TubeFamily::tubes)
        .def_readonly("delta", &TubeFamily::delta)
        .def_readonly("d", &TubeFamily::d)
        .def_readonly("window", &TubeFamily::window)
        .def("__len__", [](const TubeFamily& f) { return f.size(); })
        .def("sum_measures", &TubeFamily::sum_measures)
        .def("to_json", [](const TubeFamily& f) { return family_to_json(f).dump(); });

    m.def("family_from_json",
          [](const std::string& text) { return family_from_json(Json::parse(text)); });

    m.def(
        "make_tube",
        [](int d, std::vector<double> origin, std::vector<double> direction, double delta,
           std::pair<double, double> window) {
            return make_tube(d, std::move(origin), std::move(direction), delta, window);
        },
        py::arg("d"), py::arg("origin"), py::arg("direction"), py::arg("delta"),
        py::arg("window") = std::pair<double, double>{2.0, 3.0});
    m.def("translate_tube", &translate_tube);
    m.def("tubes_disjoint", &tubes_disjoint);
    m.def("disjointness_violations", &disjointness_violations);
    m.def(
        "union_measure",
        [](const TubeFamily& f, double resolution) {
            auto u = union_measure(f, resolution);
            return std::make_pair(u.value, u.error_bound);
        },
        py::arg("family"), py::arg("resolution"));
    m.def(
        "compression_ratio",
        [](const TubeFamily& f, double resolution, bool enforce) {
            return report_to_dict(compression_ratio(f, resolution, enforce));
        },
        py::arg("family"), py::arg("resolution"), py::arg("enforce_disjoint") = false);
    m.def(
        "relaxed_score",
        [](const TubeFamily& f, double resolution) {
            return report_to_dict(relaxed_score(f, resolution));
        },
        py::arg("family"), py::arg("resolution"));

    m.def("keich_family", &keich_family, py::arg("k"),
          py::arg("window") = std::pair<double, double>{2.0, 3.0});
    m.def("separated_direction_family", &separated_direction_family, py::arg("delta"));
    m.def(
        "optimize_family",
        [](int n, double delta, std::uint64_t seed, int iters) {
            return optimize_family(n, delta, seed, iters);
        },
        py::arg("n"), py::arg("delta"), py::arg("seed"), py::arg("iters"));
    m.def(
        "f_curve",
        [](const std::vector<int>& ks, const std::string& mode) {
            CurveMode cm = mode == "keich"      ? CurveMode::Keich
                           : mode == "optimized" ? CurveMode::Optimized
                                                 : CurveMode::Separated;
            auto c = f_curve(ks, cm);
            py::list pts;
            for (const auto& p : c.points) {
                py::dict d;
                d["k"] = p.k;
                d["delta"] = p.delta;
                d["epsilon"] = p.epsilon;
                d["err"] = p.error_bound;
                d["certificate"] = p.certificate;
                pts.append(d);
            }
            py::dict out;
            out["points"] = pts;
            out["fit_C"] = c.fit_C;
            out["fit_done"] = c.fit_done;
            return out;
        },
        py::arg("ks"), py::arg("mode") = "keich");

    // Littlewood-Paley
    py::class_<FilterBank>(m, "FilterBank")
        .def(py::init<int>())
        .def("levels", &FilterBank::levels)
        .def("w0", &FilterBank::w0)
        .def("w", &FilterBank::w)
        .def("wn", &FilterBank::wn)
        .def("partition", &FilterBank::partition);

    m.def(
        "lp_sup_norms",
        [](const std::vector<double>& values, double start, double spacing, int levels) {
            SampledFunction f;
            f.start = start;
            f.spacing = spacing;
            f.values.assign(values.begin(), values.end());
            FilterBank bank(levels);
            std::vector<double> norms;
            for (const auto& lv : lp_coefficients(f, bank)) norms.push_back(lv.max_abs());
            return norms;
        },
        py::arg("values"), py::arg("start"), py::arg("spacing"), py::arg("levels"));
    m.def(
        "zygmund_modulus",
        [](const std::vector<double>& values, double start, double spacing, double h) {
            SampledFunction f;
            f.start = start;
            f.spacing = spacing;
            f.values.assign(values.begin(), values.end());
            return zygmund_modulus(f, h);
        },
        py::arg("values"), py::arg("start"), py::arg("spacing"), py::arg("h"));
    m.def("modulus_from_lp", &modulus_from_lp, py::arg("sup_norms"), py::arg("h"), py::arg("C"));
    m.def(
        "classify_b0",
        [](const std::function<double(double)>& f, double support_radius, int levels) {
            FilterBank bank(levels);
            return report_to_dict(classify_b0_adaptive(f, support_radius, bank));
        },
        py::arg("f"), py::arg("support_radius"), py::arg("levels") = 12);

    // bound formulas
    py::class_<bounds::FModel>(m, "FModel")
        .def_static("log_power", &bounds::FModel::log_power)
        .def_static("power", &bounds::FModel::power)
        .def("__call__", &bounds::FModel::operator());
    m.def("infimum_bound", [](double a, double b, double A) {
        auto r = bounds::infimum_bound(a, b, A);
        return py::make_tuple(r.closed_form, r.grid_min, r.argmin);
    });
    m.def("infimum_bound_log", [](double a, double b, double A) {
        auto r = bounds::infimum_bound_log(a, b, A);
        return py::make_tuple(r.value, r.argmin);
    });
    m.def(
        "wn_bound_euclidean",
        [](const bounds::FModel& fd, double p, int n, double norm_T, double C_d) {
            return report_to_dict(bounds::wn_bound_euclidean(fd, p, n, norm_T, C_d));
        },
        py::arg("fd"), py::arg("p"), py::arg("n"), py::arg("norm_T") = 1.0, py::arg("C_d") = 1.0);
    m.def(
        "wn_bound_spherical",
        [](const bounds::FModel& fd, double p, int n, double theta, double norm_MS, double C_d) {
            return report_to_dict(bounds::wn_bound_spherical(fd, p, n, theta, norm_MS, C_d));
        },
        py::arg("fd"), py::arg("p"), py::arg("n"), py::arg("theta"), py::arg("norm_MS") = 1.0,
        py::arg("C_d") = 1.0);
    m.def(
        "modulus_bound_euclidean",
        [](const bounds::FModel& fd, double p, double gap, double norm_T) {
            return report_to_dict(bounds::modulus_bound_euclidean(fd, p, gap, norm_T));
        },
        py::arg("fd"), py::arg("p"), py::arg("gap"), py::arg("norm_T") = 1.0);
    m.def(
        "integrability_test",
        [](const bounds::FModel& fd, double p, bool loglog) {
            return report_to_dict(bounds::integrability_test(
                fd, p, loglog ? bounds::Weight::LogLog : bounds::Weight::None));
        },
        py::arg("fd"), py::arg("p"), py::arg("loglog") = false);

    // multiplier lab
    m.def(
        "certify_lower_bound",
        [](const TubeFamily& fam, const std::function<double(double)>& profile, double p, double r,
           std::size_t grid_n) {
            multiplier::CertifyOptions opt;
            opt.grid_n = grid_n;
            return report_to_dict(multiplier::certify_lower_bound(fam, profile, p, r, opt));
        },
        py::arg("family"), py::arg("profile"), py::arg("p"), py::arg("r"),
        py::arg("grid_n") = 1024);
    m.def(
        "change_of_variable_check",
        [](const std::function<double(double)>& m_prof, double r1, double r2) {
            auto F = SampledFunction::sample_real(
                [](double x) { return std::exp(-x * x / 8.0) * std::cos(1.7 * x); }, -40.0, 0.02,
                4001);
            auto G = SampledFunction::sample_real(
                [](double y) { return std::exp(-y * y / 2.0); }, -12.0, 0.02, 1201);
            return report_to_dict(multiplier::change_of_variable_check(F, G, m_prof, r1, r2));
        },
        py::arg("m"), py::arg("r1"), py::arg("r2"));

    // spherical lab
    py::class_<spherical::SphereSample>(m, "SphereSample")
        .def_static("fibonacci", &spherical::SphereSample::fibonacci)
        .def_static("random", &spherical::SphereSample::random)
        .def("__len__", [](const spherical::SphereSample& s) { return s.size(); })
        .def_property_readonly("gram",
                               [](const spherical::SphereSample& s) { return s.gram; });
    m.def("schatten_norm", &spherical::schatten_norm, py::arg("M"), py::arg("p"));
    m.def(
        "schur_apply",
        [](const std::function<double(double)>& prof, const spherical::SphereSample& pts,
           const spherical::Matrix& A, double diag) {
            return spherical::schur_apply(prof, pts, A, diag);
        },
        py::arg("m"), py::arg("points"), py::arg("A"), py::arg("diag_value") = 0.0);
    m.def(
        "msp_lower_bound",
        [](const std::function<double(double)>& prof, const spherical::SphereSample& pts, double p,
           int trials, std::uint64_t seed, double diag) {
            return report_to_dict(spherical::msp_lower_bound(prof, pts, p, trials, seed, diag));
        },
        py::arg("m"), py::arg("points"), py::arg("p"), py::arg("trials"), py::arg("seed"),
        py::arg("diag_value") = 0.0);
    m.def(
        "psi_distortion_check",
        [](double r, double theta, int d, int samples, double radius, std::uint64_t seed) {
            spherical::ReflectedPoleConfig cfg;
            cfg.r = r;
            cfg.theta = theta;
            cfg.d = d;
            return report_to_dict(spherical::psi_distortion_check(cfg, samples, radius, seed));
        },
        py::arg("r"), py::arg("theta"), py::arg("d"), py::arg("samples"), py::arg("radius"),
        py::arg("seed"));
    m.def(
        "spherical_lp_sup_norms",
        [](const std::function<double(double)>& prof, int levels) {
            FilterBank bank(levels);
            std::vector<double> norms;
            for (const auto& lv : spherical::spherical_lp(prof, bank)) norms.push_back(lv.max_abs());
            return norms;
        },
        py::arg("m"), py::arg("levels") = 8);
}

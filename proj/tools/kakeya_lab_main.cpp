// kakeya-lab: tube constructions, Littlewood-Paley analysis, bound evaluators,
// multiplier certification, and spherical Schur numerics from one binary.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "kakeya/besicovitch.hpp"
#include "kakeya/bounds.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/filterbank.hpp"
#include "kakeya/json_io.hpp"
#include "kakeya/multiplier.hpp"
#include "kakeya/spherical.hpp"
#include "kakeya/tube.hpp"

namespace {

using kakeya::Json;

struct RunConfig {
    Json j = Json::object();
    void set(const std::string& k, const Json& v) { j[k] = v; }
};

Json with_config(Json doc, const RunConfig& cfg) {
    doc["config"] = cfg.j;
    return doc;
}

void emit(const std::string& out_path, const Json& doc) {
    if (out_path.empty())
        std::cout << doc.dump(2) << std::endl;
    else
        kakeya::write_json_file(out_path, doc);
}

std::vector<int> parse_k_range(const std::string& spec) {
    std::vector<int> ks;
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(spec.substr(0, dots));
        int hi = std::stoi(spec.substr(dots + 2));
        for (int k = lo; k <= hi; ++k) ks.push_back(k);
        return ks;
    }
    std::istringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) ks.push_back(std::stoi(cell));
    return ks;
}

kakeya::bounds::FModel parse_fd(const std::string& spec) {
    using kakeya::bounds::FModel;
    if (spec.rfind("log:", 0) == 0) return FModel::log_power(std::stod(spec.substr(4)));
    if (spec.rfind("pow:", 0) == 0) return FModel::power(std::stod(spec.substr(4)));
    if (spec.rfind("power:", 0) == 0) return FModel::power(std::stod(spec.substr(6)));
    if (spec.rfind("file:", 0) == 0)
        return FModel::tabulated(kakeya::read_curve_csv(spec.substr(5)));
    throw CLI::ValidationError("--fd", "expected log:A, pow:E, or file:curve.csv");
}

std::function<double(double)> parse_profile(const std::string& spec) {
    if (spec == "ball") return [](double s) { return s <= 1.0 ? 1.0 : 0.0; };
    if (spec == "step") return [](double s) { return s >= 1.0 ? 1.0 : 0.0; };
    if (spec == "one") return [](double) { return 1.0; };
    if (spec == "t") return [](double s) { return s; };
    if (spec.rfind("file:", 0) == 0) {
        auto samples = std::make_shared<kakeya::SampledFunction>(
            kakeya::read_sampled_csv(spec.substr(5)));
        return [samples](double s) { return samples->at(s).real(); };
    }
    throw CLI::ValidationError("--symbol/-m", "expected ball, step, one, t, or file:m.csv");
}

std::pair<double, double> parse_window(const std::string& spec) {
    auto comma = spec.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--window", "expected a,b");
    return {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tube-compression and multiplier-norm laboratory"};
    app.require_subcommand(1);

    int exit_code = 0;
    RunConfig cfg;

    // ---------------------------------------------------------------- tubes
    auto* tubes = app.add_subcommand("tubes", "tube family constructions and scores");
    tubes->require_subcommand(1);

    {
        auto* keich = tubes->add_subcommand("keich", "Perron-tree family");
        auto k = std::make_shared<int>(6);
        auto window = std::make_shared<std::string>("2,3");
        auto out = std::make_shared<std::string>();
        keich->add_option("--k", *k, "bisection levels (2..14)")->required();
        keich->add_option("--window", *window, "translate window a,b");
        keich->add_option("--out", *out, "output family JSON")->required();
        keich->callback([=, &cfg]() {
            cfg.set("subcommand", "tubes keich");
            cfg.set("k", *k);
            cfg.set("window", *window);
            auto fam = kakeya::keich_family(*k, parse_window(*window));
            emit(*out, with_config(kakeya::family_to_json(fam), cfg));
        });
    }
    {
        auto* sep = tubes->add_subcommand("separated", "maximal separated-direction family");
        auto delta = std::make_shared<double>(0.05);
        auto out = std::make_shared<std::string>();
        sep->add_option("--delta", *delta, "tube width parameter")->required();
        sep->add_option("--out", *out)->required();
        sep->callback([=, &cfg]() {
            cfg.set("subcommand", "tubes separated");
            cfg.set("delta", *delta);
            auto fam = kakeya::separated_direction_family(*delta);
            emit(*out, with_config(kakeya::family_to_json(fam), cfg));
        });
    }
    {
        auto* opt = tubes->add_subcommand("optimize", "annealed family search");
        auto n = std::make_shared<int>(8);
        auto delta = std::make_shared<double>(0.02);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto iters = std::make_shared<int>(2000);
        auto out = std::make_shared<std::string>();
        opt->add_option("--n", *n)->required();
        opt->add_option("--delta", *delta)->required();
        opt->add_option("--seed", *seed);
        opt->add_option("--iters", *iters);
        opt->add_option("--out", *out)->required();
        opt->callback([=, &cfg]() {
            cfg.set("subcommand", "tubes optimize");
            cfg.set("n", *n);
            cfg.set("delta", *delta);
            cfg.set("seed", *seed);
            cfg.set("iters", *iters);
            auto fam = kakeya::optimize_family(*n, *delta, *seed, *iters);
            emit(*out, with_config(kakeya::family_to_json(fam), cfg));
        });
    }
    {
        auto* fc = tubes->add_subcommand("fcurve", "compression curve over k");
        auto ks = std::make_shared<std::string>("4..9");
        auto mode = std::make_shared<std::string>("keich");
        auto resfac = std::make_shared<double>(8.0);
        auto out = std::make_shared<std::string>();
        auto json_out = std::make_shared<std::string>();
        fc->add_option("--ks", *ks, "range like 4..9 or list 4,6,8");
        fc->add_option("--mode", *mode)->check(CLI::IsMember({"keich", "optimized", "separated"}));
        fc->add_option("--resolution", *resfac, "raster cells per delta");
        fc->add_option("--out", *out, "curve CSV path")->required();
        fc->add_option("--json", *json_out, "also write curve JSON");
        fc->callback([=, &cfg]() {
            cfg.set("subcommand", "tubes fcurve");
            cfg.set("ks", *ks);
            cfg.set("mode", *mode);
            cfg.set("resolution", *resfac);
            kakeya::CurveMode m = *mode == "keich"      ? kakeya::CurveMode::Keich
                                  : *mode == "optimized" ? kakeya::CurveMode::Optimized
                                                         : kakeya::CurveMode::Separated;
            kakeya::FCurveOptions fopt;
            fopt.resolution_factor = *resfac;
            auto curve = kakeya::f_curve(parse_k_range(*ks), m, fopt);
            kakeya::write_curve_csv(*out, curve);
            if (!json_out->empty())
                kakeya::write_json_file(*json_out, with_config(kakeya::curve_to_json(curve), cfg));
        });
    }
    {
        auto* cmp = tubes->add_subcommand("compress", "compression ratio of a family");
        auto fam_path = std::make_shared<std::string>();
        auto resolution = std::make_shared<double>(0.0);
        auto enforce = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        cmp->add_option("--family", *fam_path)->required();
        cmp->add_option("--resolution", *resolution, "raster cell size (default delta/8)");
        cmp->add_flag("--enforce-disjoint", *enforce);
        cmp->add_option("--out", *out);
        cmp->callback([=, &cfg]() {
            cfg.set("subcommand", "tubes compress");
            cfg.set("family", *fam_path);
            cfg.set("enforce_disjoint", *enforce);
            auto fam = kakeya::family_from_json(kakeya::read_json_file(*fam_path));
            double h = *resolution > 0.0 ? *resolution : fam.delta / 8.0;
            cfg.set("resolution", h);
            auto rep = kakeya::compression_ratio(fam, h, *enforce);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }
    {
        auto* rel = tubes->add_subcommand("relaxed", "relaxed compression score");
        auto fam_path = std::make_shared<std::string>();
        auto resolution = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        rel->add_option("--family", *fam_path)->required();
        rel->add_option("--resolution", *resolution);
        rel->add_option("--out", *out);
        rel->callback([=, &cfg]() {
            cfg.set("subcommand", "tubes relaxed");
            cfg.set("family", *fam_path);
            auto fam = kakeya::family_from_json(kakeya::read_json_file(*fam_path));
            double h = *resolution > 0.0 ? *resolution : fam.delta / 8.0;
            cfg.set("resolution", h);
            auto rep = kakeya::relaxed_score(fam, h);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }

    // ------------------------------------------------------------------- lp
    auto* lp = app.add_subcommand("lp", "Littlewood-Paley analysis");
    lp->require_subcommand(1);
    {
        auto* coeffs = lp->add_subcommand("coeffs", "per-level convolutions");
        auto in = std::make_shared<std::string>();
        auto levels = std::make_shared<int>(8);
        auto out = std::make_shared<std::string>();
        coeffs->add_option("--in", *in, "samples CSV (x, re[, im])")->required();
        coeffs->add_option("--levels", *levels);
        coeffs->add_option("--out", *out, "sup-norm CSV")->required();
        coeffs->callback([=, &cfg]() {
            cfg.set("subcommand", "lp coeffs");
            cfg.set("in", *in);
            cfg.set("levels", *levels);
            auto f = kakeya::read_sampled_csv(*in);
            kakeya::FilterBank bank(*levels);
            auto lv = kakeya::lp_coefficients(f, bank);
            std::ofstream os(*out);
            os << "n,sup_norm\n";
            os.precision(17);
            for (std::size_t n = 0; n < lv.size(); ++n) os << n << ',' << lv[n].max_abs() << '\n';
        });
    }
    {
        auto* cls = lp->add_subcommand("classify", "trend classification of level norms");
        auto in = std::make_shared<std::string>();
        auto levels = std::make_shared<int>(12);
        auto out = std::make_shared<std::string>();
        cls->add_option("--in", *in)->required();
        cls->add_option("--levels", *levels);
        cls->add_option("--out", *out);
        cls->callback([=, &cfg]() {
            cfg.set("subcommand", "lp classify");
            cfg.set("in", *in);
            cfg.set("levels", *levels);
            auto f = kakeya::read_sampled_csv(*in);
            kakeya::FilterBank bank(*levels);
            auto rep = kakeya::classify_b0(f, bank);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }
    {
        auto* zyg = lp->add_subcommand("zygmund", "second-difference modulus");
        zyg->set_help_flag("--help", "print help");  // frees -h/--h for the step size
        auto in = std::make_shared<std::string>();
        auto h = std::make_shared<double>(0.01);
        zyg->add_option("--in", *in)->required();
        zyg->add_option("--h", *h)->required();
        zyg->callback([=, &cfg]() {
            cfg.set("subcommand", "lp zygmund");
            auto F = kakeya::read_sampled_csv(*in);
            Json doc;
            doc["modulus"] = kakeya::zygmund_modulus(F, *h);
            doc["h"] = *h;
            emit("", with_config(doc, cfg));
        });
    }

    // --------------------------------------------------------------- bounds
    auto* bnds = app.add_subcommand("bounds", "closed-form bound evaluators");
    bnds->require_subcommand(1);
    {
        auto* wn = bnds->add_subcommand("wn", "level bounds over n");
        auto fd = std::make_shared<std::string>("log:1");
        auto p = std::make_shared<double>(4.0);
        auto nspec = std::make_shared<std::string>("1..20");
        auto domain = std::make_shared<std::string>("euclid");
        auto theta = std::make_shared<double>(M_PI / 2);
        auto out = std::make_shared<std::string>();
        auto csv = std::make_shared<std::string>();
        wn->add_option("--fd", *fd)->required();
        wn->add_option("--p", *p)->required();
        wn->add_option("--n", *nspec);
        wn->add_option("--domain", *domain)->check(CLI::IsMember({"euclid", "sphere"}));
        wn->add_option("--theta", *theta);
        wn->add_option("--out", *out);
        wn->add_option("--csv", *csv, "long-format sweep CSV");
        wn->callback([=, &cfg]() {
            cfg.set("subcommand", "bounds wn");
            cfg.set("fd", *fd);
            cfg.set("p", *p);
            cfg.set("n", *nspec);
            cfg.set("domain", *domain);
            auto model = parse_fd(*fd);
            Json arr = Json::array();
            std::ofstream cs;
            if (!csv->empty()) {
                cs.open(*csv);
                cs << "n,value,argmin_delta\n";
                cs.precision(17);
            }
            for (int n : parse_k_range(*nspec)) {
                auto rep = *domain == "euclid"
                               ? kakeya::bounds::wn_bound_euclidean(model, *p, n)
                               : kakeya::bounds::wn_bound_spherical(model, *p, n, *theta);
                arr.push_back(kakeya::report_to_json(rep));
                if (cs.is_open())
                    cs << n << ',' << rep.value << ',' << rep.param("argmin_delta") << '\n';
            }
            Json doc;
            doc["reports"] = std::move(arr);
            emit(*out, with_config(doc, cfg));
        });
    }
    {
        auto* mod = bnds->add_subcommand("modulus", "modulus-of-continuity bounds");
        auto fd = std::make_shared<std::string>("log:1");
        auto p = std::make_shared<double>(4.0);
        auto gap = std::make_shared<double>(0.0);
        auto domain = std::make_shared<std::string>("euclid");
        auto s = std::make_shared<double>(0.0);
        auto t = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        mod->add_option("--fd", *fd)->required();
        mod->add_option("--p", *p)->required();
        mod->add_option("--gap", *gap);
        mod->add_option("--domain", *domain)->check(CLI::IsMember({"euclid", "sphere"}));
        mod->add_option("--s", *s);
        mod->add_option("--t", *t);
        mod->add_option("--out", *out);
        mod->callback([=, &cfg]() {
            cfg.set("subcommand", "bounds modulus");
            cfg.set("fd", *fd);
            cfg.set("p", *p);
            auto model = parse_fd(*fd);
            kakeya::BoundReport rep;
            if (*domain == "euclid") {
                cfg.set("gap", *gap);
                rep = kakeya::bounds::modulus_bound_euclidean(model, *p, *gap);
            } else {
                cfg.set("s", *s);
                cfg.set("t", *t);
                rep = kakeya::bounds::modulus_bound_spherical(model, *p, *s, *t);
            }
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }
    {
        auto* integ = bnds->add_subcommand("integrable", "tail integrability verdict");
        auto fd = std::make_shared<std::string>("log:1");
        auto p = std::make_shared<double>(4.0);
        auto weight = std::make_shared<std::string>("none");
        auto out = std::make_shared<std::string>();
        integ->add_option("--fd", *fd)->required();
        integ->add_option("--p", *p)->required();
        integ->add_option("--weight", *weight)->check(CLI::IsMember({"none", "loglog"}));
        integ->add_option("--out", *out);
        integ->callback([=, &cfg]() {
            cfg.set("subcommand", "bounds integrable");
            cfg.set("fd", *fd);
            cfg.set("p", *p);
            cfg.set("weight", *weight);
            auto rep = kakeya::bounds::integrability_test(
                parse_fd(*fd), *p,
                *weight == "loglog" ? kakeya::bounds::Weight::LogLog
                                    : kakeya::bounds::Weight::None);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }

    // ----------------------------------------------------------- multiplier
    auto* mult = app.add_subcommand("multiplier", "FFT multiplier certification");
    mult->require_subcommand(1);
    {
        auto* cert = mult->add_subcommand("certify", "lower-bound chain on a family");
        auto fam_path = std::make_shared<std::string>();
        auto symbol = std::make_shared<std::string>("ball");
        auto p = std::make_shared<double>(4.0 / 3.0);
        auto r = std::make_shared<double>(4096.0);
        auto grid = std::make_shared<std::size_t>(2048);
        auto out = std::make_shared<std::string>();
        cert->add_option("--family", *fam_path)->required();
        cert->add_option("--symbol", *symbol);
        cert->add_option("--p", *p);
        cert->add_option("--r", *r);
        cert->add_option("--grid", *grid);
        cert->add_option("--out", *out);
        cert->callback([=, &cfg]() {
            cfg.set("subcommand", "multiplier certify");
            cfg.set("family", *fam_path);
            cfg.set("symbol", *symbol);
            cfg.set("r", *r);
            cfg.set("grid", *grid);
            auto fam = kakeya::family_from_json(kakeya::read_json_file(*fam_path));
            double pp = *p;
            if (pp > 2.0) pp = pp / (pp - 1.0);  // conjugate-exponent reduction
            cfg.set("p", pp);
            kakeya::multiplier::CertifyOptions opt;
            opt.grid_n = *grid;
            auto rep = kakeya::multiplier::certify_lower_bound(fam, parse_profile(*symbol), pp,
                                                               *r, opt);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }
    {
        auto* cov = mult->add_subcommand("cov-check", "change-of-variable budget check");
        auto r1 = std::make_shared<double>(1e4);
        auto r2 = std::make_shared<double>(1e2);
        auto m = std::make_shared<std::string>("one");
        auto out = std::make_shared<std::string>();
        cov->add_option("--r1", *r1)->required();
        cov->add_option("--r2", *r2)->required();
        cov->add_option("--m", *m);
        cov->add_option("--out", *out);
        cov->callback([=, &cfg]() {
            cfg.set("subcommand", "multiplier cov-check");
            cfg.set("r1", *r1);
            cfg.set("r2", *r2);
            cfg.set("m", *m);
            auto F = kakeya::SampledFunction::sample_real(
                [](double x) { return std::exp(-x * x / 8.0) * std::cos(1.7 * x); }, -40.0, 0.02,
                4001);
            auto G = kakeya::SampledFunction::sample_real(
                [](double y) { return std::exp(-y * y / 2.0); }, -12.0, 0.02, 1201);
            auto rep =
                kakeya::multiplier::change_of_variable_check(F, G, parse_profile(*m), *r1, *r2);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }

    // --------------------------------------------------------------- sphere
    auto* sphere = app.add_subcommand("sphere", "spherical Schur numerics");
    sphere->require_subcommand(1);
    {
        auto* dist = sphere->add_subcommand("distortion", "stereographic distortion constants");
        auto r = std::make_shared<double>(1e4);
        auto theta = std::make_shared<double>(M_PI / 2);
        auto samples = std::make_shared<int>(10000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto radius = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        dist->add_option("--r", *r)->required();
        dist->add_option("--theta", *theta)->required();
        dist->add_option("--samples", *samples);
        dist->add_option("--seed", *seed);
        dist->add_option("--radius", *radius, "sampling radius (default r/20)");
        dist->add_option("--out", *out);
        dist->callback([=, &cfg]() {
            cfg.set("subcommand", "sphere distortion");
            cfg.set("r", *r);
            cfg.set("theta", *theta);
            cfg.set("samples", *samples);
            cfg.set("seed", *seed);
            kakeya::spherical::ReflectedPoleConfig pc;
            pc.r = *r;
            pc.theta = *theta;
            pc.d = 2;
            double rad = *radius > 0.0 ? *radius : *r / 20.0;
            cfg.set("radius", rad);
            auto rep = kakeya::spherical::psi_distortion_check(pc, *samples, rad, *seed);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }
    {
        auto* msp = sphere->add_subcommand("msp", "Schur multiplier norm lower bound");
        auto m = std::make_shared<std::string>("t");
        auto points = std::make_shared<std::size_t>(200);
        auto p = std::make_shared<double>(4.0);
        auto trials = std::make_shared<int>(64);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto diag = std::make_shared<double>(0.0);
        auto out = std::make_shared<std::string>();
        msp->add_option("--m", *m);
        msp->add_option("--points", *points);
        msp->add_option("--p", *p);
        msp->add_option("--trials", *trials);
        msp->add_option("--seed", *seed);
        msp->add_option("--diag", *diag, "diagonal symbol value (domain excludes 1)");
        msp->add_option("--out", *out);
        msp->callback([=, &cfg]() {
            cfg.set("subcommand", "sphere msp");
            cfg.set("m", *m);
            cfg.set("points", *points);
            cfg.set("p", *p);
            cfg.set("trials", *trials);
            cfg.set("seed", *seed);
            cfg.set("diag", *diag);
            auto pts = kakeya::spherical::SphereSample::fibonacci(*points);
            auto rep = kakeya::spherical::msp_lower_bound(parse_profile(*m), pts, *p, *trials,
                                                          *seed, *diag);
            emit(*out, with_config(kakeya::report_to_json(rep), cfg));
        });
    }
    {
        auto* slp = sphere->add_subcommand("lp", "levels of m(cos theta)");
        auto m = std::make_shared<std::string>("t");
        auto levels = std::make_shared<int>(8);
        auto out = std::make_shared<std::string>();
        slp->add_option("--m", *m);
        slp->add_option("--levels", *levels);
        slp->add_option("--out", *out, "sup-norm CSV")->required();
        slp->callback([=, &cfg]() {
            cfg.set("subcommand", "sphere lp");
            cfg.set("m", *m);
            cfg.set("levels", *levels);
            kakeya::FilterBank bank(*levels);
            auto lv = kakeya::spherical::spherical_lp(parse_profile(*m), bank);
            std::ofstream os(*out);
            os << "n,sup_norm\n";
            os.precision(17);
            for (std::size_t n = 0; n < lv.size(); ++n) os << n << ',' << lv[n].max_abs() << '\n';
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 64;  // usage errors
    } catch (const kakeya::ConstraintViolation& e) {
        std::cerr << "constraint violation: " << e.what() << "\n";
        for (auto [i, j] : e.offending_pairs) std::cerr << "  pair " << i << "," << j << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kakeya/grid2d.hpp"
#include "kakeya/report.hpp"
#include "kakeya/sampled.hpp"
#include "kakeya/tube.hpp"

namespace kakeya::multiplier {

using Profile1D = std::function<double(double)>;

/// Symbol depending on one direction: m(<xi, u>) or the rescaled radial form
/// m(|u + xi / r|).
struct DirectionalSymbol {
    enum class Mode { Directional, ScaledRadial };
    Vec2 u;
    double r = 1.0;
    Profile1D m;
    Mode mode = Mode::ScaledRadial;

    std::complex<double> operator()(Vec2 xi) const;
};

/// Pointwise multiplication of the spectrum by the symbol.
GridField2D apply_multiplier(const GridField2D& f,
                             const std::function<std::complex<double>(Vec2)>& symbol);
GridField2D apply_multiplier(const GridField2D& f, const DirectionalSymbol& sym);

/// Smooth compactly supported profiles for the test-function pipeline:
/// f on (-1,0), g on (a-1, b-1) for the family window (a,b), rho and sigma on
/// (-1,1) with ||rho||_2 = 1.
struct TestProfiles {
    Profile1D f, g, rho, sigma;
    std::pair<double, double> window{2.0, 3.0};

    double norm_f(double p) const;
    double norm_g(double p) const;
    double norm_rho(double p) const;
    double norm_sigma(double p) const;
};

TestProfiles default_profiles(std::pair<double, double> window = {2.0, 3.0});

/// Grid covering the family and its translates with decay margin.
struct GridSpec {
    double extent = 0.0;
    std::size_t n = 0;
    Vec2 origin{0.0, 0.0};
};

GridSpec default_grid_spec(const TubeFamily& family, std::size_t n, double margin = 4.0);

struct TestFunctionPair {
    GridField2D fj;  // supported in R_j
    GridField2D gj;  // supported in the translate
    int index = 0;
};

/// f_j = delta^{-(d-1)/p} f(<x,v_j> - a_j) rho((<x,v_j^perp> - b_j)/delta),
/// g_j likewise with the dual-exponent prefactor on the translate.
std::vector<TestFunctionPair> build_test_functions(const TubeFamily& family, double p,
                                                   const TestProfiles& profiles,
                                                   const GridSpec& grid);

/// Pointwise l2 aggregation (sum of |field|^2)^{1/2}.
GridField2D square_function(const std::vector<GridField2D>& fields);

struct PairingResult {
    std::vector<std::complex<double>> per_j;
    std::complex<double> mean{0.0, 0.0};
    double spread = 0.0;
};

/// per_j = <T_j f_j, g_j>; the directional symbols must share the scale r and
/// use the tube directions.
PairingResult kakeya_pairing(const std::vector<TestFunctionPair>& pairs,
                             const std::vector<DirectionalSymbol>& syms);

struct CertifyOptions {
    std::size_t grid_n = 2048;
    double raster_resolution_factor = 8.0;
    double margin = 4.0;
};

/// Full lower-bound chain for the radial multiplier with profile m:
/// pairing sum, Cauchy-Schwarz / Hoelder majorants, square-function step, and
/// the Kakeya step from the measured compression ratio. Value is the
/// certified lower bound on the square-function constant, which bounds the
/// L_p -> L_p norm from below.
BoundReport certify_lower_bound(const TubeFamily& family, const Profile1D& m, double p, double r,
                                const CertifyOptions& opt = {});

/// |A - B| against the budget ||(1+y^2) G||_1 (r1/r2^2 ||F'||_1 + ||x^2 F'||_1 / r1)
/// where A couples F and G through m(sqrt((1+x/r1)^2 + y^2/r2^2)) and B is the
/// factored form with m(exp(x/r1)).
BoundReport change_of_variable_check(const SampledFunction& F, const SampledFunction& G,
                                     const Profile1D& m, double r1, double r2);

/// Measured square-function product against C N eps^{1/p-1/2} with the relaxed
/// (almost-disjoint) epsilon; at p = 4/3 the explicit-constant route through
/// the translate overlap count is cross-checked.
BoundReport relaxed_gain_check(const TubeFamily& family, double p, const TestProfiles& profiles,
                               std::size_t grid_n = 512);

}  // namespace kakeya::multiplier

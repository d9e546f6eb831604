#pragma once

#include <functional>

#include "kakeya/besicovitch.hpp"
#include "kakeya/report.hpp"

namespace kakeya::bounds {

/// Model for the compression functional delta -> f_d(delta):
/// |log delta|^-a, delta^e, or a measured curve with fitted-form tail.
struct FModel {
    enum class Form { LogPower, Power, Tabulated };
    Form form = Form::LogPower;
    double exponent = 1.0;
    FCurve curve;

    double operator()(double delta) const;
    double min_tabulated_delta() const;  // smallest measured delta (Tabulated only)

    static FModel log_power(double a);
    static FModel power(double e);
    static FModel tabulated(FCurve c);
};

/// |1/p - 1/2|
double dual_gap(double p);

struct GridMinResult {
    double value = 0.0;
    double argmin = 0.0;
};

/// Minimum of a function convex in log delta over a log-spaced grid with
/// refinement passes around the argmin.
GridMinResult log_grid_min(const std::function<double(double)>& objective, double lo, double hi,
                           int points = 2048, int passes = 4);

struct InfimumBound {
    double closed_form = 0.0;
    double grid_min = 0.0;
    double argmin = 0.0;
};

/// inf_delta delta^alpha + 1/(A delta^beta) <= 2 A^{-alpha/(alpha+beta)}.
InfimumBound infimum_bound(double alpha, double beta, double A);

struct InfimumBoundLog {
    double value = 0.0;
    double argmin = 0.0;
    double prescription_value = 0.0;
    double prescription_delta = 0.0;
};

/// inf_{0<delta<1} |log delta|^-alpha + 1/(A delta^beta), evaluated both at
/// the prescription delta = min(A^{-1/beta} log(1+A)^{alpha/beta}, 1/2) and on
/// the grid; returns the smaller.
InfimumBoundLog infimum_bound_log(double alpha, double beta, double A);

/// C_d ||T|| inf_delta ( fd(delta)^q + 1/(2^n delta^2) ).
BoundReport wn_bound_euclidean(const FModel& fd, double p, int n, double norm_T = 1.0,
                               double C_d = 1.0);

/// ||T|| ( int_0^{gap^{1/4}} fd(delta)^q / delta d delta + gap^{1/4} ).
BoundReport modulus_bound_euclidean(const FModel& fd, double p, double gap, double norm_T = 1.0);

/// C_d ||m||_MS inf_delta ( fd(delta)^q + (delta^2 2^n sin theta)^{-1/3} ).
BoundReport wn_bound_spherical(const FModel& fd, double p, int n, double theta,
                               double norm_MS = 1.0, double C_d = 1.0);

/// int_0^{|s-t|^{1/3}} fd^q/delta + |s-t|^{1/9} (|sin s|^{-1/3} + |sin t|^{-1/3}).
BoundReport modulus_bound_spherical(const FModel& fd, double p, double s, double t);

enum class Weight { None, LogLog };

/// Convergence of int_0 fd(delta)^q w(delta) / delta d delta.
BoundReport integrability_test(const FModel& fd, double p, Weight weight = Weight::None);

/// Holder-type modulus assembled from the wn bounds:
/// sum_{n<=N} min(2^n gap, 1) * inf_delta(fd^q + 2^{-n} delta^{-2}).
double holder_modulus_from_wn(const FModel& fd, double p, double gap, int levels = 64);

/// Adaptive Simpson quadrature (absolute tolerance).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10);

}  // namespace kakeya::bounds

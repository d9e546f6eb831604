#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "kakeya/filterbank.hpp"
#include "kakeya/report.hpp"
#include "kakeya/sampled.hpp"

namespace kakeya::spherical {

using Matrix = Eigen::MatrixXcd;
using Profile1D = std::function<double(double)>;

/// Finite sample of the unit sphere S^d in R^{d+1} with its Gram matrix.
struct SphereSample {
    int d = 2;
    std::vector<Eigen::VectorXd> points;
    Eigen::MatrixXd gram;

    std::size_t size() const { return points.size(); }

    /// Deterministic Fibonacci lattice (d = 2 only).
    static SphereSample fibonacci(std::size_t n);
    /// Uniform random points, rejecting pairs closer than 1e-6 in angle.
    static SphereSample random(std::size_t n, int d, std::uint64_t seed);

    void validate() const;
};

/// Reflected-pole configuration: angle theta, zoom r, dimension d, and the
/// symmetric orthogonal reflection V_theta with V^2 = 1, det = -1.
struct ReflectedPoleConfig {
    double theta = M_PI / 2;
    double r = 1.0;
    int d = 2;

    Eigen::MatrixXd reflection() const;
    void validate() const;
};

/// psi_r(x, y) = r (arccos< (e+x/r)/|.|, V_theta (e-y/r)/|.| > - theta);
/// approximately x_d - y_d for |x|, |y| << r sin(theta).
double psi_r(const ReflectedPoleConfig& cfg, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Sampled distortion constants: K1 bounds |psi - (x_d - y_d)| against
/// (|x|^2 + |y|^2)/(r sin theta), K2 the x_d-derivative deviation against
/// (|x| + |y|)/(r sin theta).
BoundReport psi_distortion_check(const ReflectedPoleConfig& cfg, int samples, double radius,
                                 std::uint64_t seed);

/// l_p norm of the singular values (operator norm for p = inf).
double schatten_norm(const Matrix& M, double p);

/// Entrywise multiplication by m(<xi_i, xi_j>); diagonal entries use the
/// user-supplied value (the symbol's domain is (-1,1)).
Matrix schur_apply(const Profile1D& m, const SphereSample& pts, const Matrix& A,
                   double diag_value = 0.0);

/// ||m . A||_p / ||A||_p for one test matrix.
double schur_ratio(const Profile1D& m, const SphereSample& pts, const Matrix& A, double p,
                   double diag_value = 0.0);

/// Certified lower bound on the finite-sample Schur multiplier norm: max of
/// random-matrix ratios plus an S_p/S_q duality power refinement on the first
/// few candidates. Deterministic given seed and monotone in `trials`.
BoundReport msp_lower_bound(const Profile1D& m, const SphereSample& pts, double p, int trials,
                            std::uint64_t seed, double diag_value = 0.0,
                            Matrix* best_out = nullptr);

/// Reproduces the trial matrix used by msp_lower_bound for a given index.
Matrix msp_trial_matrix(std::size_t n, int index, std::uint64_t seed);

/// W_n * (m o cos) on a 2 pi periodic theta grid, per level.
std::vector<SampledFunction> spherical_lp(const Profile1D& m, const FilterBank& bank,
                                          std::size_t theta_samples = 1 << 14);

}  // namespace kakeya::spherical

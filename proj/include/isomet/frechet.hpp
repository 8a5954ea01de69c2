#pragma once

#include "isomet/geometry.hpp"

#include <span>
#include <vector>

namespace isomet {

struct FrechetEstimate {
    Point mean;
    double variance = 0.0;
    long objective_evaluations = 0;
    bool converged = true;
};

/// Empirical Frechet function (1/n) sum d(X_i, omega)^2.
double frechet_objective(const SpaceHandle& space, std::span<const Point> sample,
                         const Point& omega);

/// Exact or iterative minimizer of the empirical Frechet function.
///
/// Euclidean: arithmetic mean. Circle: exact candidate enumeration (the
/// objective is piecewise quadratic with stationary points at
/// mean + 2*pi*k/n). Bures-Wasserstein: fixed-point iteration
/// S <- S^{-1/2} ((1/n) sum (S^{1/2} X_i S^{1/2})^{1/2})^2 S^{-1/2}
/// from the Euclidean average. Booklet: closed form per branch with the
/// spine clamped at the origin.
///
/// Throws non_unique_mean_error when two distinct candidates tie within
/// 1e-9 relative objective gap. BW non-convergence sets converged = false.
FrechetEstimate frechet_mean(const SpaceHandle& space, std::span<const Point> sample);

/// (1/n) sum d(X_i, mean)^2 for a supplied mean.
double frechet_variance(const SpaceHandle& space, std::span<const Point> sample,
                        const Point& mean);

/// Brute-force minimizer over a caller-supplied grid; ties break to the
/// first grid point. Test oracle.
Point frechet_mean_oracle(const SpaceHandle& space, std::span<const Point> sample,
                          std::span<const Point> grid);

struct BwMeanOptions {
    double tol = 1e-10;
    int max_iter = 1000;
    std::vector<double>* objective_trace = nullptr;  // objective after each update
};

namespace detail {

// Space-specialized kernels shared with the inference hot paths. They work
// on plain arrays so replicate loops avoid Point boxing.

struct CircleMeanResult {
    double mean = 0.0;
    double variance = 0.0;
    int evaluations = 0;
};

CircleMeanResult circle_frechet_mean(std::span<const double> angles, double tie_tol = 1e-9);

struct BookletMeanResult {
    int branch = 1;
    double spine = 0.0;
    Eigen::VectorXd page;
    double variance = 0.0;
    int evaluations = 0;
};

// branches are 1-based; pages is n x (d-1).
BookletMeanResult booklet_frechet_mean(std::span<const int> branches,
                                       std::span<const double> spines,
                                       const Eigen::MatrixXd& pages, int k,
                                       double tie_tol = 1e-9);

struct Bw2MeanResult {
    Eigen::Matrix2d mean;
    double variance = 0.0;
    int iterations = 0;
    bool converged = true;
};

Bw2MeanResult bw2_frechet_mean(std::span<const Eigen::Matrix2d> sample,
                               const BwMeanOptions& opt = {});

double bw2_variance(std::span<const Eigen::Matrix2d> sample, const Eigen::Matrix2d& mean);

}  // namespace detail
}  // namespace isomet

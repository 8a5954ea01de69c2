#pragma once

#include "isomet/inference.hpp"
#include "isomet/sampling.hpp"

#include <string>
#include <vector>

namespace isomet {

enum class Scenario { CircleVM, CircleMixture, BwTangent, BookletModel };

const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

/// Monte Carlo sweep description. The circle scenarios shift the sampling
/// distribution along the circle and test the fixed base mean; the BW
/// scenario recenters the tangent Gaussian along the geodesic from the
/// identity toward bw_direction; the booklet scenario keeps the sampler
/// fixed and moves the tested null along the geodesic toward
/// booklet_direction.
struct SweepConfig {
    Scenario scenario = Scenario::CircleVM;
    std::vector<int> sample_sizes{100};
    std::vector<double> deltas{0.0};
    bool local_rule = false;  // delta_n = local_c * n^{-1/2}
    double local_c = 0.2;
    int datasets = 500;
    int replicates = 1000;
    double alpha = 0.05;
    std::uint64_t master_seed = 0;
    int threads = 1;

    // Scenario parameters. The von Mises center/concentration are exposed
    // because the source figures disagree about them; defaults reproduce the
    // concentrated reading (center pi/2, kappa 1).
    double vm_center = EIGEN_PI / 2;
    double vm_kappa = 1.0;
    double mixture_kappa = 1.0;
};

struct SweepRow {
    std::string scenario;
    int n = 0;
    double delta = 0.0;
    double rejection_rate = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    int datasets = 0;
    double wall_seconds = 0.0;
};

/// One (sampling distribution, tested null) pair for a sweep cell.
struct CellPlan {
    SpaceHandle space;
    DistributionSpec dist;
    Point null_mean;
};

CellPlan plan_cell(const SweepConfig& config, double delta);

/// Rejection rates over the (n, delta) grid, rows sorted by (n, delta).
/// Per-dataset errors are tolerated up to 1% per cell, beyond which the cell
/// fails.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// One row per n with delta = local_c * n^{-1/2}.
std::vector<SweepRow> run_local_power(const SweepConfig& config);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(int successes, int trials, double level = 0.95);

/// Population Frechet mean of the two-component circle mixture
/// (1-p) VM(pi/2, kappa) + p VM(0, kappa) by numerical quadrature.
double circle_mixture_population_mean(double kappa, double p = 1.0 / 3.0);

/// Closed-form population Frechet mean of the hierarchical booklet model.
BookletPoint booklet_population_mean(const BookletHierarchical& model);

/// The hierarchical model used by the booklet scenario: weights
/// (4/7, 1/7, 1/7, 1/7), Beta(20,5) spine on branch 1 and Beta(5,20)
/// elsewhere, Normal(1,1) page.
BookletHierarchical default_booklet_model();

}  // namespace isomet

#pragma once

#include "isomet/frechet.hpp"
#include "isomet/isotropy.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace isomet {

struct TestConfig {
    SpaceHandle space;
    Point null_mean;
    int replicates = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    RandomIsotropy randomization;
    int threads = 1;  // execution hint only; results are schedule-independent

    /// Config with the canonical randomization of the space centered at the null.
    static TestConfig standard(const SpaceHandle& space, const Point& null_mean, int replicates,
                               double alpha, std::uint64_t seed);
};

struct TestResult {
    double observed_statistic = 0.0;
    std::vector<double> randomized_statistics;
    double p_value = 1.0;
    bool reject = false;
    long fallback_count = 0;  // failed reflection applications redrawn (BW out-of-cone)
    std::uint64_t seed = 0;
    int replicates = 0;
    double alpha = 0.05;
};

/// (1 + #{V_b <= observed}) / (B + 1); ties count toward the lower tail.
double p_value_curve(std::span<const double> randomized_statistics, double observed);

/// Randomization test for H0: Frechet mean = config.null_mean. For each of B
/// replicates, every observation is independently transformed by a draw from
/// the randomization and the empirical Frechet variance of the transformed
/// sample (about its own recomputed mean) is recorded. Small observed
/// variance relative to the replicates is evidence against H0, so the test
/// rejects in the lower tail.
///
/// Replicate b, observation i uses the random stream (seed, b, i); results
/// are bitwise independent of the thread count.
TestResult isotropic_test(std::span<const Point> sample, const TestConfig& config);

struct ConfidenceSet {
    std::vector<Point> grid;
    std::vector<char> accepted;     // 1 where the test does not reject
    std::vector<double> p_values;   // NaN where the per-point test errored
    // Maximal accepted arcs in degrees (circle only); an arc may wrap, in
    // which case start > end.
    std::vector<std::pair<double, double>> intervals_deg;
};

/// Runs the test at every grid point with per-point seeds derived from
/// (seed, grid index); per-point errors mark the point rejected-with-error.
ConfidenceSet invert_test(std::span<const Point> sample, const SpaceHandle& space,
                          std::span<const Point> grid, int replicates, double alpha,
                          std::uint64_t seed, int threads = 1);

struct ScoreTestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
};

/// Circular score test of H0: mean direction = mu0:
/// T = n (mean sin(t_i - t_0))^2 / (mean sin^2(t_i - t_0)), chi-squared(1) tail.
ScoreTestResult score_test_circle(std::span<const CirclePoint> sample, const CirclePoint& mu0,
                                  double alpha);

/// Equidistant circle grid of the given size, starting at angle 0.
std::vector<Point> circle_grid(int size);

}  // namespace isomet

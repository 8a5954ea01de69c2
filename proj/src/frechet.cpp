#include "isomet/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace isomet {

double frechet_objective(const SpaceHandle& space, std::span<const Point> sample,
                         const Point& omega) {
    if (sample.empty()) throw error("frechet_objective: empty sample");
    double acc = 0.0;
    for (const Point& x : sample) acc += squared_distance(space, x, omega);
    return acc / static_cast<double>(sample.size());
}

double frechet_variance(const SpaceHandle& space, std::span<const Point> sample,
                        const Point& mean) {
    return frechet_objective(space, sample, mean);
}

Point frechet_mean_oracle(const SpaceHandle& space, std::span<const Point> sample,
                          std::span<const Point> grid) {
    if (sample.empty()) throw error("frechet_mean_oracle: empty sample");
    if (grid.empty()) throw error("frechet_mean_oracle: empty grid");
    std::size_t best = 0;
    double best_f = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double f = frechet_objective(space, sample, grid[i]);
        if (f < best_f) {
            best_f = f;
            best = i;
        }
    }
    return grid[best];
}

namespace detail {

// ---------------------------------------------------------------------------
// circle: exact enumeration
//
// The empirical objective is piecewise quadratic in the candidate angle with
// kinks only at sample antipodes; every interior stationary point equals the
// plain average shifted by a multiple of 2*pi/n. Evaluating the objective at
// all n shifted averages with prefix sums costs O(n log n) and is exact.

CircleMeanResult circle_frechet_mean(std::span<const double> angles, double tie_tol) {
    const std::size_t n = angles.size();
    if (n == 0) throw error("frechet_mean: empty sample");
    if (n == 1) return {wrap_angle(angles[0]), 0.0, 1};

    std::vector<double> th(angles.begin(), angles.end());
    for (double& t : th) t = wrap_angle(t);
    std::sort(th.begin(), th.end());

    std::vector<double> p1(n + 1, 0.0), p2(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        p1[i + 1] = p1[i] + th[i];
        p2[i + 1] = p2[i] + th[i] * th[i];
    }
    const double s1 = p1[n], s2 = p2[n];
    const double mean0 = s1 / static_cast<double>(n);

    double best_f = std::numeric_limits<double>::infinity();
    double best_c = 0.0;
    double second_f = std::numeric_limits<double>::infinity();
    double second_c = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double c = wrap_angle(mean0 + two_pi * static_cast<double>(k) / static_cast<double>(n));
        double sum = s2 - 2.0 * c * s1 + static_cast<double>(n) * c * c;
        // points with theta > c + pi wrap by -2*pi
        const auto hi = std::upper_bound(th.begin(), th.end(), c + EIGEN_PI) - th.begin();
        const double ghi = static_cast<double>(n - static_cast<std::size_t>(hi));
        const double s1hi = s1 - p1[static_cast<std::size_t>(hi)];
        sum += -4.0 * EIGEN_PI * (s1hi - ghi * c) + 4.0 * EIGEN_PI * EIGEN_PI * ghi;
        // points with theta < c - pi wrap by +2*pi
        const auto lo = std::lower_bound(th.begin(), th.end(), c - EIGEN_PI) - th.begin();
        const double glo = static_cast<double>(lo);
        const double s1lo = p1[static_cast<std::size_t>(lo)];
        sum += 4.0 * EIGEN_PI * (s1lo - glo * c) + 4.0 * EIGEN_PI * EIGEN_PI * glo;

        const double f = sum / static_cast<double>(n);
        if (f < best_f) {
            second_f = best_f;
            second_c = best_c;
            best_f = f;
            best_c = c;
        } else if (f < second_f) {
            second_f = f;
            second_c = c;
        }
    }

    if (std::isfinite(second_f)) {
        const double d0 = std::abs(best_c - second_c);
        const double sep = std::min(d0, two_pi - d0);
        if (sep > 1e-7 && second_f - best_f <= tie_tol * std::max(1.0, best_f))
            throw non_unique_mean_error("circle frechet mean is not unique");
    }
    return {best_c, std::max(best_f, 0.0), static_cast<int>(n)};
}

// ---------------------------------------------------------------------------
// booklet: closed form
//
// Squared distance splits into a spine part and a page part, so the page
// coordinate of the mean is the plain average of pages. On branch z the
// spine cost is mean(x^2) - 2a*m_z + a^2 with m_z the signed spine average
// (positive sign on branch z); the stationary spine is max(0, m_z).

BookletMeanResult booklet_frechet_mean(std::span<const int> branches,
                                       std::span<const double> spines,
                                       const Eigen::MatrixXd& pages, int k, double tie_tol) {
    const std::size_t n = branches.size();
    if (n == 0) throw error("frechet_mean: empty sample");
    const double nn = static_cast<double>(n);

    Eigen::VectorXd page_mean = pages.colwise().mean();
    double page_var = 0.0;
    for (Eigen::Index i = 0; i < pages.rows(); ++i)
        page_var += (pages.row(i).transpose() - page_mean).squaredNorm();
    page_var /= nn;

    double sum_x = 0.0, sum_x2 = 0.0;
    std::vector<double> sum_branch(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        sum_x += spines[i];
        sum_x2 += spines[i] * spines[i];
        sum_branch[static_cast<std::size_t>(branches[i])] += spines[i];
    }
    const double mean_x2 = sum_x2 / nn;

    struct Candidate {
        int branch;
        double spine;
        double objective;
    };
    std::vector<Candidate> cands;
    cands.reserve(static_cast<std::size_t>(k) + 1);
    cands.push_back({1, 0.0, mean_x2 + page_var});  // the origin
    for (int z = 1; z <= k; ++z) {
        const double m = (2.0 * sum_branch[static_cast<std::size_t>(z)] - sum_x) / nn;
        const double a = std::max(0.0, m);
        if (a > 0.0) cands.push_back({z, a, mean_x2 - a * a + page_var});
    }

    std::sort(cands.begin(), cands.end(),
              [](const Candidate& l, const Candidate& r) { return l.objective < r.objective; });
    const Candidate& best = cands.front();
    for (std::size_t i = 1; i < cands.size(); ++i) {
        const Candidate& c = cands[i];
        if (c.objective - best.objective > tie_tol * std::max(1.0, best.objective)) break;
        const double spine_gap = (c.branch == best.branch)
                                     ? std::abs(c.spine - best.spine)
                                     : c.spine + best.spine;
        if (spine_gap > 1e-8)
            throw non_unique_mean_error("booklet frechet mean is not unique");
    }
    return {best.branch, best.spine, std::move(page_mean), std::max(best.objective, 0.0),
            static_cast<int>(cands.size())};
}

// ---------------------------------------------------------------------------
// bures-wasserstein 2x2 fixed point

double bw2_variance(std::span<const Eigen::Matrix2d> sample, const Eigen::Matrix2d& mean) {
    double acc = 0.0;
    for (const auto& x : sample) acc += bw::squared_dist2(x, mean);
    return acc / static_cast<double>(sample.size());
}

Bw2MeanResult bw2_frechet_mean(std::span<const Eigen::Matrix2d> sample, const BwMeanOptions& opt) {
    const std::size_t n = sample.size();
    if (n == 0) throw error("frechet_mean: empty sample");

    Eigen::Matrix2d s = Eigen::Matrix2d::Zero();
    for (const auto& x : sample) s += x;
    s /= static_cast<double>(n);

    if (opt.objective_trace) opt.objective_trace->push_back(bw2_variance(sample, s));

    Bw2MeanResult result;
    result.converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        const Eigen::Matrix2d ss = bw::sqrt2(s);
        const Eigen::Matrix2d si = bw::inverse2(ss);
        Eigen::Matrix2d t = Eigen::Matrix2d::Zero();
        for (const auto& x : sample) {
            Eigen::Matrix2d m = ss * x * ss;
            m = 0.5 * (m + m.transpose()).eval();
            t += bw::sqrt2(m);
        }
        t /= static_cast<double>(n);
        Eigen::Matrix2d snew = si * t * t * si;
        snew = 0.5 * (snew + snew.transpose()).eval();
        const double step = std::sqrt(bw::squared_dist2(s, snew));
        s = snew;
        result.iterations = it + 1;
        if (opt.objective_trace) opt.objective_trace->push_back(bw2_variance(sample, s));
        if (step < opt.tol) {
            result.converged = true;
            break;
        }
    }
    result.mean = s;
    result.variance = bw2_variance(sample, s);
    return result;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// generic dispatch

namespace {

FrechetEstimate euclidean_mean(const SpaceHandle& space, std::span<const Point> sample) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(space.dim);
    for (const Point& p : sample) acc += as_euclidean(p).coords;
    acc /= static_cast<double>(sample.size());
    Point mean = EuclideanPoint(acc);
    return {mean, frechet_objective(space, sample, mean), 1, true};
}

FrechetEstimate bw_mean_general(const SpaceHandle& space, std::span<const Point> sample) {
    const Eigen::Index d = space.dim;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (const Point& p : sample) s += as_spd(p).mat();
    s /= static_cast<double>(sample.size());

    const double tol = 1e-10;
    const int max_iter = 1000;
    bool converged = false;
    int it = 0;
    for (; it < max_iter; ++it) {
        const Eigen::MatrixXd ss = spd_sqrt(s);
        const Eigen::MatrixXd si = ss.llt().solve(Eigen::MatrixXd::Identity(d, d));
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d, d);
        for (const Point& p : sample) {
            const Eigen::MatrixXd m = ss * as_spd(p).mat() * ss;
            t += spd_sqrt(0.5 * (m + m.transpose()));
        }
        t /= static_cast<double>(sample.size());
        Eigen::MatrixXd snew = si * t * t * si;
        snew = 0.5 * (snew + snew.transpose()).eval();
        const double step =
            distance(space, Point(SpdMatrix(s)), Point(SpdMatrix(snew)));
        s = snew;
        if (step < tol) {
            converged = true;
            ++it;
            break;
        }
    }
    Point mean = SpdMatrix(s);
    return {mean, frechet_objective(space, sample, mean), it, converged};
}

}  // namespace

FrechetEstimate frechet_mean(const SpaceHandle& space, std::span<const Point> sample) {
    if (sample.empty()) throw error("frechet_mean: empty sample");
    for (const Point& p : sample) require_in_space(space, p);

    switch (space.kind) {
        case SpaceKind::Euclidean:
            return euclidean_mean(space, sample);
        case SpaceKind::Circle: {
            std::vector<double> th(sample.size());
            for (std::size_t i = 0; i < sample.size(); ++i) th[i] = as_circle(sample[i]).theta;
            const auto r = detail::circle_frechet_mean(th);
            return {CirclePoint(r.mean), r.variance, r.evaluations, true};
        }
        case SpaceKind::BuresWasserstein: {
            if (space.dim == 2) {
                std::vector<Eigen::Matrix2d> xs(sample.size());
                for (std::size_t i = 0; i < sample.size(); ++i) xs[i] = as_spd(sample[i]).mat();
                const auto r = detail::bw2_frechet_mean(xs);
                return {SpdMatrix(r.mean), r.variance, r.iterations, r.converged};
            }
            return bw_mean_general(space, sample);
        }
        case SpaceKind::Booklet: {
            const std::size_t n = sample.size();
            std::vector<int> branches(n);
            std::vector<double> spines(n);
            Eigen::MatrixXd pages(n, space.dim - 1);
            for (std::size_t i = 0; i < n; ++i) {
                const BookletPoint& b = as_booklet(sample[i]);
                branches[i] = b.branch;
                spines[i] = b.spine;
                pages.row(static_cast<Eigen::Index>(i)) = b.page.transpose();
            }
            auto r = detail::booklet_frechet_mean(branches, spines, pages, space.branches);
            return {BookletPoint(r.branch, r.spine, std::move(r.page)), r.variance, r.evaluations,
                    true};
        }
    }
    throw error("unreachable");
}

}  // namespace isomet

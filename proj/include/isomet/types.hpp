#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace isomet {

inline constexpr double two_pi = 2.0 * EIGEN_PI;

// Tolerance below which an eigenvalue counts as "left the SPD cone".
inline constexpr double spd_eig_tol = 1e-12;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input belongs to a different space or has mismatched dimensions.
class dimension_error : public error {
public:
    using error::error;
};

// Matrix fails the symmetric positive definite requirements.
class not_spd_error : public error {
public:
    using error::error;
};

// log map requested at/through the cut locus (circle antipode).
class cut_locus_error : public error {
public:
    using error::error;
};

// A map produced a matrix outside the SPD cone.
class singular_result_error : public error {
public:
    using error::error;
};

// Assumption of a unique Frechet mean is violated.
class non_unique_mean_error : public error {
public:
    using error::error;
};

// Statistic undefined on this input (e.g. zero-denominator score test).
class degenerate_error : public error {
public:
    using error::error;
};

// Operation has no definition for the requested space / parameters.
class unsupported_error : public error {
public:
    using error::error;
};

/// Canonical angle in [0, 2*pi).
inline double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    // fmod can return exactly two_pi after the correction when t is a tiny negative
    if (r >= two_pi) r = 0.0;
    return r;
}

/// Signed representative in (-pi, pi].
inline double wrap_signed(double t) {
    double r = std::fmod(t + EIGEN_PI, two_pi);
    if (r < 0.0) r += two_pi;
    r -= EIGEN_PI;
    if (r <= -EIGEN_PI) r = EIGEN_PI;
    return r;
}

struct CirclePoint {
    double theta = 0.0;

    CirclePoint() = default;
    explicit CirclePoint(double t) : theta(wrap_angle(t)) {}
};

/// Symmetric positive definite matrix; validated and symmetrized on construction.
class SpdMatrix {
public:
    explicit SpdMatrix(Eigen::MatrixXd m);

    const Eigen::MatrixXd& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

private:
    Eigen::MatrixXd m_;
};

/// Point on the booklet B_d^k: branch index in {1..k}, spine coordinate >= 0,
/// page vector of length d-1. Spine points are identified across branches and
/// normalized to branch 1.
struct BookletPoint {
    int branch = 1;
    double spine = 0.0;
    Eigen::VectorXd page;

    BookletPoint() = default;
    BookletPoint(int z, double x, Eigen::VectorXd y);
};

struct EuclideanPoint {
    Eigen::VectorXd coords;

    EuclideanPoint() = default;
    explicit EuclideanPoint(Eigen::VectorXd c);
    explicit EuclideanPoint(double x) : coords(Eigen::VectorXd::Constant(1, x)) {}
};

using Point = std::variant<EuclideanPoint, CirclePoint, SpdMatrix, BookletPoint>;

enum class SpaceKind { Euclidean, Circle, BuresWasserstein, Booklet };

/// Descriptor selecting one of the four supported metric spaces.
struct SpaceHandle {
    SpaceKind kind = SpaceKind::Euclidean;
    int dim = 1;       // Euclidean d; BW matrix dimension; booklet ambient d (page length d-1)
    int branches = 0;  // booklet k

    static SpaceHandle euclidean(int d);
    static SpaceHandle circle();
    static SpaceHandle bures_wasserstein(int d);
    static SpaceHandle booklet(int k, int d);
};

/// Tangent representation: scalar on the circle, vector in R^d, symmetric
/// matrix for Bures-Wasserstein.
using TangentVector = std::variant<double, Eigen::VectorXd, Eigen::MatrixXd>;

const char* space_name(SpaceKind k);

/// Checked accessors from Point to the concrete representation.
const CirclePoint& as_circle(const Point& p);
const SpdMatrix& as_spd(const Point& p);
const BookletPoint& as_booklet(const Point& p);
const EuclideanPoint& as_euclidean(const Point& p);

/// Throws dimension_error unless p is a member of the space.
void require_in_space(const SpaceHandle& space, const Point& p);

}  // namespace isomet

#pragma once

#include "isomet/types.hpp"

namespace isomet {

/// Metric distance between two points of the space.
///
/// Circle: shorter arc min(|dt|, 2pi - |dt|). Bures-Wasserstein:
/// sqrt(tr A + tr B - 2 tr (A^{1/2} B A^{1/2})^{1/2}). Booklet: Euclidean in
/// (spine, page) on a common branch, (spine + spine')^2 + |page - page'|^2
/// across branches.
double distance(const SpaceHandle& space, const Point& a, const Point& b);

double squared_distance(const SpaceHandle& space, const Point& a, const Point& b);

/// Follows the geodesic from base with initial velocity v for unit time.
/// BW convention: exp_S(V) = (I + V) S (I + V); see log_map for the inverse.
/// Not defined on the booklet.
Point exp_map(const SpaceHandle& space, const Point& base, const TangentVector& v);

/// Inverse of exp_map. Circle: signed shorter arc, errors at the antipode.
/// BW: V = T - I with T the optimal transport map
/// T = S^{-1/2} (S^{1/2} L S^{1/2})^{1/2} S^{-1/2} from base S to target L.
TangentVector log_map(const SpaceHandle& space, const Point& base, const Point& target);

/// Point at parameter t on the geodesic from a (t=0) to b (t=1). Ray
/// extension (t outside [0,1]) is allowed where the geodesic extends; the
/// booklet restricts t to [0,1] across branches.
Point geodesic_point(const SpaceHandle& space, const Point& a, const Point& b, double t);

/// Symmetric PSD square root. dim 2 uses the closed form
/// (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)); larger dimensions go
/// through an eigendecomposition. Eigenvalues in [-spd_eig_tol, 0) are
/// clamped to zero, anything lower is an error.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m);

/// Eigendecomposition route of the PSD square root, exposed for cross-checks
/// against the 2x2 closed form.
Eigen::MatrixXd spd_sqrt_eig(const Eigen::MatrixXd& m);

/// Smallest eigenvalue of a symmetric matrix (2x2 closed form, otherwise Eigen).
double min_eigenvalue(const Eigen::MatrixXd& m);

namespace bw {

/// Closed-form kernels for 2x2 SPD matrices. Templated on the Eigen matrix
/// type so the same code runs on Matrix2d in hot loops and on MatrixXd
/// blocks. Inputs are assumed symmetric.

template <class Mat>
inline double trace2(const Mat& m) {
    return m(0, 0) + m(1, 1);
}

template <class Mat>
inline double det2(const Mat& m) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <class Mat>
inline Mat sqrt2(const Mat& m) {
    double d = det2(m);
    if (d < 0.0) d = 0.0;
    const double s = std::sqrt(d);
    const double t2 = trace2(m) + 2.0 * s;
    if (t2 <= 0.0) return Mat::Zero(2, 2);
    Mat r = m;
    r(0, 0) += s;
    r(1, 1) += s;
    return r / std::sqrt(t2);
}

template <class Mat>
inline Mat inverse2(const Mat& m) {
    const double d = det2(m);
    Mat r(2, 2);
    r(0, 0) = m(1, 1);
    r(1, 1) = m(0, 0);
    r(0, 1) = -m(0, 1);
    r(1, 0) = -m(1, 0);
    return r / d;
}

template <class Mat>
inline double min_eig2(const Mat& m) {
    const double tr = trace2(m);
    const double gap = m(0, 0) - m(1, 1);
    const double disc = std::sqrt(gap * gap + 4.0 * m(0, 1) * m(1, 0));
    return 0.5 * (tr - disc);
}

/// Squared BW distance via tr(AB) and determinants; algebraically equal to
/// the tr-of-sqrt form since tr (A^{1/2}BA^{1/2})^{1/2} solves
/// x^2 = tr(AB) + 2 sqrt(det A det B) for 2x2.
template <class Mat>
inline double squared_dist2(const Mat& a, const Mat& b) {
    const double trab = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0) + a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
    double dd = det2(a) * det2(b);
    if (dd < 0.0) dd = 0.0;
    double inner = trab + 2.0 * std::sqrt(dd);
    if (inner < 0.0) inner = 0.0;
    double d2 = trace2(a) + trace2(b) - 2.0 * std::sqrt(inner);
    return d2 < 0.0 ? 0.0 : d2;
}

}  // namespace bw
}  // namespace isomet

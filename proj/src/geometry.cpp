#include "isomet/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>

namespace isomet {

namespace {

constexpr double symmetry_tol = 1e-12;

bool is_symmetric(const Eigen::MatrixXd& m, double tol = symmetry_tol) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

[[noreturn]] void throw_space_mismatch(const SpaceHandle& space, const char* what) {
    std::ostringstream os;
    os << what << " does not belong to the " << space_name(space.kind) << " space";
    throw dimension_error(os.str());
}

}  // namespace

// ---------------------------------------------------------------------------
// domain types

SpdMatrix::SpdMatrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw not_spd_error("SpdMatrix: matrix must be square");
    if (!m.allFinite()) throw not_spd_error("SpdMatrix: entries must be finite");
    if (!is_symmetric(m)) throw not_spd_error("SpdMatrix: matrix is not symmetric");
    m_ = symmetrize(m);
    if (min_eigenvalue(m_) < spd_eig_tol)
        throw not_spd_error("SpdMatrix: matrix is not positive definite");
}

BookletPoint::BookletPoint(int z, double x, Eigen::VectorXd y) : branch(z), spine(x), page(std::move(y)) {
    if (branch < 1) throw error("BookletPoint: branch index must be >= 1");
    if (!(spine >= 0.0)) throw error("BookletPoint: spine coordinate must be nonnegative");
    if (!page.allFinite()) throw error("BookletPoint: page entries must be finite");
    if (spine == 0.0) branch = 1;  // spine points are identified across branches
}

EuclideanPoint::EuclideanPoint(Eigen::VectorXd c) : coords(std::move(c)) {
    if (!coords.allFinite()) throw error("EuclideanPoint: entries must be finite");
}

SpaceHandle SpaceHandle::euclidean(int d) {
    if (d < 1) throw error("euclidean space needs dimension >= 1");
    return SpaceHandle{SpaceKind::Euclidean, d, 0};
}

SpaceHandle SpaceHandle::circle() { return SpaceHandle{SpaceKind::Circle, 1, 0}; }

SpaceHandle SpaceHandle::bures_wasserstein(int d) {
    if (d < 1) throw error("bures-wasserstein space needs dimension >= 1");
    return SpaceHandle{SpaceKind::BuresWasserstein, d, 0};
}

SpaceHandle SpaceHandle::booklet(int k, int d) {
    if (k < 2) throw error("booklet needs at least 2 branches");
    if (d < 1) throw error("booklet needs ambient dimension >= 1");
    return SpaceHandle{SpaceKind::Booklet, d, k};
}

const char* space_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::Euclidean: return "euclidean";
        case SpaceKind::Circle: return "circle";
        case SpaceKind::BuresWasserstein: return "bures-wasserstein";
        case SpaceKind::Booklet: return "booklet";
    }
    return "?";
}

const CirclePoint& as_circle(const Point& p) {
    if (const auto* c = std::get_if<CirclePoint>(&p)) return *c;
    throw dimension_error("expected a circle point");
}

const SpdMatrix& as_spd(const Point& p) {
    if (const auto* m = std::get_if<SpdMatrix>(&p)) return *m;
    throw dimension_error("expected an SPD matrix point");
}

const BookletPoint& as_booklet(const Point& p) {
    if (const auto* b = std::get_if<BookletPoint>(&p)) return *b;
    throw dimension_error("expected a booklet point");
}

const EuclideanPoint& as_euclidean(const Point& p) {
    if (const auto* e = std::get_if<EuclideanPoint>(&p)) return *e;
    throw dimension_error("expected a euclidean point");
}

void require_in_space(const SpaceHandle& space, const Point& p) {
    switch (space.kind) {
        case SpaceKind::Euclidean: {
            const auto* e = std::get_if<EuclideanPoint>(&p);
            if (!e || e->coords.size() != space.dim) throw_space_mismatch(space, "point");
            return;
        }
        case SpaceKind::Circle: {
            if (!std::get_if<CirclePoint>(&p)) throw_space_mismatch(space, "point");
            return;
        }
        case SpaceKind::BuresWasserstein: {
            const auto* m = std::get_if<SpdMatrix>(&p);
            if (!m || m->dim() != space.dim) throw_space_mismatch(space, "point");
            return;
        }
        case SpaceKind::Booklet: {
            const auto* b = std::get_if<BookletPoint>(&p);
            if (!b || b->branch > space.branches || b->page.size() != space.dim - 1)
                throw_space_mismatch(space, "point");
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// spd kernels

double min_eigenvalue(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) return m(0, 0);
    if (m.rows() == 2) return bw::min_eig2(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd spd_sqrt_eig(const Eigen::MatrixXd& m) {
    if (!is_symmetric(m)) throw not_spd_error("spd_sqrt: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -spd_eig_tol)
            throw not_spd_error("spd_sqrt: matrix has a materially negative eigenvalue");
        ev[i] = std::sqrt(std::max(ev[i], 0.0));
    }
    Eigen::MatrixXd r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    return symmetrize(r);
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m) {
    if (!is_symmetric(m)) throw not_spd_error("spd_sqrt: matrix is not symmetric");
    if (m.rows() == 1) {
        if (m(0, 0) < -spd_eig_tol)
            throw not_spd_error("spd_sqrt: matrix has a materially negative eigenvalue");
        Eigen::MatrixXd r(1, 1);
        r(0, 0) = std::sqrt(std::max(m(0, 0), 0.0));
        return r;
    }
    if (m.rows() == 2) {
        if (bw::min_eig2(m) < -spd_eig_tol)
            throw not_spd_error("spd_sqrt: matrix has a materially negative eigenvalue");
        return bw::sqrt2(Eigen::MatrixXd(symmetrize(m)));
    }
    return spd_sqrt_eig(m);
}

// ---------------------------------------------------------------------------
// distance

namespace {

double circle_distance(const CirclePoint& a, const CirclePoint& b) {
    const double d0 = std::abs(a.theta - b.theta);
    return std::min(d0, two_pi - d0);
}

// tr (A^{1/2} B A^{1/2})^{1/2} via the eigenvalues of the similar matrix.
double bw_trace_cross_term(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd sa = spd_sqrt(a);
    const Eigen::MatrixXd c = symmetrize(sa * b * sa);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
    double t = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        t += std::sqrt(std::max(es.eigenvalues()[i], 0.0));
    return t;
}

double bw_squared_distance(const SpdMatrix& a, const SpdMatrix& b) {
    if (a.dim() != b.dim()) throw dimension_error("bw distance: dimension mismatch");
    const Eigen::MatrixXd& ma = a.mat();
    const Eigen::MatrixXd& mb = b.mat();
    if (a.dim() == 2) return bw::squared_dist2(ma, mb);
    // canonical argument order keeps the computation bitwise symmetric
    bool swap = false;
    for (Eigen::Index i = 0; i < ma.size(); ++i) {
        if (ma.data()[i] != mb.data()[i]) {
            swap = ma.data()[i] > mb.data()[i];
            break;
        }
    }
    const Eigen::MatrixXd& x = swap ? mb : ma;
    const Eigen::MatrixXd& y = swap ? ma : mb;
    double d2 = x.trace() + y.trace() - 2.0 * bw_trace_cross_term(x, y);
    return std::max(d2, 0.0);
}

double booklet_squared_distance(const SpaceHandle& space, const BookletPoint& a,
                                const BookletPoint& b) {
    (void)space;
    const double spine_part = (a.branch == b.branch) ? (a.spine - b.spine) * (a.spine - b.spine)
                                                     : (a.spine + b.spine) * (a.spine + b.spine);
    return spine_part + (a.page - b.page).squaredNorm();
}

}  // namespace

double squared_distance(const SpaceHandle& space, const Point& a, const Point& b) {
    require_in_space(space, a);
    require_in_space(space, b);
    switch (space.kind) {
        case SpaceKind::Euclidean:
            return (as_euclidean(a).coords - as_euclidean(b).coords).squaredNorm();
        case SpaceKind::Circle: {
            const double d = circle_distance(as_circle(a), as_circle(b));
            return d * d;
        }
        case SpaceKind::BuresWasserstein:
            return bw_squared_distance(as_spd(a), as_spd(b));
        case SpaceKind::Booklet:
            return booklet_squared_distance(space, as_booklet(a), as_booklet(b));
    }
    throw error("unreachable");
}

double distance(const SpaceHandle& space, const Point& a, const Point& b) {
    if (space.kind == SpaceKind::Circle) {
        require_in_space(space, a);
        require_in_space(space, b);
        return circle_distance(as_circle(a), as_circle(b));
    }
    return std::sqrt(squared_distance(space, a, b));
}

// ---------------------------------------------------------------------------
// exponential / logarithm / geodesics

namespace {

const Eigen::MatrixXd& tangent_matrix(const TangentVector& v) {
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&v)) return *m;
    throw dimension_error("expected a matrix tangent vector");
}

const Eigen::VectorXd& tangent_vector_rep(const TangentVector& v) {
    if (const auto* x = std::get_if<Eigen::VectorXd>(&v)) return *x;
    throw dimension_error("expected a vector tangent vector");
}

double tangent_scalar(const TangentVector& v) {
    if (const auto* s = std::get_if<double>(&v)) return *s;
    throw dimension_error("expected a scalar tangent vector");
}

Point bw_exp(const SpdMatrix& base, const Eigen::MatrixXd& v) {
    if (v.rows() != base.dim() || v.cols() != base.dim())
        throw dimension_error("bw exp: tangent dimension mismatch");
    if (!is_symmetric(v)) throw dimension_error("bw exp: tangent matrix is not symmetric");
    const Eigen::MatrixXd t = Eigen::MatrixXd::Identity(v.rows(), v.cols()) + symmetrize(v);
    const Eigen::MatrixXd r = symmetrize(t * base.mat() * t);
    if (min_eigenvalue(r) < spd_eig_tol)
        throw singular_result_error("bw exp: image left the SPD cone");
    return SpdMatrix(r);
}

Eigen::MatrixXd bw_log(const SpdMatrix& base, const SpdMatrix& target) {
    if (base.dim() != target.dim()) throw dimension_error("bw log: dimension mismatch");
    const Eigen::MatrixXd s = spd_sqrt(base.mat());
    // inverse of the SPD square root
    Eigen::MatrixXd si;
    if (base.dim() == 2) {
        si = bw::inverse2(s);
    } else {
        si = s.llt().solve(Eigen::MatrixXd::Identity(base.dim(), base.dim()));
    }
    const Eigen::MatrixXd inner = spd_sqrt(symmetrize(s * target.mat() * s));
    const Eigen::MatrixXd transport = symmetrize(si * inner * si);
    return transport - Eigen::MatrixXd::Identity(base.dim(), base.dim());
}

}  // namespace

Point exp_map(const SpaceHandle& space, const Point& base, const TangentVector& v) {
    require_in_space(space, base);
    switch (space.kind) {
        case SpaceKind::Circle:
            return CirclePoint(as_circle(base).theta + tangent_scalar(v));
        case SpaceKind::Euclidean: {
            const Eigen::VectorXd& w = tangent_vector_rep(v);
            if (w.size() != space.dim) throw dimension_error("exp: tangent dimension mismatch");
            return EuclideanPoint(as_euclidean(base).coords + w);
        }
        case SpaceKind::BuresWasserstein:
            return bw_exp(as_spd(base), tangent_matrix(v));
        case SpaceKind::Booklet:
            throw unsupported_error("exp map is not defined on the booklet");
    }
    throw error("unreachable");
}

TangentVector log_map(const SpaceHandle& space, const Point& base, const Point& target) {
    require_in_space(space, base);
    require_in_space(space, target);
    switch (space.kind) {
        case SpaceKind::Circle: {
            const double delta = wrap_signed(as_circle(target).theta - as_circle(base).theta);
            if (EIGEN_PI - std::abs(delta) < 1e-12)
                throw cut_locus_error("log map: target is the antipode of the base");
            return delta;
        }
        case SpaceKind::Euclidean:
            return Eigen::VectorXd(as_euclidean(target).coords - as_euclidean(base).coords);
        case SpaceKind::BuresWasserstein:
            return bw_log(as_spd(base), as_spd(target));
        case SpaceKind::Booklet:
            throw unsupported_error("log map is not defined on the booklet");
    }
    throw error("unreachable");
}

namespace {

Point booklet_geodesic(const SpaceHandle& space, const BookletPoint& a, const BookletPoint& b,
                       double t) {
    (void)space;
    const Eigen::VectorXd page = (1.0 - t) * a.page + t * b.page;
    if (a.branch == b.branch) {
        const double spine = (1.0 - t) * a.spine + t * b.spine;
        if (spine < 0.0)
            throw unsupported_error("booklet geodesic: ray extension through the origin is undefined");
        return BookletPoint(a.branch, spine, page);
    }
    if (t < 0.0 || t > 1.0)
        throw unsupported_error("booklet geodesic: cross-branch ray extension is undefined");
    // travel through the origin: total spine length a.spine + b.spine
    const double s = t * (a.spine + b.spine);
    if (s <= a.spine) return BookletPoint(a.branch, a.spine - s, page);
    return BookletPoint(b.branch, s - a.spine, page);
}

}  // namespace

Point geodesic_point(const SpaceHandle& space, const Point& a, const Point& b, double t) {
    require_in_space(space, a);
    require_in_space(space, b);
    if (space.kind == SpaceKind::Booklet)
        return booklet_geodesic(space, as_booklet(a), as_booklet(b), t);
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    const TangentVector v = log_map(space, a, b);
    switch (space.kind) {
        case SpaceKind::Circle:
            return exp_map(space, a, TangentVector(t * tangent_scalar(v)));
        case SpaceKind::Euclidean:
            return exp_map(space, a, TangentVector(Eigen::VectorXd(t * tangent_vector_rep(v))));
        case SpaceKind::BuresWasserstein:
            return exp_map(space, a, TangentVector(Eigen::MatrixXd(t * tangent_matrix(v))));
        default:
            throw error("unreachable");
    }
}

}  // namespace isomet

#include "isomet/isotropy.hpp"

#include <algorithm>
#include <numeric>

namespace isomet {

namespace {

void check_permutation(const std::vector<int>& perm, int center_branch) {
    const int k = static_cast<int>(perm.size());
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int image : perm) {
        if (image < 1 || image > k) throw error("booklet map: permutation image out of range");
        if (seen[static_cast<std::size_t>(image - 1)])
            throw error("booklet map: permutation is not a bijection");
        seen[static_cast<std::size_t>(image - 1)] = true;
    }
    if (center_branch >= 1 && center_branch <= k &&
        perm[static_cast<std::size_t>(center_branch - 1)] != center_branch)
        throw error("booklet map: permutation must fix the center branch");
}

Point apply_booklet(const BookletMap& g, const BookletPoint& x) {
    if (x.page.size() != g.center.page.size())
        throw dimension_error("booklet map: page dimension mismatch");
    const int k = static_cast<int>(g.branch_permutation.size());
    if (x.branch < 1 || x.branch > k)
        throw dimension_error("booklet map: branch index outside the permutation domain");
    const int z = g.branch_permutation[static_cast<std::size_t>(x.branch - 1)];
    Eigen::VectorXd page = g.reflect_page ? Eigen::VectorXd(2.0 * g.center.page - x.page) : x.page;
    return BookletPoint(z, x.spine, std::move(page));
}

Point apply_geodesic_symmetry(const GeodesicSymmetry& g, const Point& x) {
    switch (g.space.kind) {
        case SpaceKind::Circle:
            // same map as CircleReflection; fixes the antipode automatically
            return CirclePoint(2.0 * as_circle(g.center).theta - as_circle(x).theta);
        case SpaceKind::Euclidean:
            return EuclideanPoint(
                Eigen::VectorXd(2.0 * as_euclidean(g.center).coords - as_euclidean(x).coords));
        case SpaceKind::BuresWasserstein: {
            const TangentVector v = log_map(g.space, g.center, x);
            const Eigen::MatrixXd& m = std::get<Eigen::MatrixXd>(v);
            return exp_map(g.space, g.center, TangentVector(Eigen::MatrixXd(-m)));
        }
        case SpaceKind::Booklet:
            throw unsupported_error("geodesic symmetry is not defined on the booklet");
    }
    throw error("unreachable");
}

}  // namespace

Point apply(const IsotropyElement& g, const Point& x) {
    if (std::holds_alternative<Identity>(g)) return x;
    if (const auto* r = std::get_if<CircleReflection>(&g))
        return CirclePoint(2.0 * r->center.theta - as_circle(x).theta);
    if (const auto* s = std::get_if<GeodesicSymmetry>(&g)) {
        require_in_space(s->space, x);
        return apply_geodesic_symmetry(*s, x);
    }
    const auto& b = std::get<BookletMap>(g);
    return apply_booklet(b, as_booklet(x));
}

RandomIsotropy RandomIsotropy::reflection_coin(const SpaceHandle& space, const Point& center) {
    if (space.kind == SpaceKind::Booklet)
        throw unsupported_error("reflection coin randomization is not defined on the booklet");
    require_in_space(space, center);
    return RandomIsotropy{space, center, RandomizationScheme::ReflectionCoin};
}

RandomIsotropy RandomIsotropy::booklet_scheme(const SpaceHandle& space,
                                              const BookletPoint& center) {
    if (space.kind != SpaceKind::Booklet)
        throw unsupported_error("booklet randomization needs a booklet space");
    require_in_space(space, Point(center));
    return RandomIsotropy{space, Point(center), RandomizationScheme::BookletScheme};
}

RandomIsotropy RandomIsotropy::canonical(const SpaceHandle& space, const Point& center) {
    if (space.kind == SpaceKind::Booklet) return booklet_scheme(space, as_booklet(center));
    return reflection_coin(space, center);
}

IsotropyElement draw(const RandomIsotropy& r, RngStream& rng) {
    if (r.scheme == RandomizationScheme::ReflectionCoin) {
        if (!rng.coin()) return Identity{};
        if (r.space.kind == SpaceKind::Circle) return CircleReflection{as_circle(r.center)};
        return GeodesicSymmetry{r.space, r.center};
    }
    // uniform permutation of the non-center branches via Fisher-Yates, plus
    // an independent page-reflection coin
    const BookletPoint& center = as_booklet(r.center);
    const int k = r.space.branches;
    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(k) - 1);
    for (int z = 1; z <= k; ++z)
        if (z != center.branch) others.push_back(z);
    std::vector<int> targets = others;
    for (std::size_t i = targets.size(); i > 1; --i)
        std::swap(targets[i - 1], targets[rng.uniform_int(i)]);
    std::vector<int> perm(static_cast<std::size_t>(k));
    perm[static_cast<std::size_t>(center.branch - 1)] = center.branch;
    for (std::size_t i = 0; i < others.size(); ++i)
        perm[static_cast<std::size_t>(others[i] - 1)] = targets[i];
    const bool reflect = rng.coin();
    check_permutation(perm, center.branch);
    return BookletMap{center, std::move(perm), reflect};
}

std::vector<AdmissibilityProbe> probe_admissibility(const RandomIsotropy& r,
                                                    std::span<const Point> probes, int draws,
                                                    RngStream& rng) {
    std::vector<AdmissibilityProbe> out;
    out.reserve(probes.size());
    for (const Point& probe : probes) {
        std::vector<Point> images;
        for (int d = 0; d < draws; ++d) {
            const IsotropyElement g = draw(r, rng);
            Point y = probe;
            try {
                y = apply(g, probe);
            } catch (const singular_result_error&) {
                continue;  // out-of-cone image; skip rather than distort the count
            }
            bool fresh = true;
            for (const Point& seen : images) {
                if (distance(r.space, seen, y) <= 1e-9) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) images.push_back(std::move(y));
        }
        out.push_back({probe, static_cast<int>(images.size())});
    }
    return out;
}

}  // namespace isomet

#include "isomet/sampling.hpp"

#include <cmath>
#include <numeric>

namespace isomet {

namespace {

void check_mixture(const VonMisesMixture& mix) {
    if (mix.components.empty()) throw error("mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : mix.components) {
        if (!(c.weight >= 0.0)) throw error("mixture weights must be nonnegative");
        if (!(c.kappa > 0.0)) throw error("von Mises concentration must be positive");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw error("mixture weights must sum to 1");
}

void check_booklet_model(const BookletHierarchical& m) {
    if (m.weights.size() < 2) throw error("booklet model needs at least 2 branches");
    if (std::abs(m.weights.sum() - 1.0) > 1e-12) throw error("branch weights must sum to 1");
    if (m.weights.minCoeff() < 0.0) throw error("branch weights must be nonnegative");
    if (static_cast<int>(m.spine_laws.size()) != m.weights.size())
        throw error("booklet model needs one spine law per branch");
    for (const auto& [a, b] : m.spine_laws)
        if (!(a > 0.0 && b > 0.0)) throw error("Beta parameters must be positive");
    if (!(m.page_sd > 0.0)) throw error("page standard deviation must be positive");
    if (m.page_dim < 0) throw error("page dimension must be nonnegative");
}

int categorical(const Eigen::VectorXd& weights, RngStream& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size() - 1);
}

Point sample_bw(const BwTangentGaussian& spec, RngStream& rng) {
    const Eigen::Index d = spec.center.dim();
    for (;;) {
        Eigen::MatrixXd m(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
        const Eigen::MatrixXd v = 0.5 * (m + m.transpose());
        // identity-base convention: exp(V) = (I + V/2) C (I + V/2)
        const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d) + 0.5 * v;
        Eigen::MatrixXd x = a * spec.center.mat() * a;
        x = 0.5 * (x + x.transpose()).eval();
        if (min_eigenvalue(x) >= spd_eig_tol) return SpdMatrix(x);
        // a congruence by a singular factor; retry (measure-zero event)
    }
}

Point sample_booklet(const BookletHierarchical& spec, RngStream& rng) {
    const int z = categorical(spec.weights, rng) + 1;
    const auto [alpha, beta] = spec.spine_laws[static_cast<std::size_t>(z - 1)];
    const double x = rng.beta(alpha, beta);
    Eigen::VectorXd page(spec.page_dim);
    for (int j = 0; j < spec.page_dim; ++j) page[j] = rng.normal(spec.page_mean, spec.page_sd);
    return BookletPoint(z, x, std::move(page));
}

Point sample_spider(const SpiderNormal& spec, RngStream& rng) {
    const int k = spec.branches;
    const int center_branch = spec.center.branch;
    const int z = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k))) + 1;
    if (z == center_branch) {
        const double v = rng.normal(spec.center.spine, 1.0);
        if (v >= 0.0) return BookletPoint(z, v, Eigen::VectorXd());
        // fold through the origin onto a uniformly chosen other branch
        std::uint64_t pick = rng.uniform_int(static_cast<std::uint64_t>(k - 1));
        int target = static_cast<int>(pick) + 1;
        if (target >= center_branch) ++target;
        return BookletPoint(target, -v, Eigen::VectorXd());
    }
    const double v = rng.normal(0.0, 1.0);
    return BookletPoint(z, std::abs(v), Eigen::VectorXd());
}

}  // namespace

double sample_von_mises(RngStream& rng, double mu, double kappa) {
    if (!(kappa > 0.0)) throw error("von Mises concentration must be positive");
    // Best-Fisher wrapped-Cauchy envelope rejection
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    double f;
    for (;;) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform_pos();
        const double z = std::cos(EIGEN_PI * u1);
        f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        if (c * (2.0 - c) - u2 > 0.0) break;
        if (std::log(c / u2) + 1.0 - c >= 0.0) break;
    }
    const double u3 = rng.uniform();
    const double sign = (u3 < 0.5) ? -1.0 : 1.0;
    if (f > 1.0) f = 1.0;
    if (f < -1.0) f = -1.0;
    return wrap_angle(mu + sign * std::acos(f));
}

SpaceHandle space_of(const DistributionSpec& spec) {
    if (std::holds_alternative<VonMises>(spec) || std::holds_alternative<VonMisesMixture>(spec))
        return SpaceHandle::circle();
    if (const auto* bw = std::get_if<BwTangentGaussian>(&spec))
        return SpaceHandle::bures_wasserstein(static_cast<int>(bw->center.dim()));
    if (const auto* bm = std::get_if<BookletHierarchical>(&spec))
        return SpaceHandle::booklet(static_cast<int>(bm->weights.size()), bm->page_dim + 1);
    const auto& sp = std::get<SpiderNormal>(spec);
    return SpaceHandle::booklet(sp.branches, 1);
}

std::vector<Point> sample(const DistributionSpec& spec, int n, RngStream& rng) {
    if (n < 1) throw error("sample: n must be >= 1");
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n));

    if (const auto* vm = std::get_if<VonMises>(&spec)) {
        if (!(vm->kappa > 0.0)) throw error("von Mises concentration must be positive");
        for (int i = 0; i < n; ++i)
            out.emplace_back(CirclePoint(sample_von_mises(rng, vm->mu, vm->kappa)));
        return out;
    }
    if (const auto* mix = std::get_if<VonMisesMixture>(&spec)) {
        check_mixture(*mix);
        Eigen::VectorXd w(static_cast<Eigen::Index>(mix->components.size()));
        for (std::size_t i = 0; i < mix->components.size(); ++i)
            w[static_cast<Eigen::Index>(i)] = mix->components[i].weight;
        for (int i = 0; i < n; ++i) {
            const auto& c = mix->components[static_cast<std::size_t>(categorical(w, rng))];
            out.emplace_back(CirclePoint(sample_von_mises(rng, c.mu, c.kappa)));
        }
        return out;
    }
    if (const auto* bw = std::get_if<BwTangentGaussian>(&spec)) {
        for (int i = 0; i < n; ++i) out.push_back(sample_bw(*bw, rng));
        return out;
    }
    if (const auto* bm = std::get_if<BookletHierarchical>(&spec)) {
        check_booklet_model(*bm);
        for (int i = 0; i < n; ++i) out.push_back(sample_booklet(*bm, rng));
        return out;
    }
    const auto& sp = std::get<SpiderNormal>(spec);
    if (sp.branches < 2) throw error("spider needs at least 2 branches");
    if (sp.center.page.size() != 0) throw error("spider center must have an empty page");
    if (sp.center.branch > sp.branches) throw error("spider center branch out of range");
    for (int i = 0; i < n; ++i) out.push_back(sample_spider(sp, rng));
    return out;
}

DistributionSpec shift_spec(const DistributionSpec& spec, const SpaceHandle& space, double delta,
                            const Point& direction) {
    if (const auto* vm = std::get_if<VonMises>(&spec)) {
        VonMises shifted = *vm;
        shifted.mu = wrap_angle(shifted.mu + delta);
        return shifted;
    }
    if (const auto* mix = std::get_if<VonMisesMixture>(&spec)) {
        VonMisesMixture shifted = *mix;
        for (auto& c : shifted.components) c.mu = wrap_angle(c.mu + delta);
        return shifted;
    }
    if (const auto* bw = std::get_if<BwTangentGaussian>(&spec)) {
        const Point recentered =
            geodesic_point(space, Point(bw->center), direction, delta);
        return BwTangentGaussian{as_spd(recentered)};
    }
    throw unsupported_error("shift_spec: this distribution has no mean shift");
}

}  // namespace isomet

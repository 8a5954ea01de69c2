#pragma once

#include "isomet/geometry.hpp"
#include "isomet/rng.hpp"

#include <vector>

namespace isomet {

struct VonMises {
    double mu = 0.0;
    double kappa = 1.0;
};

struct VonMisesMixture {
    struct Component {
        double weight;
        double mu;
        double kappa;
    };
    std::vector<Component> components;
};

/// Pushforward of a symmetric Gaussian tangent draw V = (M + M^T)/2 through
/// the exponential map at `center`, in the identity-convention
/// X = (I + V/2) C (I + V/2). With C = I this is exp(V) for the tangent
/// convention where log_I M = 2 M^{1/2} - 2 I.
struct BwTangentGaussian {
    SpdMatrix center;
};

/// Hierarchical booklet model: branch ~ Categorical(weights), spine ~
/// Beta(spine_laws[branch]), page coordinates iid Normal(page_mean, page_sd).
struct BookletHierarchical {
    Eigen::VectorXd weights;                          // length k
    std::vector<std::pair<double, double>> spine_laws;  // Beta(alpha, beta) per branch
    double page_mean = 1.0;
    double page_sd = 1.0;
    int page_dim = 1;  // d - 1
};

/// Mixture of folded normals on the k-spider (d = 1, no page): branch drawn
/// uniformly; Normal(center spine, 1) on the center branch with negative
/// draws folded through the origin onto a uniformly chosen other branch;
/// |Normal(0, 1)| on the remaining branches.
struct SpiderNormal {
    BookletPoint center;  // page must be empty
    int branches = 3;
};

using DistributionSpec =
    std::variant<VonMises, VonMisesMixture, BwTangentGaussian, BookletHierarchical, SpiderNormal>;

SpaceHandle space_of(const DistributionSpec& spec);

/// n independent draws. Deterministic given the stream.
std::vector<Point> sample(const DistributionSpec& spec, int n, RngStream& rng);

/// Moves the population Frechet mean along a geodesic by delta: circle
/// variants add delta to every component mean; BwTangentGaussian recenters at
/// geodesic_point(center, direction, delta). Other variants have no shift.
DistributionSpec shift_spec(const DistributionSpec& spec, const SpaceHandle& space,
                            double delta, const Point& direction);

/// One Best-Fisher rejection draw from VM(mu, kappa); exposed for tests.
double sample_von_mises(RngStream& rng, double mu, double kappa);

}  // namespace isomet

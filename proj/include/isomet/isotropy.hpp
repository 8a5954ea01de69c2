#pragma once

#include "isomet/geometry.hpp"
#include "isomet/rng.hpp"

#include <span>
#include <vector>

namespace isomet {

struct Identity {};

/// theta -> 2*theta_center - theta (mod 2pi).
struct CircleReflection {
    CirclePoint center;
};

/// x -> exp_center(-log_center(x)); points at the cut locus map to themselves.
struct GeodesicSymmetry {
    SpaceHandle space;
    Point center;
};

/// Branch permutation fixing the center branch, spine kept, page optionally
/// reflected through the center page.
struct BookletMap {
    BookletPoint center;
    std::vector<int> branch_permutation;  // table of size k, 1-based images
    bool reflect_page = false;
};

using IsotropyElement = std::variant<Identity, CircleReflection, GeodesicSymmetry, BookletMap>;

/// Applies a mean-fixing map to a point. BW geodesic symmetry throws
/// singular_result_error when the image leaves the SPD cone; callers decide
/// the resampling policy.
Point apply(const IsotropyElement& g, const Point& x);

enum class RandomizationScheme {
    ReflectionCoin,  // uniform over {identity, reflection at center}
    BookletScheme,   // uniform permutation fixing the center branch x page-reflection coin
};

/// Law of a random isotropy of `center`; draws via `draw` below.
struct RandomIsotropy {
    SpaceHandle space;
    Point center;
    RandomizationScheme scheme = RandomizationScheme::ReflectionCoin;

    static RandomIsotropy reflection_coin(const SpaceHandle& space, const Point& center);
    static RandomIsotropy booklet_scheme(const SpaceHandle& space, const BookletPoint& center);
    /// The scheme the experiments use for each space: reflection coin on the
    /// circle / BW / Euclidean, the permutation scheme on booklets.
    static RandomIsotropy canonical(const SpaceHandle& space, const Point& center);
};

IsotropyElement draw(const RandomIsotropy& r, RngStream& rng);

struct AdmissibilityProbe {
    Point probe;
    int distinct_images = 0;  // 1 flags an almost-surely-fixed probe
};

/// Counts distinct images (distance > 1e-9) of each probe across `draws`
/// samples of the randomization. A count of 1 witnesses inadmissibility.
std::vector<AdmissibilityProbe> probe_admissibility(const RandomIsotropy& r,
                                                    std::span<const Point> probes,
                                                    int draws, RngStream& rng);

}  // namespace isomet

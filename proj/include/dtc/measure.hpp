#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtc/errors.hpp"

namespace dtc {

using Point = std::vector<double>;

/// Atoms closer than this (in ambient units) are identified: tx + t'x = (t+t')x.
inline constexpr double kMergeTolerance = 1e-9;

enum class AmbientKind { Euclidean, Lens, PathSpace, FiniteSet };

/**
 * Metric space a measure lives on.
 *
 *  - Euclidean: R^d with the Euclidean metric (spheres are subsets of it).
 *  - Lens: S^{2n-1} / Z_p, points given by any representative; the metric is
 *    the quotient metric min_g |x - g y|.
 *  - PathSpace: paths sampled at `path_samples` uniform times and flattened;
 *    the metric is the uniform (sup) metric over the samples, measured in the
 *    base space (Euclidean or Lens).
 *  - FiniteSet: points are one-element vectors holding an index; discrete metric.
 */
struct Ambient {
    AmbientKind kind = AmbientKind::Euclidean;
    int lens_order = 0;
    int lens_dim = 0;
    AmbientKind path_base = AmbientKind::Euclidean;
    int path_samples = 0;

    static Ambient euclidean() { return {}; }
    static Ambient lens(int p, int n);
    static Ambient finite_set();
    static Ambient path_space(const Ambient& base, int samples);

    /// Base metric of a path space (or the ambient itself otherwise).
    Ambient base() const;

    double distance(std::span<const double> x, std::span<const double> y) const;

    /// Stable string tag used in JSON: "euclidean", "lens:3,1", "finite",
    /// "paths:21:lens:3,1".
    std::string tag() const;
    static Ambient from_tag(std::string_view tag);

    bool operator==(const Ambient&) const = default;
};

struct Atom {
    Point point;
    double weight = 0.0;
};

/**
 * Probability measure with finitely many atoms.
 *
 * Constructed only through dirac() or normalize(), so every instance has
 * nonnegative weights summing to one and pairwise distinct atoms (distance at
 * least the merge tolerance).
 */
class FiniteMeasure {
public:
    static FiniteMeasure dirac(Point x, const Ambient& ambient = Ambient::euclidean());

    /// Merge atoms closer than merge_tol, drop zero weights, rescale to mass 1.
    /// Throws TotalMassZero when every weight is zero, InvalidArgument on
    /// negative or non-finite weights and SupportBoundViolated when the merged
    /// atom count exceeds a declared support bound.
    static FiniteMeasure normalize(std::vector<Atom> raw, const Ambient& ambient = Ambient::euclidean(),
                                   double merge_tol = kMergeTolerance,
                                   std::optional<std::size_t> support_bound = std::nullopt);

    const Ambient& ambient() const { return ambient_; }
    std::span<const Atom> atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }
    double mass() const;

    /// Total weight of atoms within `tol` of x.
    double mass_at(std::span<const double> x, double tol = kMergeTolerance) const;

private:
    FiniteMeasure(Ambient ambient, std::vector<Atom> atoms)
        : ambient_(std::move(ambient)), atoms_(std::move(atoms)) {}

    Ambient ambient_;
    std::vector<Atom> atoms_;
};

/// Image measure under f, landing in `target` (images that collide merge).
template <class F>
FiniteMeasure push_forward(F&& f, const FiniteMeasure& mu, const Ambient& target) {
    std::vector<Atom> raw;
    raw.reserve(mu.support_size());
    for (const Atom& a : mu.atoms()) raw.push_back({Point(f(a.point)), a.weight});
    return FiniteMeasure::normalize(std::move(raw), target);
}

template <class F>
FiniteMeasure push_forward(F&& f, const FiniteMeasure& mu) {
    return push_forward(std::forward<F>(f), mu, mu.ambient());
}

/// Maximum atom count accepted by wasserstein1.
inline constexpr std::size_t kMaxTransportAtoms = 64;

/**
 * Exact Wasserstein-1 distance: the optimum of the transportation problem
 * with the ambient metric as ground cost. Throws AmbientMismatch when the
 * measures live on different spaces.
 */
double wasserstein1(const FiniteMeasure& mu, const FiniteMeasure& nu);

/// Optimal value of min sum c_ij x_ij over x >= 0 with row sums `supply` and
/// column sums `demand` (equal totals). Successive shortest paths.
double optimal_transport_cost(std::span<const double> supply, std::span<const double> demand,
                              const std::vector<std::vector<double>>& cost);

}  // namespace dtc

#pragma once

#include <cstdint>
#include <vector>

#include "dtc/execution.hpp"
#include "dtc/geometry.hpp"
#include "dtc/measure.hpp"

namespace dtc {

/// Odd p: weighted rotation paths on the sphere. Even p: weighted rotations of
/// lines through the origin (each entry stands for the path and its antipode).
enum class MultiPathKind { OddSphere, EvenLine };

struct PathEntry {
    double weight = 0.0;
    RotationPath path;
};

/**
 * Unordered weighted collection of rotation paths from x towards the orbit of
 * y. Evaluating at t gives a probability measure; the projected variant lives
 * on the lens space.
 */
class MultiPath {
public:
    MultiPath(LensAction action, MultiPathKind kind, bool projected, std::vector<PathEntry> entries);

    const LensAction& action() const { return action_; }
    MultiPathKind kind() const { return kind_; }
    bool projected() const { return projected_; }
    const std::vector<PathEntry>& entries() const { return entries_; }
    double total_weight() const;

    /// Same entries composed with the quotient map onto the lens space.
    MultiPath project() const;

    /// Measure at time t: on the sphere (line entries split half/half between
    /// the path and its antipode) or, when projected, on the lens space.
    FiniteMeasure evaluate(double t) const;

    /// The multipath as a measure on path space: each path sampled at
    /// `samples` uniform times, compared with the uniform metric.
    FiniteMeasure as_path_measure(int samples) const;

private:
    LensAction action_;
    MultiPathKind kind_;
    bool projected_;
    std::vector<PathEntry> entries_;
};

/**
 * Odd p. For every g in Z_p, the alpha- and beta-rotations from x to gy with
 * weights beta(x,gy) / (2 pi p) and alpha(x,gy) / (2 pi p). Starts at the Dirac
 * measure at x and ends at the uniform measure on the orbit of y.
 * Throws OddParityRequired for even p.
 */
MultiPath sphere_multipath(const LensAction& action, const SpherePoint& x, const SpherePoint& y);

/**
 * Even p = 2k. For g ranging over representatives of Z_p / {+-1}, rotations of
 * the line through x onto the line through gy by the line angle a in
 * [0, pi/2] and by pi - a the other way, with weights (pi - a) / (pi k) and
 * a / (pi k). Throws EvenParityRequired for odd p.
 */
MultiPath line_multipath(const LensAction& action, const SpherePoint& x, const SpherePoint& y);

/// Distributional navigation between the orbits of x and y on L^{2n-1}_p.
MultiPath lens_navigation(const LensAction& action, const SpherePoint& x, const SpherePoint& y);

/// Default uniform t-grid size for checks.
inline constexpr int kTimeSamples = 21;

struct VerifyOptions {
    int p = 3;
    int n = 1;
    int samples = 500;
    std::uint64_t seed = 0;
    double margin = 0.1;
    int time_samples = kTimeSamples;
    bool check_independence = true;
    bool check_continuity = true;
    /// Perturbation sizes for the continuity modulus (one modulus per scale).
    std::vector<double> perturbations{1e-3, 1e-4};
    /// Distances of gy from -x used by the degeneracy probe.
    std::vector<double> probe_offsets{1e-1, 1e-2, 1e-3, 1e-4};
};

struct ContinuityScale {
    double perturbation = 0.0;
    std::size_t pairs = 0;
    double max_ratio = 0.0;
};

struct ProbePoint {
    double offset = 0.0;
    double max_ratio = 0.0;
};

struct VerificationReport {
    int p = 0;
    int n = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double margin = 0.0;

    double max_endpoint_error = 0.0;
    double max_mass_error = 0.0;
    std::size_t max_support = 0;
    double max_independence_error = 0.0;
    double max_equivariance_error = 0.0;
    std::vector<ContinuityScale> continuity;
    std::vector<ProbePoint> degeneracy_probe;

    /// Support bound of the construction: 2p for odd p, p for even p.
    std::size_t support_bound = 0;

    /// Checks (a) to (d) at the given tolerance. The continuity and probe
    /// fields are measurements, not pass/fail checks.
    bool passed(double tol = 1e-9) const;
};

/// Samples seeded random pairs and measures what the construction promises.
/// Per-sample RNG streams make the report independent of the worker count.
VerificationReport verify_planner(const VerifyOptions& options, Execution exec = Execution::Parallel);

/// Uniformly distributed point on S^{2n-1} from a stream seeded by (seed, index).
SpherePoint random_sphere_point(int n, std::uint64_t seed, std::uint64_t index);

}  // namespace dtc

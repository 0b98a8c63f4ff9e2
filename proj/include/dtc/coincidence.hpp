#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dtc/execution.hpp"
#include "dtc/geometry.hpp"
#include "dtc/measure.hpp"
#include "dtc/simplicial.hpp"

namespace dtc {

/**
 * S^{2k-1} triangulated as the join of k copies of an (N p)-gon, with Z_p
 * rotating every polygon by N steps. Vertex j * M + i (M = N p) is the i-th
 * corner of polygon j and sits at e^{2 pi i i / M} in complex coordinate j of
 * C^k, so the group acts on the linear realization exactly as the lens action
 * with all weights 1.
 */
struct FreeSphereComplex {
    int k = 0;
    int p = 0;
    int steps = 0;  // N
    SimplicialComplex complex;
    std::vector<Simplex> facets;
    std::vector<Point> coords;  // realization of each vertex in R^{2k}
    std::vector<std::vector<int>> permutations;  // [g][v]

    int vertices_per_polygon() const { return steps * p; }
    int sphere_dim() const { return 2 * k - 1; }
    int act(int g, int v) const { return permutations[((g % p) + p) % p][v]; }
    Simplex act(int g, const Simplex& sigma) const;
    /// Point of the realization with the given barycentric coordinates on sigma.
    Point realize(const Simplex& sigma, std::span<const double> barycentric) const;
    LensAction lens() const { return LensAction(p, k); }
};

/// Requires k >= 1, p >= 2, N >= 1 and N p >= 3.
FreeSphereComplex build_sphere(int k, int p, int steps);

/// Vertex values extended affinely over every simplex.
struct PLFunction {
    std::vector<double> values;

    double at(const Simplex& sigma, std::span<const double> barycentric) const;
    /// f o g: vertex v gets the value of g v.
    PLFunction translated(const FreeSphereComplex& x, int g) const;
};

struct CoincidenceWitness {
    Simplex simplex;
    std::vector<double> barycentric;
    double value = 0.0;  // common value of f on the orbit
};

struct CoincidenceCertificate {
    bool empty = true;
    std::optional<CoincidenceWitness> witness;
    /// feasible[i]: the facet X.facets[i] carries a point with f constant on its orbit.
    std::vector<bool> feasible;
};

/**
 * Exact decision of whether f is constant on some orbit. On a facet with
 * barycentric coordinates l, the orbit points share l on the translated
 * facets, so each condition f(gx) = f(x) is linear in l; feasibility of
 * the resulting system over the closed simplex is decided in rational
 * arithmetic.
 */
CoincidenceCertificate coincidence_set(const FreeSphereComplex& x, const PLFunction& f,
                                       Execution exec = Execution::Parallel);

/// min over points of the facet of max_g |f(gx) - f(x)|: zero iff the facet meets
/// the coincidence set. Floating-point LP.
double facet_spread(const FreeSphereComplex& x, const PLFunction& f, std::size_t facet);
/// Minimum of facet_spread over all facets.
double orbit_spread(const FreeSphereComplex& x, const PLFunction& f, Execution exec = Execution::Parallel);

struct SearchOptions {
    int restarts = 50;
    int iterations = 400;
    std::uint64_t seed = 0;
    double initial_temperature = 0.05;
    double step = 0.3;
};

struct RestartSummary {
    double spread = 0.0;
    bool certified = false;
};

struct SearchResult {
    std::optional<PLFunction> certified;
    PLFunction best;
    double best_spread = 0.0;
    int certified_restarts = 0;
    std::vector<RestartSummary> restarts;
};

/**
 * Simulated annealing over vertex values in [-1, 1] maximizing orbit_spread.
 * Every restart's final candidate is certified exactly with coincidence_set;
 * restarts are seeded by (seed, restart index).
 */
SearchResult search_coincidence_free(const FreeSphereComplex& x, const SearchOptions& options,
                                     Execution exec = Execution::Parallel);

/// f(v_i) = sin(2 pi i / M) along polygon 0 and 0 elsewhere.
PLFunction sine_function(const FreeSphereComplex& x);

// ---------------------------------------------------------------------------
// Measure-valued sections over a mesh of the orbit space

/// Point of X given by a carrier facet and barycentric coordinates on it.
struct MeshPoint {
    Simplex carrier;
    std::vector<double> barycentric;
    Point coords;
};

/// One mesh point y of X/G: its fiber (orbit) and the measure on it.
struct SectionFiber {
    std::vector<MeshPoint> fiber;  // fiber[g] = g * fiber[0]
    std::vector<double> weights;   // measure of each fiber point
};

/// Neighbouring mesh points of X: fiber a, element ga and fiber b, element gb.
struct MeshEdge {
    std::size_t a = 0;
    int ga = 0;
    std::size_t b = 0;
    int gb = 0;
};

struct SectionData {
    int group_order = 0;
    int mesh_level = 0;
    std::vector<SectionFiber> fibers;
    std::vector<MeshEdge> edges;

    /// Measure at fiber i on the realization.
    FiniteMeasure measure(std::size_t i) const;
};

/// Orbit-space mesh: lattice points with denominator lcm(1..d+1) 2^level on
/// every facet (this contains every vertex and barycenter), one entry per orbit.
SectionData build_mesh(const FreeSphereComplex& x, int level);

/**
 * Measure-valued section from a coincidence-free f. S+(y) is the argmax of f
 * on the fiber; Y collects mesh points outside every S+ plus midpoints of mesh
 * edges where the argmax changes; mu(y) weights x in S+(y) by d(x, Y).
 * Throws EmptinessViolated when f is constant on a mesh fiber.
 */
SectionData section_from_function(const FreeSphereComplex& x, const PLFunction& f, int mesh_level);

struct SectionCheck {
    std::size_t max_support = 0;
    double max_mass_error = 0.0;
    /// Max W1 on the orbit space between the pushed-forward measure and the Dirac mass.
    double max_pushforward_error = 0.0;
    std::size_t max_pushforward_support = 0;
    /// Max W1(mu(y), mu(y')) / d(y, y') over mesh neighbours.
    double max_continuity_ratio = 0.0;
    double max_jump = 0.0;
};

SectionCheck check_section(const FreeSphereComplex& x, const SectionData& s);

struct FunctionFromSection {
    PLFunction interpolant;             // distance to A at the vertices
    std::vector<double> mesh_values;    // distance to A at fiber[0] of every mesh fiber, then fiber[1], ...
    std::size_t anchor_points = 0;      // |A|
    double min_fiber_spread = 0.0;      // min over fibers of max f - min f
    bool mesh_coincidence_free = false;
};

/**
 * A = union of argmax sets of the section measures; f = distance to A.
 * Throws SupportBoundViolated when a measure has |G| atoms and
 * SectionPropertyViolated when weights do not form a probability measure on
 * the fiber.
 */
FunctionFromSection function_from_section(const FreeSphereComplex& x, const SectionData& s);

}  // namespace dtc

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "dtc/errors.hpp"
#include "dtc/execution.hpp"
#include "dtc/groups.hpp"

namespace dtc {

/// Sorted, duplicate-free list of vertex labels.
using Simplex = std::vector<int>;

/**
 * Finite abstract simplicial complex, closed under taking faces. Simplices are
 * stored by dimension in lexicographic order, which also fixes the basis order
 * of the chain groups.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    static SimplicialComplex from_facets(const std::vector<Simplex>& facets);

    /// Adds sigma (sorted and deduplicated first) together with all its faces.
    void add_simplex(Simplex sigma);

    bool empty() const { return by_dim_.empty(); }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t size() const;
    bool contains(const Simplex& sigma) const;

    const std::set<Simplex>& simplices(int dim) const;
    std::vector<int> vertices() const;
    std::vector<Simplex> all_simplices() const;
    /// Maximal simplices.
    std::vector<Simplex> facets() const;
    /// f_0, f_1, ..., f_dim.
    std::vector<std::size_t> f_vector() const;
    long long euler_characteristic() const;

    bool operator==(const SimplicialComplex&) const = default;

private:
    std::vector<std::set<Simplex>> by_dim_;
};

/// All subsets of {0..points-1} with at most n+1 elements: the model of the
/// space of measures with at most n+1 atoms on a finite set of that size.
/// n = -1 gives the empty complex.
SimplicialComplex measure_skeleton(int points, int n);
SimplicialComplex measure_skeleton(std::span<const int> labels, int n);

/// sigma u tau for sigma in K or empty, tau in L or empty, not both empty.
/// Throws VertexCollision if the vertex sets meet.
SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l);

/**
 * Support-bound decomposition: the complex of subsets of A u B with at most n
 * elements equals the union over i of the joins of the subsets of A with at
 * most i elements and the subsets of B with at most n - i elements (the empty
 * complex for bound 0). |A| = a, |B| = b.
 */
bool decomposition_check(int a, int b, int n);

// ---------------------------------------------------------------------------
// Homology

/// Dense integer matrix, row-major by rows.
template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Boundary map C_dim -> C_{dim-1} in the lexicographic simplex bases. For
/// dim = 0 this is the augmentation C_0 -> Z (a single row of ones).
Matrix<long long> boundary_matrix(const SimplicialComplex& k, int dim);

/// Diagonal of the Smith normal form (invariant factors d_1 | d_2 | ..., all
/// positive). Runs in 64-bit arithmetic and restarts with arbitrary precision
/// on overflow.
std::vector<BigInt> smith_invariant_factors(const Matrix<long long>& m);

struct HomologyGroup {
    long long rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1
    bool operator==(const HomologyGroup&) const = default;
};

/// Reduced integral homology in degrees 0..dim (empty for the empty complex).
std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& k, Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// Group actions

/**
 * Simplicial action of a finite group on a complex whose vertices are
 * 0..V-1: permutations[g][v] is the image of vertex v under g. The
 * constructor checks that each permutation is a simplicial automorphism and
 * that g -> permutations[g] is a homomorphism.
 */
class GComplexAction {
public:
    GComplexAction(SimplicialComplex complex, FiniteGroup group, std::vector<std::vector<int>> permutations);

    const SimplicialComplex& complex() const { return complex_; }
    const FiniteGroup& group() const { return group_; }
    int apply(Element g, int v) const { return perms_[g][v]; }
    Simplex apply(Element g, const Simplex& sigma) const;

    /// No non-identity element maps a simplex to itself (as a set).
    bool is_free() const { return free_; }

private:
    SimplicialComplex complex_;
    FiniteGroup group_;
    std::vector<std::vector<int>> perms_;
    bool free_ = true;
};

/**
 * Fixed points of a subgroup H. A point is fixed exactly when its carrier
 * simplex is H-invariant as a set, and then the barycenter of that simplex is
 * fixed. The fixed set is therefore the subcomplex of the barycentric
 * subdivision spanned by barycenters of invariant simplices.
 */
struct FixedSet {
    std::vector<Simplex> invariant_simplices;
    /// Vertices = indices into invariant_simplices, simplices = inclusion chains.
    SimplicialComplex subdivision;
    /// Original vertices fixed by every element of H.
    std::vector<int> fixed_vertices;
    bool empty = true;
};

FixedSet fixed_subcomplex(const GComplexAction& action, std::span<const Element> h);

/// The full simplex on the elements of G with G x G acting by (a, b)x = a x b^-1.
/// Elements of G x G are indexed as in FiniteGroup::direct_product.
GComplexAction double_action_on_simplex(const FiniteGroup& g);

/// Translation action of G on the complex of subsets with at most n+1 elements.
GComplexAction translation_action(const FiniteGroup& g, int n);

}  // namespace dtc

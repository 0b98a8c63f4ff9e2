#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dtc/errors.hpp"
#include "dtc/execution.hpp"

namespace dtc {

using BigInt = boost::multiprecision::cpp_int;

/// Group elements of a FiniteGroup are indices 0..order-1.
using Element = int;
using ElementPair = std::pair<Element, Element>;

/**
 * Finite group given by its multiplication table. The constructor checks
 * closure, associativity, the identity and inverses, so every instance is a
 * genuine group.
 */
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names = {});

    static FiniteGroup cyclic(int p);
    /// Z_{n1} x Z_{n2} x ... with elements ordered lexicographically.
    static FiniteGroup product_of_cyclics(std::span<const int> orders);
    /// S_n (n <= 6) acting on {1..n}; (s t)(i) = s(t(i)). Names in cycle notation, "e" for the identity.
    static FiniteGroup symmetric(int n);
    /// G x H with (a, b) at index a * |H| + b.
    static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

    /// Text format: the order N on the first line, then N rows of N element indices.
    static FiniteGroup parse(std::istream& in);
    /// "cyclic:5", "product:2,2", "symmetric:3".
    static FiniteGroup builtin(const std::string& spec);

    int order() const { return static_cast<int>(table_.size()); }
    Element identity() const { return identity_; }
    Element mul(Element a, Element b) const { return table_[a][b]; }
    Element inverse(Element a) const { return inverse_[a]; }
    Element power(Element a, long long k) const;
    bool commute(Element a, Element b) const { return mul(a, b) == mul(b, a); }
    bool is_abelian() const;

    const std::string& name(Element a) const { return names_[a]; }
    /// Index of the element with the given name; throws InvalidArgument when absent.
    Element find(const std::string& name) const;
    const std::vector<std::vector<Element>>& table() const { return table_; }

private:
    std::vector<std::vector<Element>> table_;
    std::vector<Element> inverse_;
    std::vector<std::string> names_;
    Element identity_ = 0;
};

// ---------------------------------------------------------------------------
// Infinite groups in normal form

/// Unitriangular 3x3 integer matrix [[1, a, c], [0, 1, b], [0, 0, 1]].
struct HeisenbergElement {
    BigInt a, b, c;

    HeisenbergElement operator*(const HeisenbergElement& o) const { return {a + o.a, b + o.b, c + o.c + a * o.b}; }
    bool operator==(const HeisenbergElement&) const = default;
    bool operator<(const HeisenbergElement& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    std::string str() const;
};

HeisenbergElement power(const HeisenbergElement& x, int k);
/// (a, b, c)^k = (k a, k b, k c + C(k, 2) a b).
HeisenbergElement power_closed_form(const HeisenbergElement& x, int k);

/// x^m y^n in <x, y | y x y^-1 = x^-1>, the Klein bottle group.
struct KleinBottleElement {
    std::int64_t m = 0;
    std::int64_t n = 0;

    KleinBottleElement operator*(const KleinBottleElement& o) const {
        return {m + ((n % 2 == 0) ? o.m : -o.m), n + o.n};
    }
    auto operator<=>(const KleinBottleElement&) const = default;
    std::string str() const;

    /// The generators of the presentation <a, b | a^2 = b^2>: a = xy, b = y.
    static KleinBottleElement a() { return {1, 1}; }
    static KleinBottleElement b() { return {0, 1}; }
};

KleinBottleElement power(const KleinBottleElement& x, int k);

// ---------------------------------------------------------------------------
// Frobenius maps

struct FrobeniusResult {
    bool injective = true;
    std::optional<ElementPair> witness;  // x != y with x^k = y^k
};

FrobeniusResult frobenius_injective(const FiniteGroup& g, int k);

enum class GroupFamily { Heisenberg, KleinBottle };

struct WitnessSearch {
    GroupFamily family = GroupFamily::Heisenberg;
    int bound = 0;
    int k = 0;
    std::size_t elements_tested = 0;
    std::optional<std::pair<std::string, std::string>> witness;
    /// Heisenberg only: elements whose iterated power disagrees with the closed form.
    std::size_t formula_mismatches = 0;
    bool formula_checked = false;
};

/// All elements with coordinates in [-bound, bound]; reports a pair with equal k-th powers.
WitnessSearch frobenius_witness_search(GroupFamily family, int bound, int k);

// ---------------------------------------------------------------------------
// Centralizers and the G x G action on the simplex spanned by G

/// Z(S): elements commuting with every element of S (the whole group for empty S).
std::vector<Element> centralizer(const FiniteGroup& g, std::span<const Element> s);

struct PropertyNViolation {
    Element x;
    std::vector<Element> s;
    int n;
};

/// Triples (x, S, n) with |S| in {1, 2}, 1 <= n <= max_exponent, x^n in Z(S) and x not in Z(S).
std::vector<PropertyNViolation> property_N_check(const FiniteGroup& g, int max_exponent);

/// (a x b)(x) = a x b^-1.
inline Element double_action(const FiniteGroup& g, Element a, Element b, Element x) {
    return g.mul(g.mul(a, x), g.inverse(b));
}

/// Point sum t_i gamma_i of the simplex spanned by the group; weights positive, summing to 1.
struct SimplexPoint {
    std::vector<std::pair<Element, double>> support;

    static SimplexPoint vertex(Element gamma) { return {{{gamma, 1.0}}}; }
    static SimplexPoint uniform(std::span<const Element> elements);
    /// Throws InvalidArgument on repeated vertices or invalid weights.
    void validate(const FiniteGroup& g) const;
};

struct IsotropyResult {
    std::vector<ElementPair> isotropy;
    /// Every isotropy element fixes each support vertex individually.
    bool vertexwise_fixed = true;
};

/// Pairs (a, b) mapping the support of z onto itself with matching weights.
IsotropyResult simplex_isotropy(const FiniteGroup& g, const SimplexPoint& z, Execution exec = Execution::Parallel);

/// Isotropy of the vertex gamma: {(x, gamma^-1 x gamma)}.
std::vector<ElementPair> vertex_isotropy(const FiniteGroup& g, Element gamma);

/// (e, c) diag(G) (e, c)^-1 = {(x, c x c^-1)}.
std::vector<ElementPair> conjugate_diagonal(const FiniteGroup& g, Element c);

/// H_{b,S} = {(a, b a b^-1) : a in Z(S)}.
std::vector<ElementPair> family_D_subgroup(const FiniteGroup& g, Element b, std::span<const Element> s);

/// Pairs a < b with Z(a) != Z(b) and Z(a) meeting Z(b) in more than the identity.
std::vector<ElementPair> centralizer_dichotomy_violations(const FiniteGroup& g);

}  // namespace dtc

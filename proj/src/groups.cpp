#include "dtc/groups.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "dtc/errors.hpp"

namespace dtc {

namespace {

constexpr double kWeightTolerance = 1e-12;

std::string cycle_notation(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    std::string out;
    for (int start = 0; start < n; ++start) {
        if (seen[start] || perm[start] == start) continue;
        out += '(';
        for (int i = start; !seen[i]; i = perm[i]) {
            seen[i] = true;
            out += std::to_string(i + 1);
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

template <class E, class Pow>
void search_box(WitnessSearch& result, const std::vector<E>& elements, int k, Pow&& pow) {
    std::map<E, E> seen;
    for (const E& e : elements) {
        E image = pow(e, k);
        auto [it, inserted] = seen.emplace(std::move(image), e);
        if (!inserted && !result.witness) result.witness = std::make_pair(it->second.str(), e.str());
    }
    result.elements_tested = elements.size();
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
    const int n = order();
    if (n == 0) throw InvalidArgument("a group has at least one element");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw InvalidArgument("multiplication table is not square");
        for (Element e : row)
            if (e < 0 || e >= n) throw InvalidArgument("multiplication table entry out of range");
    }

    identity_ = -1;
    for (Element e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (Element a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) identity_ = e;
    }
    if (identity_ < 0) throw InvalidArgument("multiplication table has no identity");

    inverse_.assign(n, -1);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    if (std::find(inverse_.begin(), inverse_.end(), -1) != inverse_.end())
        throw InvalidArgument("multiplication table has an element without inverse");

    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw InvalidArgument("multiplication table is not associative");

    if (names_.empty()) {
        for (Element a = 0; a < n; ++a) names_.push_back(std::to_string(a));
    } else if (static_cast<int>(names_.size()) != n) {
        throw InvalidArgument("one name per element expected");
    }
}

FiniteGroup FiniteGroup::cyclic(int p) {
    if (p < 1) throw InvalidArgument("cyclic group order must be positive");
    std::vector<std::vector<Element>> table(p, std::vector<Element>(p));
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) table[a][b] = (a + b) % p;
    return FiniteGroup(std::move(table));
}

FiniteGroup FiniteGroup::product_of_cyclics(std::span<const int> orders) {
    FiniteGroup result = cyclic(1);
    bool first = true;
    for (int q : orders) {
        result = first ? cyclic(q) : direct_product(result, cyclic(q));
        first = false;
    }
    return result;
}

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1 || n > 6) throw InvalidArgument("symmetric groups are built for 1 <= n <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::map<std::vector<int>, Element> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Element>(i);

    const std::size_t order = perms.size();
    std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
    std::vector<int> composed(n);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            for (int i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
            table[a][b] = index.at(composed);
        }
    std::vector<std::string> names;
    for (const auto& p : perms) names.push_back(cycle_notation(p));
    return FiniteGroup(std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int ng = g.order();
    const int nh = h.order();
    std::vector<std::vector<Element>> table(ng * nh, std::vector<Element>(ng * nh));
    std::vector<std::string> names;
    for (int a1 = 0; a1 < ng; ++a1)
        for (int b1 = 0; b1 < nh; ++b1) {
            names.push_back("(" + g.name(a1) + "," + h.name(b1) + ")");
            for (int a2 = 0; a2 < ng; ++a2)
                for (int b2 = 0; b2 < nh; ++b2)
                    table[a1 * nh + b1][a2 * nh + b2] = g.mul(a1, a2) * nh + h.mul(b1, b2);
        }
    return FiniteGroup(std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::parse(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n < 1) throw InvalidArgument("group table: expected a positive order on the first line");
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (auto& row : table)
        for (Element& e : row)
            if (!(in >> e)) throw InvalidArgument("group table: expected " + std::to_string(n * n) + " entries");
    return FiniteGroup(std::move(table));
}

FiniteGroup FiniteGroup::builtin(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (arg.empty()) throw InvalidArgument("builtin group spec needs an argument: '" + spec + "'");
    if (kind == "cyclic") return cyclic(std::stoi(arg));
    if (kind == "product") {
        const auto orders = parse_int_list(arg);
        return product_of_cyclics(orders);
    }
    if (kind == "symmetric") return symmetric(std::stoi(arg));
    throw InvalidArgument("unknown builtin group '" + spec + "'");
}

Element FiniteGroup::power(Element a, long long k) const {
    if (k < 0) {
        a = inverse(a);
        k = -k;
    }
    Element result = identity_;
    Element base = a;
    while (k > 0) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < order(); ++a)
        for (Element b = a + 1; b < order(); ++b)
            if (!commute(a, b)) return false;
    return true;
}

Element FiniteGroup::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw InvalidArgument("no element named '" + name + "'");
    return static_cast<Element>(it - names_.begin());
}

std::string HeisenbergElement::str() const {
    return "(" + a.str() + "," + b.str() + "," + c.str() + ")";
}

HeisenbergElement power(const HeisenbergElement& x, int k) {
    if (k < 0) throw InvalidArgument("negative powers are not supported");
    HeisenbergElement result{0, 0, 0};
    for (int i = 0; i < k; ++i) result = result * x;
    return result;
}

HeisenbergElement power_closed_form(const HeisenbergElement& x, int k) {
    const BigInt kk = k;
    const BigInt choose2 = kk * (kk - 1) / 2;
    return {kk * x.a, kk * x.b, kk * x.c + choose2 * x.a * x.b};
}

std::string KleinBottleElement::str() const {
    return "x^" + std::to_string(m) + " y^" + std::to_string(n);
}

KleinBottleElement power(const KleinBottleElement& x, int k) {
    if (k < 0) throw InvalidArgument("negative powers are not supported");
    KleinBottleElement result{0, 0};
    for (int i = 0; i < k; ++i) result = result * x;
    return result;
}

FrobeniusResult frobenius_injective(const FiniteGroup& g, int k) {
    if (k < 1) throw InvalidArgument("Frobenius exponent must be at least 1");
    FrobeniusResult result;
    std::vector<Element> preimage(g.order(), -1);
    for (Element x = 0; x < g.order(); ++x) {
        const Element image = g.power(x, k);
        if (preimage[image] >= 0) {
            result.injective = false;
            result.witness = ElementPair{preimage[image], x};
            return result;
        }
        preimage[image] = x;
    }
    return result;
}

WitnessSearch frobenius_witness_search(GroupFamily family, int bound, int k) {
    if (bound < 1) throw InvalidArgument("search bound must be at least 1");
    if (k < 2) throw InvalidArgument("Frobenius exponent must be at least 2");
    WitnessSearch result;
    result.family = family;
    result.bound = bound;
    result.k = k;

    if (family == GroupFamily::Heisenberg) {
        std::vector<HeisenbergElement> elements;
        for (int a = -bound; a <= bound; ++a)
            for (int b = -bound; b <= bound; ++b)
                for (int c = -bound; c <= bound; ++c) elements.push_back({a, b, c});
        search_box(result, elements, k, [](const HeisenbergElement& e, int kk) { return power(e, kk); });
        result.formula_checked = true;
        for (const auto& e : elements)
            if (power(e, k) != power_closed_form(e, k)) ++result.formula_mismatches;
    } else {
        std::vector<KleinBottleElement> elements;
        for (int m = -bound; m <= bound; ++m)
            for (int n = -bound; n <= bound; ++n) elements.push_back({m, n});
        search_box(result, elements, k, [](const KleinBottleElement& e, int kk) { return power(e, kk); });
    }
    return result;
}

std::vector<Element> centralizer(const FiniteGroup& g, std::span<const Element> s) {
    std::vector<Element> out;
    for (Element x = 0; x < g.order(); ++x)
        if (std::all_of(s.begin(), s.end(), [&](Element a) { return g.commute(x, a); })) out.push_back(x);
    return out;
}

std::vector<PropertyNViolation> property_N_check(const FiniteGroup& g, int max_exponent) {
    std::vector<std::vector<Element>> sets;
    for (Element a = 0; a < g.order(); ++a) {
        sets.push_back({a});
        for (Element b = a + 1; b < g.order(); ++b) sets.push_back({a, b});
    }
    std::vector<PropertyNViolation> out;
    for (const auto& s : sets) {
        const auto z = centralizer(g, s);
        std::vector<bool> in_z(g.order(), false);
        for (Element e : z) in_z[e] = true;
        for (Element x = 0; x < g.order(); ++x) {
            if (in_z[x]) continue;
            for (int n = 1; n <= max_exponent; ++n)
                if (in_z[g.power(x, n)]) out.push_back({x, s, n});
        }
    }
    return out;
}

SimplexPoint SimplexPoint::uniform(std::span<const Element> elements) {
    SimplexPoint z;
    for (Element e : elements) z.support.emplace_back(e, 1.0 / static_cast<double>(elements.size()));
    return z;
}

void SimplexPoint::validate(const FiniteGroup& g) const {
    if (support.empty()) throw InvalidArgument("simplex point needs a nonempty support");
    double total = 0.0;
    std::vector<bool> seen(g.order(), false);
    for (const auto& [e, t] : support) {
        if (e < 0 || e >= g.order()) throw InvalidArgument("support element outside the group");
        if (seen[e]) throw InvalidArgument("support elements must be distinct");
        seen[e] = true;
        if (!(t > 0.0)) throw InvalidArgument("support weights must be positive");
        total += t;
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("support weights must sum to 1");
}

IsotropyResult simplex_isotropy(const FiniteGroup& g, const SimplexPoint& z, Execution exec) {
    z.validate(g);
    const int n = g.order();
    std::vector<double> weight(n, 0.0);
    for (const auto& [e, t] : z.support) weight[e] = t;

    // Row a: the b's such that (a, b) fixes z, and whether each fixes the support pointwise.
    std::vector<std::vector<std::pair<Element, bool>>> rows(n);
    auto scan = [&](Element a) {
        for (Element b = 0; b < n; ++b) {
            bool fixes = true;
            bool pointwise = true;
            for (const auto& [e, t] : z.support) {
                const Element image = double_action(g, a, b, e);
                if (weight[image] == 0.0 || std::abs(weight[image] - t) > kWeightTolerance) {
                    fixes = false;
                    break;
                }
                pointwise = pointwise && image == e;
            }
            if (fixes) rows[a].emplace_back(b, pointwise);
        }
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (Element a = 0; a < n; ++a) scan(a);
    } else {
        for (Element a = 0; a < n; ++a) scan(a);
    }

    IsotropyResult result;
    for (Element a = 0; a < n; ++a)
        for (const auto& [b, pointwise] : rows[a]) {
            result.isotropy.emplace_back(a, b);
            result.vertexwise_fixed = result.vertexwise_fixed && pointwise;
        }
    return result;
}

std::vector<ElementPair> vertex_isotropy(const FiniteGroup& g, Element gamma) {
    std::vector<ElementPair> out;
    for (Element x = 0; x < g.order(); ++x)
        out.emplace_back(x, g.mul(g.mul(g.inverse(gamma), x), gamma));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementPair> conjugate_diagonal(const FiniteGroup& g, Element c) {
    std::vector<ElementPair> out;
    for (Element x = 0; x < g.order(); ++x) out.emplace_back(x, g.mul(g.mul(c, x), g.inverse(c)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementPair> family_D_subgroup(const FiniteGroup& g, Element b, std::span<const Element> s) {
    std::vector<ElementPair> out;
    for (Element a : centralizer(g, s)) out.emplace_back(a, g.mul(g.mul(b, a), g.inverse(b)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementPair> centralizer_dichotomy_violations(const FiniteGroup& g) {
    std::vector<std::vector<Element>> z(g.order());
    for (Element a = 0; a < g.order(); ++a) {
        const Element s[] = {a};
        z[a] = centralizer(g, s);
    }
    std::vector<ElementPair> out;
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = a + 1; b < g.order(); ++b) {
            if (z[a] == z[b]) continue;
            std::vector<Element> common;
            std::set_intersection(z[a].begin(), z[a].end(), z[b].begin(), z[b].end(), std::back_inserter(common));
            if (common.size() > 1) out.emplace_back(a, b);
        }
    return out;
}

}  // namespace dtc

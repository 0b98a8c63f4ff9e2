#include "dtc/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "dtc/errors.hpp"

namespace dtc {

namespace {

struct Overflow {};

// Checked arithmetic for the 64-bit pass; BigInt never overflows.
inline long long sub_mul(long long a, long long q, long long b) {
    long long prod = 0;
    long long out = 0;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
    return out;
}
inline BigInt sub_mul(const BigInt& a, const BigInt& q, const BigInt& b) { return a - q * b; }

inline long long abs_value(long long a) {
    if (a == std::numeric_limits<long long>::min()) throw Overflow{};
    return a < 0 ? -a : a;
}
inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

template <class T>
std::vector<T> diagonalize(Matrix<T> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<T> diag;

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pr = rows, pc = cols;
        T best{};
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs_value(a[i][j]) < best)) {
                    best = abs_value(a[i][j]);
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (auto& row : a) std::swap(row[t], row[pc]);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const T q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    if (a[t][j] != 0) a[i][j] = sub_mul(a[i][j], q, a[t][j]);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const T q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    if (a[i][t] != 0) a[i][j] = sub_mul(a[i][j], q, a[i][t]);
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
            // A nonzero remainder is smaller than the pivot: move it in.
            std::size_t ri = t, cj = t;
            T small = abs_value(a[t][t]);
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0 && abs_value(a[i][t]) < small) {
                    small = abs_value(a[i][t]);
                    ri = i;
                    cj = t;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0 && abs_value(a[t][j]) < small) {
                    small = abs_value(a[t][j]);
                    ri = t;
                    cj = j;
                }
            if (ri != t) std::swap(a[t], a[ri]);
            if (cj != t)
                for (auto& row : a) std::swap(row[t], row[cj]);
        }
        diag.push_back(abs_value(a[t][t]));
    }
    return diag;
}

std::vector<BigInt> invariant_factors(std::vector<BigInt> d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 1) continue;
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const BigInt g = boost::multiprecision::gcd(d[i], d[j]);
            if (g == d[i]) continue;
            const BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

int sign_of_face(std::size_t removed) { return removed % 2 == 0 ? 1 : -1; }

}  // namespace

// ---------------------------------------------------------------------------

SimplicialComplex SimplicialComplex::from_facets(const std::vector<Simplex>& facets) {
    SimplicialComplex k;
    for (const auto& f : facets) k.add_simplex(f);
    return k;
}

void SimplicialComplex::add_simplex(Simplex sigma) {
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    if (sigma.empty()) return;
    const std::size_t dim = sigma.size() - 1;
    if (by_dim_.size() <= dim) by_dim_.resize(dim + 1);
    if (!by_dim_[dim].insert(sigma).second) return;  // faces already present
    if (sigma.size() == 1) return;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        Simplex face;
        face.reserve(sigma.size() - 1);
        for (std::size_t j = 0; j < sigma.size(); ++j)
            if (j != i) face.push_back(sigma[j]);
        add_simplex(std::move(face));
    }
}

std::size_t SimplicialComplex::size() const {
    std::size_t n = 0;
    for (const auto& s : by_dim_) n += s.size();
    return n;
}

bool SimplicialComplex::contains(const Simplex& sigma) const {
    if (sigma.empty() || sigma.size() > by_dim_.size()) return false;
    return by_dim_[sigma.size() - 1].contains(sigma);
}

const std::set<Simplex>& SimplicialComplex::simplices(int dim) const {
    static const std::set<Simplex> none;
    if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[dim];
}

std::vector<int> SimplicialComplex::vertices() const {
    std::vector<int> out;
    for (const auto& s : simplices(0)) out.push_back(s[0]);
    return out;
}

std::vector<Simplex> SimplicialComplex::all_simplices() const {
    std::vector<Simplex> out;
    for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
}

std::vector<Simplex> SimplicialComplex::facets() const {
    std::vector<Simplex> out;
    for (int d = 0; d <= dimension(); ++d)
        for (const auto& sigma : by_dim_[d]) {
            bool maximal = true;
            if (d + 1 <= dimension())
                for (const auto& tau : by_dim_[d + 1])
                    if (std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end())) {
                        maximal = false;
                        break;
                    }
            if (maximal) out.push_back(sigma);
        }
    return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& level : by_dim_) f.push_back(level.size());
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (std::size_t d = 0; d < by_dim_.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[d].size());
    return chi;
}

SimplicialComplex measure_skeleton(std::span<const int> labels, int n) {
    SimplicialComplex k;
    if (n < 0 || labels.empty()) return k;
    std::vector<int> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t max_size = std::min<std::size_t>(static_cast<std::size_t>(n) + 1, sorted.size());
    // Every subset of size max_size generates the skeleton.
    std::vector<bool> pick(sorted.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(max_size), true);
    do {
        Simplex sigma;
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (pick[i]) sigma.push_back(sorted[i]);
        k.add_simplex(std::move(sigma));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return k;
}

SimplicialComplex measure_skeleton(int points, int n) {
    std::vector<int> labels(std::max(points, 0));
    std::iota(labels.begin(), labels.end(), 0);
    return measure_skeleton(labels, n);
}

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l) {
    const auto vk = k.vertices();
    const auto vl = l.vertices();
    std::vector<int> common;
    std::set_intersection(vk.begin(), vk.end(), vl.begin(), vl.end(), std::back_inserter(common));
    if (!common.empty()) throw VertexCollision("join needs disjoint vertex sets; shared vertex " + std::to_string(common[0]));

    auto with_empty = [](const SimplicialComplex& c) {
        std::vector<Simplex> out{Simplex{}};
        for (auto& s : c.all_simplices()) out.push_back(std::move(s));
        return out;
    };
    SimplicialComplex out;
    for (const auto& sigma : with_empty(k))
        for (const auto& tau : with_empty(l)) {
            if (sigma.empty() && tau.empty()) continue;
            Simplex u = sigma;
            u.insert(u.end(), tau.begin(), tau.end());
            out.add_simplex(std::move(u));
        }
    return out;
}

bool decomposition_check(int a, int b, int n) {
    if (a < 0 || b < 0 || n < 0) throw InvalidArgument("decomposition_check needs nonnegative sizes");
    std::vector<int> la(a), lb(b);
    std::iota(la.begin(), la.end(), 0);
    std::iota(lb.begin(), lb.end(), a);
    std::vector<int> all(la);
    all.insert(all.end(), lb.begin(), lb.end());

    const SimplicialComplex whole = measure_skeleton(all, n - 1);
    SimplicialComplex pieces;
    for (int i = 0; i <= n; ++i)
        for (const auto& s : join(measure_skeleton(la, i - 1), measure_skeleton(lb, n - i - 1)).all_simplices())
            pieces.add_simplex(s);
    return whole == pieces;
}

Matrix<long long> boundary_matrix(const SimplicialComplex& k, int dim) {
    const auto& cols = k.simplices(dim);
    if (dim == 0) return {std::vector<long long>(cols.size(), 1)};
    const auto& rows = k.simplices(dim - 1);
    std::map<Simplex, std::size_t> row_index;
    for (const auto& s : rows) row_index.emplace(s, row_index.size());

    Matrix<long long> m(rows.size(), std::vector<long long>(cols.size(), 0));
    std::size_t c = 0;
    for (const auto& sigma : cols) {
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            Simplex face;
            for (std::size_t j = 0; j < sigma.size(); ++j)
                if (j != i) face.push_back(sigma[j]);
            m[row_index.at(face)][c] = sign_of_face(i);
        }
        ++c;
    }
    return m;
}

std::vector<BigInt> smith_invariant_factors(const Matrix<long long>& m) {
    std::vector<BigInt> diag;
    try {
        for (long long d : diagonalize(m)) diag.emplace_back(d);
    } catch (const Overflow&) {
        Matrix<BigInt> big(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) big[i].assign(m[i].begin(), m[i].end());
        diag = diagonalize(std::move(big));
    }
    return invariant_factors(std::move(diag));
}

std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& k, Execution exec) {
    if (k.empty()) return {};
    const int top = k.dimension();
    // factors[d] = invariant factors of the boundary C_d -> C_{d-1} (augmentation at d = 0).
    std::vector<std::vector<BigInt>> factors(top + 1);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int d = 0; d <= top; ++d) factors[d] = smith_invariant_factors(boundary_matrix(k, d));
    } else {
        for (int d = 0; d <= top; ++d) factors[d] = smith_invariant_factors(boundary_matrix(k, d));
    }

    const auto f = k.f_vector();
    std::vector<HomologyGroup> out(top + 1);
    for (int d = 0; d <= top; ++d) {
        const auto rank_here = static_cast<long long>(factors[d].size());
        const long long rank_above = d < top ? static_cast<long long>(factors[d + 1].size()) : 0;
        out[d].rank = static_cast<long long>(f[d]) - rank_here - rank_above;
        if (d < top)
            for (const auto& e : factors[d + 1])
                if (e > 1) out[d].torsion.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------------------

GComplexAction::GComplexAction(SimplicialComplex complex, FiniteGroup group, std::vector<std::vector<int>> permutations)
    : complex_(std::move(complex)), group_(std::move(group)), perms_(std::move(permutations)) {
    const auto verts = complex_.vertices();
    const int nv = static_cast<int>(verts.size());
    for (int i = 0; i < nv; ++i)
        if (verts[i] != i) throw InvalidArgument("acted-on complexes must have vertices 0..V-1");
    if (static_cast<int>(perms_.size()) != group_.order()) throw InvalidArgument("one permutation per group element expected");
    for (const auto& perm : perms_) {
        if (static_cast<int>(perm.size()) != nv) throw InvalidArgument("permutation has the wrong length");
        std::vector<bool> hit(nv, false);
        for (int v : perm) {
            if (v < 0 || v >= nv || hit[v]) throw InvalidArgument("vertex map is not a permutation");
            hit[v] = true;
        }
    }
    for (Element a = 0; a < group_.order(); ++a)
        for (Element b = 0; b < group_.order(); ++b)
            for (int v = 0; v < nv; ++v)
                if (perms_[group_.mul(a, b)][v] != perms_[a][perms_[b][v]])
                    throw InvalidArgument("vertex permutations do not form a group action");

    const auto all = complex_.all_simplices();
    for (Element g = 0; g < group_.order(); ++g)
        for (const auto& sigma : all) {
            const Simplex image = apply(g, sigma);
            if (!complex_.contains(image)) throw InvalidArgument("vertex permutation is not simplicial");
            if (g != group_.identity() && image == sigma) free_ = false;
        }
}

Simplex GComplexAction::apply(Element g, const Simplex& sigma) const {
    Simplex out;
    out.reserve(sigma.size());
    for (int v : sigma) out.push_back(perms_[g][v]);
    std::sort(out.begin(), out.end());
    return out;
}

FixedSet fixed_subcomplex(const GComplexAction& action, std::span<const Element> h) {
    FixedSet out;
    for (const auto& sigma : action.complex().all_simplices())
        if (std::all_of(h.begin(), h.end(), [&](Element g) { return action.apply(g, sigma) == sigma; }))
            out.invariant_simplices.push_back(sigma);
    for (int v : action.complex().vertices())
        if (std::all_of(h.begin(), h.end(), [&](Element g) { return action.apply(g, v) == v; }))
            out.fixed_vertices.push_back(v);
    out.empty = out.invariant_simplices.empty();

    const auto& inv = out.invariant_simplices;
    auto proper_face = [](const Simplex& a, const Simplex& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<int> chain;
    std::function<void(std::size_t)> extend = [&](std::size_t last) {
        bool extended = false;
        for (std::size_t j = 0; j < inv.size(); ++j)
            if (proper_face(inv[last], inv[j])) {
                extended = true;
                chain.push_back(static_cast<int>(j));
                extend(j);
                chain.pop_back();
            }
        if (!extended) out.subdivision.add_simplex(chain);
    };
    for (std::size_t i = 0; i < inv.size(); ++i) {
        chain.assign(1, static_cast<int>(i));
        extend(i);
    }
    return out;
}

GComplexAction double_action_on_simplex(const FiniteGroup& g) {
    const int n = g.order();
    FiniteGroup gg = FiniteGroup::direct_product(g, g);
    std::vector<std::vector<int>> perms(n * n, std::vector<int>(n));
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element x = 0; x < n; ++x) perms[a * n + b][x] = double_action(g, a, b, x);
    return GComplexAction(measure_skeleton(n, n - 1), std::move(gg), std::move(perms));
}

GComplexAction translation_action(const FiniteGroup& g, int n) {
    const int order = g.order();
    std::vector<std::vector<int>> perms(order, std::vector<int>(order));
    for (Element a = 0; a < order; ++a)
        for (Element x = 0; x < order; ++x) perms[a][x] = g.mul(a, x);
    return GComplexAction(measure_skeleton(order, n), g, std::move(perms));
}

}  // namespace dtc

#include "dtc/lp.hpp"

#include <cstddef>
#include <type_traits>

#include "dtc/errors.hpp"

namespace dtc {

namespace {

template <class Scalar>
Scalar tolerance() {
    if constexpr (std::is_floating_point_v<Scalar>)
        return Scalar(1e-12);
    else
        return Scalar(0);
}

template <class Scalar>
bool positive(const Scalar& v) { return v > tolerance<Scalar>(); }
template <class Scalar>
bool negative(const Scalar& v) { return v < -tolerance<Scalar>(); }

template <class Scalar>
struct Tableau {
    // rows_ x (cols + 1); last column is the right-hand side.
    std::vector<std::vector<Scalar>> t;
    std::vector<std::size_t> basis;
    std::size_t cols = 0;

    void pivot(std::size_t r, std::size_t col) {
        const Scalar p = t[r][col];
        for (auto& e : t[r]) e /= p;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || t[i][col] == 0) continue;
            const Scalar f = t[i][col];
            for (std::size_t j = 0; j <= cols; ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
        }
        basis[r] = col;
    }

    /// Minimizes cost over the current basis; columns with allowed[j] false never enter.
    LpStatus run(const std::vector<Scalar>& cost, const std::vector<bool>& allowed) {
        for (;;) {
            // Reduced costs c_j - c_B B^-1 A_j.
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j) {
                if (!allowed[j]) continue;
                Scalar reduced = cost[j];
                for (std::size_t i = 0; i < t.size(); ++i) reduced -= cost[basis[i]] * t[i][j];
                if (negative(reduced)) enter = j;
            }
            if (enter == cols) return LpStatus::Optimal;

            std::size_t leave = t.size();
            Scalar best{};
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (!positive(t[i][enter])) continue;
                const Scalar ratio = t[i][cols] / t[i][enter];
                if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == t.size()) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

}  // namespace

template <class Scalar>
LpSolution<Scalar> solve_lp(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
                            const std::vector<Scalar>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (b.size() != m) throw InvalidArgument("solve_lp: right-hand side has the wrong size");
    for (const auto& row : a)
        if (row.size() != n) throw InvalidArgument("solve_lp: constraint row has the wrong size");

    // Phase one: artificial column per row, rows flipped so that b >= 0.
    Tableau<Scalar> tab;
    tab.cols = n + m;
    tab.t.assign(m, std::vector<Scalar>(n + m + 1, Scalar(0)));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? Scalar(-a[i][j]) : a[i][j];
        tab.t[i][n + i] = Scalar(1);
        tab.t[i][n + m] = flip ? Scalar(-b[i]) : b[i];
        tab.basis[i] = n + i;
    }
    std::vector<Scalar> phase_one(n + m, Scalar(0));
    for (std::size_t j = n; j < n + m; ++j) phase_one[j] = Scalar(1);
    std::vector<bool> allowed(n + m, true);
    tab.run(phase_one, allowed);

    Scalar infeasibility(0);
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= n) infeasibility += tab.t[i][n + m];
    LpSolution<Scalar> out;
    if (positive(infeasibility)) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
    for (std::size_t i = 0; i < tab.t.size();) {
        if (tab.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n && col == n; ++j)
            if (positive(tab.t[i][j]) || negative(tab.t[i][j])) col = j;
        if (col < n) {
            tab.pivot(i, col);
            ++i;
        } else {
            tab.t.erase(tab.t.begin() + static_cast<long>(i));
            tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
        }
    }
    for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;

    std::vector<Scalar> cost(n + m, Scalar(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    out.status = tab.run(cost, allowed);
    if (out.status != LpStatus::Optimal) return out;

    out.x.assign(n, Scalar(0));
    for (std::size_t i = 0; i < tab.t.size(); ++i)
        if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.t[i][n + m];
    out.objective = Scalar(0);
    for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
    return out;
}

template LpSolution<double> solve_lp(const std::vector<std::vector<double>>&, const std::vector<double>&,
                                     const std::vector<double>&);
template LpSolution<Rational> solve_lp(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                       const std::vector<Rational>&);

}  // namespace dtc

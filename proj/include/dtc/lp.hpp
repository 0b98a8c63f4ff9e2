#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dtc {

using Rational = boost::multiprecision::cpp_rational;

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class Scalar>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Scalar> x;
    Scalar objective{};
};

/**
 * Dense two-phase simplex with Bland's rule for
 *
 *     minimize c.x  subject to  A x = b,  x >= 0.
 *
 * Instantiated for double (tolerance 1e-12) and Rational (exact). Intended for
 * the tiny per-simplex problems of the coincidence harness.
 */
template <class Scalar>
LpSolution<Scalar> solve_lp(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
                            const std::vector<Scalar>& c);

extern template LpSolution<double> solve_lp(const std::vector<std::vector<double>>&, const std::vector<double>&,
                                            const std::vector<double>&);
extern template LpSolution<Rational> solve_lp(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                              const std::vector<Rational>&);

}  // namespace dtc

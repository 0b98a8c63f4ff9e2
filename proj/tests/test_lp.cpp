#include <doctest.h>

#include "dtc/lp.hpp"

using namespace dtc;

TEST_CASE("small LP in floating point") {
    // min -x - y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6 -> optimum at (1.6, 1.2).
    const auto sol = solve_lp<double>({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-2.8));
    CHECK(sol.x[0] == doctest::Approx(1.6));
    CHECK(sol.x[1] == doctest::Approx(1.2));
}

TEST_CASE("exact LP with a redundant row and a negative right-hand side") {
    using R = Rational;
    const std::vector<std::vector<R>> a{{1, 1, 1}, {2, 2, 2}, {-1, 1, 0}};
    const auto sol = solve_lp<R>(a, {R(1), R(2), R(-1, 3)}, {R(0), R(1), R(0)});
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == R(0));
    CHECK(sol.x[0] - sol.x[1] == R(1, 3));
    CHECK(sol.x[0] + sol.x[1] + sol.x[2] == R(1));
}

TEST_CASE("infeasible and unbounded problems") {
    CHECK(solve_lp<double>({{1, 1}}, {-1}, {0, 0}).status == LpStatus::Infeasible);
    CHECK(solve_lp<Rational>({{Rational(1), Rational(-1)}}, {Rational(0)}, {Rational(-1), Rational(0)}).status ==
          LpStatus::Unbounded);
    // lambda on the simplex with 1 * l0 - 1 * l1 = 0 and l0 = 1 cannot hold together.
    CHECK(solve_lp<Rational>({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}, {Rational(1), Rational(0)}},
                             {Rational(1), Rational(0), Rational(1)}, {Rational(0), Rational(0)})
              .status == LpStatus::Infeasible);
}

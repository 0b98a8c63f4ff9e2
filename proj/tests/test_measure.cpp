#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dtc/geometry.hpp"
#include "dtc/measure.hpp"

using namespace dtc;

namespace {

// Uniform measures with n atoms each: the transport polytope's vertices are
// permutation matrices, so W1 is the best assignment.
double assignment_oracle(const std::vector<Point>& xs, const std::vector<Point>& ys) {
    std::vector<int> perm(xs.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) cost += euclidean_distance(xs[i], ys[perm[i]]);
        best = std::min(best, cost / static_cast<double>(xs.size()));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// On the line W1 is the L1 distance between distribution functions.
double cdf_oracle(const std::vector<Atom>& a, const std::vector<Atom>& b) {
    std::vector<double> cuts;
    for (const auto& x : a) cuts.push_back(x.point[0]);
    for (const auto& x : b) cuts.push_back(x.point[0]);
    std::sort(cuts.begin(), cuts.end());
    auto cdf = [](const std::vector<Atom>& m, double t) {
        double s = 0.0;
        for (const auto& x : m)
            if (x.point[0] <= t) s += x.weight;
        return s;
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += std::abs(cdf(a, cuts[i]) - cdf(b, cuts[i])) * (cuts[i + 1] - cuts[i]);
    return total;
}

}  // namespace

TEST_CASE("normalize merges close atoms and rescales") {
    const auto mu = FiniteMeasure::normalize({{{0.0, 0.0}, 1.0}, {{0.0, 1e-12}, 1.0}, {{1.0, 0.0}, 2.0}, {{5.0, 5.0}, 0.0}});
    CHECK(mu.support_size() == 2);
    CHECK(mu.mass() == doctest::Approx(1.0));
    CHECK(mu.mass_at(Point{0.0, 0.0}) == doctest::Approx(0.5));
    CHECK(mu.mass_at(Point{5.0, 5.0}) == 0.0);
}

TEST_CASE("normalize rejects bad input") {
    CHECK_THROWS_AS(FiniteMeasure::normalize({{{0.0}, 0.0}}), TotalMassZero);
    CHECK_THROWS_AS(FiniteMeasure::normalize({}), TotalMassZero);
    CHECK_THROWS_AS(FiniteMeasure::normalize({{{0.0}, -1.0}, {{1.0}, 2.0}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteMeasure::normalize({{{0.0}, NAN}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteMeasure::normalize({{{0.0}, 1.0}, {{1.0}, 1.0}, {{2.0}, 1.0}}, Ambient::euclidean(),
                                             kMergeTolerance, 2),
                    SupportBoundViolated);
}

TEST_CASE("dirac and push-forward") {
    const auto mu = FiniteMeasure::normalize({{{1.0}, 1.0}, {{-1.0}, 3.0}});
    const auto sq = push_forward([](const Point& x) { return Point{x[0] * x[0]}; }, mu);
    CHECK(sq.support_size() == 1);
    CHECK(wasserstein1(sq, FiniteMeasure::dirac({1.0})) == doctest::Approx(0.0));
}

TEST_CASE("W1 matches the assignment oracle for uniform measures") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 6;
        std::vector<Point> xs(n), ys(n);
        std::vector<Atom> a, b;
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = {normal(rng), normal(rng), normal(rng)};
            ys[i] = {normal(rng), normal(rng), normal(rng)};
            a.push_back({xs[i], 1.0});
            b.push_back({ys[i], 1.0});
        }
        const double w = wasserstein1(FiniteMeasure::normalize(a), FiniteMeasure::normalize(b));
        CHECK(w == doctest::Approx(assignment_oracle(xs, ys)).epsilon(1e-12));
    }
}

TEST_CASE("W1 matches the distribution-function oracle on the line") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Atom> a, b;
        for (int i = 0; i < 1 + trial % 7; ++i) a.push_back({{u(rng) * 10}, u(rng) + 0.01});
        for (int i = 0; i < 1 + trial % 5; ++i) b.push_back({{u(rng) * 10}, u(rng) + 0.01});
        const auto mu = FiniteMeasure::normalize(a);
        const auto nu = FiniteMeasure::normalize(b);
        std::vector<Atom> na(mu.atoms().begin(), mu.atoms().end()), nb(nu.atoms().begin(), nu.atoms().end());
        CHECK(wasserstein1(mu, nu) == doctest::Approx(cdf_oracle(na, nb)).epsilon(1e-10));
    }
}

TEST_CASE("W1 refuses mismatched ambients and oversized measures") {
    const auto e = FiniteMeasure::dirac({1.0, 0.0});
    const auto l = FiniteMeasure::dirac({1.0, 0.0}, Ambient::lens(3, 1));
    CHECK_THROWS_AS(wasserstein1(e, l), AmbientMismatch);
    std::vector<Atom> many;
    for (int i = 0; i <= static_cast<int>(kMaxTransportAtoms); ++i) many.push_back({{static_cast<double>(i)}, 1.0});
    CHECK_THROWS_AS(wasserstein1(FiniteMeasure::normalize(many), FiniteMeasure::dirac({0.0})), InvalidArgument);
}

TEST_CASE("transport with unequal supports") {
    const std::vector<double> supply{0.5, 0.5}, demand{1.0};
    CHECK(optimal_transport_cost(supply, demand, {{1.0}, {3.0}}) == doctest::Approx(2.0));
    const std::vector<double> s2{0.3, 0.7}, d2{0.6, 0.4};
    // Cheapest: 0.3 on (0,0), 0.3 on (1,0), 0.4 on (1,1).
    CHECK(optimal_transport_cost(s2, d2, {{0.0, 5.0}, {1.0, 0.0}}) == doctest::Approx(0.3));
}

TEST_CASE("lens ambient distance is the orbit minimum") {
    const Ambient a = Ambient::lens(4, 1);
    const Point x{1.0, 0.0}, y{0.0, 1.0};
    CHECK(a.distance(x, y) == doctest::Approx(0.0).epsilon(1e-15));
    const Point z{std::cos(0.3), std::sin(0.3)};
    CHECK(a.distance(x, z) == doctest::Approx(2 * std::sin(0.15)));
}

TEST_CASE("ambient tags round trip") {
    for (const Ambient& a : {Ambient::euclidean(), Ambient::lens(5, 2), Ambient::finite_set(),
                             Ambient::path_space(Ambient::lens(3, 1), 21), Ambient::path_space(Ambient::euclidean(), 5)})
        CHECK(Ambient::from_tag(a.tag()) == a);
    CHECK_THROWS_AS(Ambient::from_tag("torus"), InvalidArgument);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dtc/geometry.hpp"
#include "dtc/planner.hpp"

using namespace dtc;

TEST_CASE("sphere points validate their input") {
    CHECK_THROWS_AS(SpherePoint(Point{1.0, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(SpherePoint(Point{1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(SpherePoint::normalized(Point{0.0, 0.0}), InvalidArgument);
    CHECK(norm(SpherePoint::normalized(Point{3.0, 4.0}).coords()) == doctest::Approx(1.0));
}

TEST_CASE("rotation paths join x to y and stay on the sphere") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto x = random_sphere_point(2, 99, 2 * i);
        const auto y = random_sphere_point(2, 99, 2 * i + 1);
        const auto [alpha, beta] = rotation_paths(x, y);
        CHECK(alpha.angle + beta.angle == doctest::Approx(2 * std::numbers::pi));
        for (const auto& path : {alpha, beta}) {
            CHECK(euclidean_distance(path.at(0.0), x.coords()) < 1e-12);
            CHECK(euclidean_distance(path.at(1.0), y.coords()) < 1e-12);
            for (double t = 0.0; t <= 1.0; t += 0.125) CHECK(norm(path.at(t)) == doctest::Approx(1.0));
        }
        // The alpha path is the shorter arc: its chord length matches.
        CHECK(2 * std::sin(alpha.angle / 2) == doctest::Approx(euclidean_distance(x.coords(), y.coords())));
    }
}

TEST_CASE("antipodal and equal endpoints use the complex line") {
    const SpherePoint x(Point{1.0, 0.0, 0.0, 0.0});
    const SpherePoint minus(Point{-1.0, 0.0, 0.0, 0.0});
    const auto [a, b] = rotation_paths(x, minus);
    CHECK(a.angle == doctest::Approx(std::numbers::pi));
    CHECK(euclidean_distance(a.at(1.0), minus.coords()) < 1e-12);
    CHECK(euclidean_distance(b.at(1.0), minus.coords()) < 1e-12);
    const auto [c, d] = rotation_paths(x, x);
    CHECK(c.angle == 0.0);
    CHECK(d.angle == doctest::Approx(2 * std::numbers::pi));
    CHECK(euclidean_distance(d.at(0.5), minus.coords()) < 1e-12);
}

TEST_CASE("angle is accurate near 0 and pi") {
    const double eps = 1e-9;
    const SpherePoint x(Point{1.0, 0.0});
    const SpherePoint near(Point{std::cos(eps), std::sin(eps)});
    const SpherePoint far(Point{std::cos(std::numbers::pi - eps), std::sin(std::numbers::pi - eps)});
    CHECK(angle(x, near) == doctest::Approx(eps).epsilon(1e-6));
    CHECK(std::numbers::pi - angle(x, far) == doctest::Approx(eps).epsilon(1e-6));
}

TEST_CASE("lens action is a free Z_p action by isometries") {
    for (int p : {2, 3, 4, 5, 7}) {
        const LensAction a(p, 2);
        const auto x = random_sphere_point(2, 3, static_cast<std::uint64_t>(p));
        const auto y = random_sphere_point(2, 4, static_cast<std::uint64_t>(p));
        CHECK(euclidean_distance(a.act(p, x).coords(), x.coords()) < 1e-14);
        for (int j = 1; j < p; ++j) {
            CHECK(euclidean_distance(a.act(j, x).coords(), x.coords()) > 1e-3);
            CHECK(euclidean_distance(a.act(j, x).coords(), a.act(j, y).coords()) ==
                  doctest::Approx(euclidean_distance(x.coords(), y.coords())));
            CHECK(a.quotient_dist(a.act(j, x).coords(), y.coords()) ==
                  doctest::Approx(a.quotient_dist(x.coords(), y.coords())));
        }
        double brute = INFINITY;
        for (const auto& g : a.orbit(y)) brute = std::min(brute, euclidean_distance(x.coords(), g.coords()));
        CHECK(a.quotient_dist(x.coords(), y.coords()) == doctest::Approx(brute));
        CHECK(a.orbit(x).size() == static_cast<std::size_t>(p));
    }
    CHECK_THROWS_AS(LensAction(1, 1), InvalidArgument);
    CHECK_THROWS_AS(LensAction(3, 1).act(1, Point{1.0, 0.0, 0.0, 0.0}), InvalidArgument);
}

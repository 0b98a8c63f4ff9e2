#include <doctest.h>

#include <random>

#include "dtc/coincidence.hpp"

using namespace dtc;

TEST_CASE("free spheres have the right shape") {
    const auto circle = build_sphere(1, 3, 4);
    CHECK(circle.complex.f_vector() == std::vector<std::size_t>{12, 12});
    const auto s3 = build_sphere(2, 3, 4);
    CHECK(s3.coords.size() == 24);
    CHECK(s3.facets.size() == 144);
    const auto h = reduced_homology(s3.complex);
    REQUIRE(h.size() == 4);
    CHECK(h[0] == HomologyGroup{});
    CHECK(h[1] == HomologyGroup{});
    CHECK(h[2] == HomologyGroup{});
    CHECK(h[3].rank == 1);
    CHECK(s3.complex.euler_characteristic() == 0);
    CHECK_THROWS_AS(build_sphere(1, 2, 1), InvalidArgument);
}

TEST_CASE("the action on the realization is linear and free") {
    const auto x = build_sphere(2, 3, 2);
    const auto lens = x.lens();
    for (int g = 0; g < x.p; ++g)
        for (std::size_t v = 0; v < x.coords.size(); ++v)
            CHECK(euclidean_distance(x.coords[x.act(g, static_cast<int>(v))], lens.act(g, x.coords[v])) < 1e-12);
    for (const auto& sigma : x.facets)
        for (int g = 1; g < x.p; ++g) CHECK(x.act(g, sigma) != sigma);
}

TEST_CASE("sine function is coincidence-free on Z_3 circles") {
    for (int n : {1, 2, 4}) {
        const auto x = build_sphere(1, 3, n);
        const auto f = sine_function(x);
        const auto c = coincidence_set(x, f);
        CHECK(c.empty);
        CHECK(orbit_spread(x, f) > 0.0);
    }
}

TEST_CASE("every function on a Z_2 circle has a coincidence") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto x = build_sphere(1, 2, 5);
    for (int trial = 0; trial < 30; ++trial) {
        PLFunction f;
        for (std::size_t v = 0; v < x.coords.size(); ++v) f.values.push_back(u(rng));
        const auto c = coincidence_set(x, f);
        REQUIRE_FALSE(c.empty);
        const auto& w = *c.witness;
        // f(x) = f(-x) at the witness point.
        const PLFunction moved = f.translated(x, 1);
        CHECK(moved.at(w.simplex, w.barycentric) == doctest::Approx(w.value).epsilon(1e-9));
        CHECK(orbit_spread(x, f) == doctest::Approx(0.0));
    }
}

TEST_CASE("spread and exact certificate agree facet by facet") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto x = build_sphere(1, 3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        PLFunction f;
        for (std::size_t v = 0; v < x.coords.size(); ++v) f.values.push_back(u(rng));
        const auto c = coincidence_set(x, f, Execution::Serial);
        CHECK(coincidence_set(x, f, Execution::Parallel).feasible == c.feasible);
        for (std::size_t i = 0; i < x.facets.size(); ++i) CHECK((facet_spread(x, f, i) < 1e-9) == c.feasible[i]);
    }
}

TEST_CASE("search is reproducible across execution modes") {
    const auto x = build_sphere(1, 3, 2);
    SearchOptions opt;
    opt.restarts = 4;
    opt.iterations = 100;
    opt.seed = 17;
    const auto a = search_coincidence_free(x, opt, Execution::Serial);
    const auto b = search_coincidence_free(x, opt, Execution::Parallel);
    CHECK(a.best.values == b.best.values);
    CHECK(a.certified_restarts == b.certified_restarts);
    CHECK(a.restarts.size() == 4);
}

TEST_CASE("mesh orbits and edges") {
    const auto x = build_sphere(1, 3, 4);
    for (int level : {0, 1, 3}) {
        const auto mesh = build_mesh(x, level);
        // 12 edges subdivided into 2^(level+1) pieces, grouped in orbits of 3.
        CHECK(mesh.fibers.size() == static_cast<std::size_t>(12 << (level + 1)) / 3);
        CHECK(mesh.edges.size() == static_cast<std::size_t>(12 << (level + 1)));
        for (const auto& f : mesh.fibers)
            for (int g = 1; g < 3; ++g)
                CHECK(euclidean_distance(f.fiber[g].coords, x.lens().act(g, f.fiber[0].coords)) < 1e-12);
    }
}

TEST_CASE("sections of the sine function") {
    const auto x = build_sphere(1, 3, 4);
    double previous_jump = INFINITY;
    for (int level : {1, 2, 3}) {
        const auto s = section_from_function(x, sine_function(x), level);
        const auto c = check_section(x, s);
        CHECK(c.max_support <= 2);
        CHECK(c.max_pushforward_support == 1);
        CHECK(c.max_pushforward_error < 1e-12);
        CHECK(c.max_jump < previous_jump);
        previous_jump = c.max_jump;
        CHECK(function_from_section(x, s).mesh_coincidence_free);
    }
}

TEST_CASE("Z_2 sections cannot be continuous with one atom") {
    const auto x = build_sphere(1, 2, 4);
    for (int level : {1, 2, 3}) {
        auto s = build_mesh(x, level);
        for (auto& f : s.fibers) f.weights = {1.0, 0.0};
        // Any one-atom selection of the double cover jumps to the antipode somewhere.
        CHECK(check_section(x, s).max_jump > 1.0);
        CHECK(function_from_section(x, s).mesh_coincidence_free);
    }
}

TEST_CASE("section inputs are validated") {
    const auto x = build_sphere(1, 2, 4);
    auto s = build_mesh(x, 1);
    for (auto& f : s.fibers) f.weights = {0.5, 0.5};
    CHECK_THROWS_AS(function_from_section(x, s), SupportBoundViolated);
    s.fibers[0].weights = {0.7, 0.7};
    CHECK_THROWS_AS(function_from_section(x, s), SectionPropertyViolated);
    s.fibers[0].weights = {1.5, -0.5};
    CHECK_THROWS_AS(function_from_section(x, s), SectionPropertyViolated);
    PLFunction constant;
    constant.values.assign(x.coords.size(), 1.0);
    CHECK_THROWS_AS(section_from_function(x, constant, 1), EmptinessViolated);
}

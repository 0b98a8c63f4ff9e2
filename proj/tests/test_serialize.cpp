#include <doctest.h>

#include "dtc/serialize.hpp"

using namespace dtc;

TEST_CASE("measures round trip through JSON") {
    const auto mu = FiniteMeasure::normalize({{{0.6, 0.8}, 1.0}, {{-1.0, 0.0}, 3.0}}, Ambient::lens(3, 1));
    const Json j = to_json(mu);
    CHECK(j.at("ambient") == "lens:3,1");
    CHECK(j.at("atoms").size() == 2);
    const auto back = measure_from_json(Json::parse(j.dump()));
    CHECK(back.ambient() == mu.ambient());
    CHECK(wasserstein1(back, mu) == 0.0);
}

TEST_CASE("complexes round trip through JSON") {
    auto k = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3}});
    k.add_simplex({7});
    const auto back = complex_from_json(Json::parse(to_json(k).dump()));
    CHECK(back == k);
}

TEST_CASE("sections round trip through JSON") {
    const auto x = build_sphere(1, 3, 2);
    const auto s = section_from_function(x, sine_function(x), 1);
    const auto back = section_from_json(Json::parse(to_json(s).dump()));
    CHECK(to_json(back) == to_json(s));
    CHECK(function_from_section(x, back).min_fiber_spread == function_from_section(x, s).min_fiber_spread);
}

TEST_CASE("bounds entries carry their statement") {
    const Json j = to_json(bounds_table(5, 25, 2).back());
    CHECK(j.at("status") == "counterexample");
    CHECK(j.at("upper").is_null());
    CHECK(!j.at("statement").get<std::string>().empty());
}

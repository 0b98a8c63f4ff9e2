#include <doctest.h>

#include "dtc/bounds.hpp"
#include "dtc/errors.hpp"

using namespace dtc;

TEST_CASE("primality") {
    const std::vector<int> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    for (int n = 0; n < 30; ++n) CHECK(is_prime(n) == (std::find(primes.begin(), primes.end(), n) != primes.end()));
}

TEST_CASE("even dimensions are rejected") {
    CHECK_THROWS_AS(bounds_table(3, 8, 1), InvalidDimension);
    CHECK_THROWS_AS(bounds_table(1, 3, 1), InvalidArgument);
}

TEST_CASE("equality only when its hypotheses hold") {
    for (int p = 2; p <= 12; ++p)
        for (int m = 1; m <= 31; m += 2)
            for (const auto& e : bounds_table(p, m, 2)) {
                if (e.status == BoundStatus::Equality) {
                    CHECK(is_prime(p));
                    CHECK(m >= p - 1);
                    CHECK(e.lower == e.upper);
                }
                if (e.lower && e.upper) CHECK(*e.lower <= *e.upper);
                CHECK_FALSE(citation_statement(e.citation).empty());
            }
}

TEST_CASE("dTC upper bound cases") {
    auto dtc_row = [](int p, int m) {
        for (const auto& e : bounds_table(p, m, 1))
            if (e.invariant == "dTC" && e.space == "L^" + std::to_string(m) + "_" + std::to_string(p)) return e;
        FAIL("no dTC row");
        return BoundsEntry{};
    };
    CHECK(dtc_row(7, 5).upper == 6);
    CHECK(dtc_row(7, 5).lower == std::nullopt);
    CHECK(dtc_row(7, 9).upper == 9);
    CHECK(dtc_row(7, 13).upper == 13);
    CHECK(dtc_row(7, 15).upper == 13);
    CHECK(dtc_row(4, 31).upper == 3);
    CHECK(dtc_row(2, 5).status == BoundStatus::Equality);
    CHECK(dtc_row(2, 5).upper == 1);
    CHECK(dtc_row(9, 99).lower == std::nullopt);
}

TEST_CASE("counterexample rows") {
    auto count = [](int p, int m, const std::string& invariant) {
        int n = 0;
        for (const auto& e : bounds_table(p, m, 1))
            n += e.status == BoundStatus::Counterexample && e.invariant == invariant ? 1 : 0;
        return n;
    };
    CHECK(count(5, 25, "dcat") == 1);
    CHECK(count(5, 25, "dTC") == 1);
    CHECK(count(5, 23, "dcat") == 0);
    CHECK(count(3, 9, "dTC") == 0);
    CHECK(count(2, 5, "dcat") == 1);
    CHECK(count(6, 99, "dcat") == 0);
}

TEST_CASE("csv rendering") {
    const auto csv = bounds_csv(bounds_table(4, 7, 1));
    CHECK(csv == "space,invariant,lower,upper,status,citation,note\n"
                 "L^7_4,dcat,,3,bounds,dcat-lens-upper,\n"
                 "L^7_4,dTC,,3,bounds,dtc-lens-upper,\n");
    CHECK_THROWS_AS(citation_statement("made-up"), InvalidArgument);
    CHECK(citation_tags().size() == 8);
}

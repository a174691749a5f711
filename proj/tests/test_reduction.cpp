#include <algorithm>
#include <random>
#include <set>

#include "esc/oracle.hpp"
#include "esc/reduction.hpp"
#include "esc/structure.hpp"
#include "test_support.hpp"

using namespace esc;
using namespace esc::reduction;
using testing::Triple;

namespace {

Prime P(Natural n) { return Prime::make(n); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidInput;
}

} // namespace

TEST_CASE("x bounds") {
    CHECK(lemma1_x_bounds(P(5)) == Bounds{2, 3});
    CHECK(lemma1_x_bounds(P(7)) == Bounds{2, 5});
    CHECK(lemma1_x_bounds(P(2)) == Bounds{1, 1});
    CHECK(corollary1_x_bounds(P(11)) == Bounds{3, 6});
    CHECK(corollary1_x_bounds(P(5)) == Bounds{2, 3});
    CHECK(corollary1_x_bounds(P(17)) == Bounds{5, 9});
}

TEST_CASE("y bounds") {
    CHECK(lemma1_y_bounds(P(5), 2) == Bounds{4, 6});
    CHECK(lemma1_y_bounds(P(7), 4) == Bounds{4, 6});
    CHECK(kind_of([] { lemma1_y_bounds(P(7), 1); }) == ErrorKind::Precondition);
}

TEST_CASE("residual of the gcd identity") {
    CHECK(theorem1_residual(P(5), 2, 4) == 0);
    CHECK(theorem1_residual(P(5), 2, 5) == 0);
    CHECK(theorem1_residual(P(5), 2, 6) == 4);
    // Negative when 4xy < (x+y)p.
    CHECK(theorem1_residual(P(7), 1, 1) == Integer{4} - 14 - 1);
}

TEST_CASE("z from x and y") {
    CHECK(z_from_xy(P(5), 2, 4) == 20);
    CHECK(z_from_xy(P(5), 2, 5) == 10);
    CHECK(z_from_xy(P(7), 4, 4) == 14);
    CHECK(kind_of([] { z_from_xy(P(5), 2, 6); }) == ErrorKind::NotASolutionPair);
}

TEST_CASE("x from y") {
    CHECK(x_from_y(P(7), 4) == 4);
    CHECK(x_from_y(P(5), 4) == 2);
    CHECK(x_from_y(P(5), 5) == 2);
    CHECK(kind_of([] { x_from_y(P(5), 1); }) == ErrorKind::Precondition);
}

TEST_CASE("one-variable region") {
    CHECK(one_var_y_region(P(7)) == Bounds{4, 28});
    CHECK(one_var_y_region(P(5)) == Bounds{3, 6});
    CHECK(one_var_y_region(P(13)) == Bounds{7, 34});
    CHECK(one_var_y_region(P(2)) == Bounds{1, 2});
}

TEST_CASE("one-variable condition") {
    CHECK(one_var_condition(P(7), 4));
    CHECK(one_var_condition(P(5), 4));
    CHECK_FALSE(one_var_condition(P(7), 5));
    CHECK_FALSE(one_var_condition(P(5), 3));
    CHECK(kind_of([] { one_var_condition(P(7), 1); }) == ErrorKind::Precondition);
}

TEST_CASE("two-variable search examples") {
    CHECK(testing::triples(search_two_var(P(5))) == std::vector<Triple>{{2, 4, 20}, {2, 5, 10}});
    CHECK(testing::triples(search_two_var(P(3))) == std::vector<Triple>{{1, 4, 12}, {1, 6, 6}, {2, 2, 3}});
    const auto t11 = testing::triples(search_two_var(P(11)));
    const std::set<Triple> s11(t11.begin(), t11.end());
    for (const Triple& t : {Triple{3, 44, 132}, Triple{3, 66, 66}, Triple{4, 11, 44}, Triple{6, 6, 33}}) {
        CHECK(s11.count(t) == 1);
    }
    CHECK(t11.size() == 9);
}

TEST_CASE("one-variable search examples") {
    CHECK(testing::triples(search_one_var(P(7))) == std::vector<Triple>{{4, 4, 14}});
    CHECK(testing::triples(search_one_var(P(5))) == std::vector<Triple>{{2, 4, 20}});
    CHECK(testing::triples(search_one_var(P(2))) == std::vector<Triple>{{1, 2, 2}});
    const auto all7 = search_one_var(P(7), false);
    REQUIRE(all7.size() > 1);
    for (std::size_t i = 1; i < all7.size(); ++i) CHECK(all7[i - 1].y() < all7[i].y());
}

TEST_CASE("special construction for p = 3 mod 4") {
    CHECK(testing::triples({special_3mod4(P(7))}) == std::vector<Triple>{{4, 4, 14}});
    CHECK(testing::triples({special_3mod4(P(3))}) == std::vector<Triple>{{2, 2, 3}});
    CHECK(testing::triples({special_3mod4(P(11))}) == std::vector<Triple>{{6, 6, 33}});
    CHECK(kind_of([] { special_3mod4(P(5)); }) == ErrorKind::Residue);
    CHECK(kind_of([] { special_3mod4(P(2)); }) == ErrorKind::Residue);
}

TEST_CASE("hybrid search") {
    CHECK(testing::triples({hybrid_search(P(7))}) == std::vector<Triple>{{4, 4, 14}});
    const Solution s = hybrid_search(P(193));
    CHECK(s.p() == 193);
    CHECK_NOTHROW(make_solution(s.p(), s.x(), s.y(), s.z()));
    CHECK(kind_of([] { hybrid_search(P(4)); }) == ErrorKind::NotPrime);
}

TEST_CASE("searches refuse primes of 2^30 and above") {
    CHECK(kind_of([] { search_two_var(P(1073741827)); }) == ErrorKind::Magnitude);
    CHECK(kind_of([] { search_one_var(P(1073741827)); }) == ErrorKind::Magnitude);
}

TEST_CASE("residual magnitude guard") {
    const Natural huge = Natural{1} << 126;
    CHECK(kind_of([&] { theorem1_residual(P(5), huge, 1); }) == ErrorKind::Magnitude);
}

TEST_CASE("two-variable search agrees with the brute force") {
    for (std::uint64_t p : primes_in(2, 2000)) {
        REQUIRE_MESSAGE(testing::triples(search_two_var(P(p))) == testing::triples(oracle::enumerate_all(P(p))),
                        "p = " << p);
    }
}

TEST_CASE("identity, z formula and x formula on brute-force solutions") {
    for (std::uint64_t p : primes_in(2, 1500)) {
        const Prime q = P(p);
        for (const Solution& s : oracle::enumerate_all(q)) {
            REQUIRE(theorem1_residual(q, s.x(), s.y()) == 0);
            REQUIRE(z_from_xy(q, s.x(), s.y()) == s.z());
            REQUIRE(2 * s.x() <= p + 1);  // x <= ceil(p/2)
            if (structure::classify(s) == SolutionType::TypeI) {
                REQUIRE_MESSAGE(x_from_y(q, s.y()) == s.x(), s);
            }
        }
    }
}

TEST_CASE("one-variable hits are brute-force solutions, and type I ones are all hit") {
    for (std::uint64_t p : primes_in(2, 1000)) {
        const Prime q = P(p);
        const auto oracle_triples = testing::triples(oracle::enumerate_all(q));
        const std::set<Triple> all(oracle_triples.begin(), oracle_triples.end());
        const auto hits_v = testing::triples(search_one_var(q, false));
        const std::set<Triple> hits(hits_v.begin(), hits_v.end());
        REQUIRE(hits.size() == hits_v.size());
        for (const Triple& t : hits) REQUIRE_MESSAGE(all.count(t) == 1, "p = " << p);

        const Bounds region = one_var_y_region(q);
        for (const Solution& s : oracle::enumerate_all(q)) {
            if (structure::classify(s) != SolutionType::TypeI || !region.contains(s.y())) continue;
            const Triple t{static_cast<std::uint64_t>(s.x()), static_cast<std::uint64_t>(s.y()),
                           static_cast<std::uint64_t>(s.z())};
            REQUIRE_MESSAGE(hits.count(t) == 1, s);
        }

        // First hit is the smallest y among all hits.
        const auto first = search_one_var(q);
        if (hits_v.empty()) {
            CHECK(first.empty());
        } else {
            REQUIRE(first.size() == 1);
            CHECK(first.front().y() == std::get<1>(hits_v.front()));
        }
    }
}

TEST_CASE("upper y bound decreases with x") {
    std::mt19937_64 rng(4);
    const auto ps = primes_in(2, 10000);
    for (int i = 0; i < 30; ++i) {
        const Natural p = ps[rng() % ps.size()];
        for (Natural x = (p + 3) / 4; x <= p; ++x) {
            // 2xp/(4x-p) > 2(x+1)p/(4(x+1)-p)
            REQUIRE(2 * x * p * (4 * (x + 1) - p) > 2 * (x + 1) * p * (4 * x - p));
        }
    }
}

TEST_CASE("special construction is a type I solution with x = y = ceil(p/2)") {
    for (std::uint64_t p : primes_in(3, 10000)) {
        if (p % 4 != 3) continue;
        const Solution s = special_3mod4(P(p));
        REQUIRE(s.x() == (p + 1) / 2);
        REQUIRE(s.y() == (p + 1) / 2);
        REQUIRE(structure::classify(s) == SolutionType::TypeI);
    }
}

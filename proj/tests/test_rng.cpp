#include "doctest.h"
#include "nfpt/rng.hpp"

#include <set>

using namespace nfpt;

TEST_SUITE_BEGIN("rng");

TEST_CASE("same seed, same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("bounded draws stay in range and hit every value") {
    Rng rng(7);
    std::set<int> seen;
    for (int i = 0; i < 2000; ++i) {
        const int v = rng.uniform_int(3, 9);
        REQUIRE(v >= 3);
        REQUIRE(v <= 9);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("uniform_double in [0,1)") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.uniform_double();
        REQUIRE(d >= 0.0);
        REQUIRE(d < 1.0);
    }
}

TEST_CASE("seed mixing separates nearby indices") {
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 1000; ++i) seen.insert(mix_seed(1, i));
    CHECK(seen.size() == 1000);
    CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
}

TEST_CASE("permutation is a permutation") {
    Rng rng(5);
    const auto p = rng.permutation(50);
    std::set<int> s(p.begin(), p.end());
    CHECK(s.size() == 50);
    CHECK(*s.begin() == 0);
    CHECK(*s.rbegin() == 49);
}

TEST_SUITE_END();

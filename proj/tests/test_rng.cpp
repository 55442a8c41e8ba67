#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "cgpoly/rng.hpp"

using namespace cgpoly;

TEST_CASE("same key gives identical streams") {
    RngStream a = derive_substream(123, 7, "alpha");
    RngStream b = derive_substream(123, 7, "alpha");
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("neighbouring indices give unrelated streams") {
    RngStream a = derive_substream(123, 0, "alpha");
    RngStream b = derive_substream(123, 1, "alpha");
    int agree = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++agree;
    CHECK(agree == 0);
}

TEST_CASE("labels separate streams") {
    RngStream a = derive_substream(9, 0, "env.row");
    RngStream b = derive_substream(9, 0, "env.col");
    CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("index-path derivation differs from flat derivation collisions") {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t t = 0; t < 50; ++t)
        for (std::uint64_t i = 0; i < 50; ++i) {
            RngStream s = derive_substream(5, {t, i}, "grid");
            firsts.insert(s.next_u64());
        }
    CHECK(firsts.size() == 2500); // no first-output collisions
}

TEST_CASE("uniform01 stays inside the open interval and looks uniform") {
    RngStream r = derive_substream(77, 0, "u");
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform01();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal moments") {
    RngStream r = derive_substream(31, 0, "n");
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s1 += z;
        s2 += z * z;
    }
    CHECK(s1 / n == doctest::Approx(0.0).epsilon(0.02));
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("exponential mean") {
    RngStream r = derive_substream(32, 0, "e");
    const int n = 200000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.exponential();
    CHECK(s / n == doctest::Approx(1.0).epsilon(0.02));
}

#include <gtest/gtest.h>

#include <set>

#include "tsumlab/inversion.hpp"

using namespace tsumlab;

TEST(FullInverse, Identity) {
    std::vector<std::uint64_t> v(8);
    for (std::uint64_t i = 0; i < 8; ++i) v[i] = i;
    const auto inv = build_full_inverse(FunctionTable::make(8, v));
    EXPECT_EQ(inv.invert(5), 5u);
}

TEST(FullInverse, Constant) {
    const auto inv = build_full_inverse(FunctionTable::make(4, {0, 0, 0, 0}));
    EXPECT_EQ(inv.invert(0), 0u);
    EXPECT_FALSE(inv.invert(1));
}

TEST(FullInverse, RandomMatchesScan) {
    const auto f = FunctionTable::random(256, 256, 17);
    const auto inv = build_full_inverse(f);
    std::uint64_t hits = 0;
    for (std::uint64_t y = 0; y < 256; ++y) {
        std::optional<std::uint64_t> scan;
        for (std::uint64_t x = 0; x < 256 && !scan; ++x)
            if (f.values[x] == y) scan = x;
        EXPECT_EQ(inv.invert(y), scan);
        hits += scan.has_value();
    }
    EXPECT_EQ(inv.image_size(), hits);
}

TEST(Hellman, PlantedValueIsFound) {
    const auto f = FunctionTable::random(4096, 4096, 3);
    const auto h = hellman_build(f, 16, 16, 9);
    ASSERT_FALSE(h.endpoints.empty());
    // the first value on a kept chain
    const auto y = f(h.endpoints.front().second);
    const auto r = hellman_invert(h, f, y);
    ASSERT_TRUE(r.x);
    EXPECT_EQ(f(*r.x), y);
}

TEST(Hellman, UncoveredValueFails) {
    const auto f = FunctionTable::random(4096, 4096, 3);
    const auto h = hellman_build(f, 4, 4, 9);
    const auto cov = hellman_covered(h, f);
    std::uint64_t y = 0;
    while (std::binary_search(cov.begin(), cov.end(), y)) ++y;
    EXPECT_FALSE(hellman_invert(h, f, y).x);
}

TEST(Hellman, SoundAndExactOverEveryValue) {
    const auto f = FunctionTable::random(4096, 4096, 21);
    const auto h = hellman_build(f, 16, 16, 4);
    const auto cov = hellman_covered(h, f);
    std::uint64_t ok = 0;
    for (std::uint64_t y = 0; y < 4096; ++y) {
        const auto r = hellman_invert(h, f, y);
        if (r.x) {
            EXPECT_EQ(f(*r.x), y);
            ++ok;
        }
        EXPECT_EQ(r.x.has_value(), std::binary_search(cov.begin(), cov.end(), y));
        EXPECT_LE(r.oracle_calls, (h.t - 1) + h.t * (r.false_alarms + 1));
    }
    EXPECT_EQ(ok, cov.size());
    EXPECT_NEAR(static_cast<double>(ok) / 4096.0, hellman_coverage(h, f), 1e-12);
}

TEST(Hellman, MonteCarloNearCoverage) {
    const auto f = FunctionTable::random(4096, 4096, 8);
    const auto h = hellman_build(f, 16, 16, 12);
    Rng rng(99);
    const int trials = 4000;
    int ok = 0;
    for (int i = 0; i < trials; ++i) ok += hellman_invert(h, f, rng.below(std::uint64_t{4096})).x.has_value();
    EXPECT_NEAR(ok / double(trials), hellman_coverage(h, f), 0.1);
}

TEST(Hellman, TablesNestAsChainsGrow) {
    const auto f = FunctionTable::random(1024, 1024, 5);
    double last = 0;
    std::set<std::uint64_t> prev;
    for (std::uint64_t m : {1, 2, 4, 8, 16, 32, 64}) {
        const auto h = hellman_build(f, m, 16, 77);
        const auto cov = hellman_covered(h, f);
        for (auto y : prev) EXPECT_TRUE(std::binary_search(cov.begin(), cov.end(), y));
        prev = {cov.begin(), cov.end()};
        const double c = hellman_coverage(h, f);
        EXPECT_GE(c, last);
        last = c;
    }
}

TEST(Hellman, Caps) {
    const auto f = FunctionTable::random(16, 16, 1);
    EXPECT_THROW(hellman_build(16, 16, f, std::uint64_t{1} << 30, 1 << 10, 1), Error);
    EXPECT_THROW(hellman_build(f, 1, 0, 1), Error);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "tsumlab/butterfly.hpp"

using namespace tsumlab;

namespace {

std::uint64_t dig(std::uint64_t label, std::uint64_t B, unsigned p) {
    for (unsigned i = 0; i < p; ++i) label /= B;
    return label % B;
}

}  // namespace

TEST(ButterflyPath, SingleLayer) {
    const auto p = canonical_path(2, 1, 0, 1);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0], (ButterflyEdge{0, 0, 1}));
}

TEST(ButterflyPath, DigitRules) {
    const std::uint64_t B = 3;
    const unsigned d = 3;
    for (std::uint64_t s = 0; s < 27; ++s)
        for (std::uint64_t t = 0; t < 27; ++t) {
            const auto p = canonical_path(B, d, s, t);
            ASSERT_EQ(p.size(), d);
            for (unsigned k = 0; k < d; ++k) {
                for (unsigned q = 0; q < d; ++q) {
                    EXPECT_EQ(dig(p[k].i, B, q), q >= k ? dig(s, B, q) : dig(t, B, q));
                    EXPECT_EQ(dig(p[k].j, B, q), q > k ? dig(s, B, q) : dig(t, B, q));
                }
            }
            EXPECT_EQ(p.front().i, s);
            EXPECT_EQ(p.back().j, t);
            if (s == t) {
                for (const auto& e : p) EXPECT_EQ(e.i, e.j);
            }
        }
}

TEST(ButterflyPath, LengthTwoEverywhere) {
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t t = 0; t < 4; ++t) EXPECT_EQ(canonical_path(2, 2, s, t).size(), 2u);
    EXPECT_THROW(canonical_path(2, 2, 4, 0), Error);
}

TEST(ButterflyGraph, EdgeIndexRoundTrip) {
    ButterflyInstance g(3, 2);
    EXPECT_EQ(g.edge_count(), 2u * 27);
    for (std::uint64_t e = 0; e < g.edge_count(); ++e) EXPECT_EQ(g.edge_index(g.edge_at(e)), e);
    EXPECT_THROW(g.edge_index({0, 0, 4}), Error);  // differs at digit 1
}

TEST(ButterflyGraph, Reachability) {
    const auto full = ButterflyInstance::full(2, 2);
    const ButterflyInstance empty(2, 2);
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t t = 0; t < 4; ++t) {
            EXPECT_TRUE(reachable(full, s, t));
            EXPECT_FALSE(reachable(empty, s, t));
        }
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = ButterflyInstance::random(2, 3, rng);
        for (std::uint64_t s = 0; s < 8; ++s)
            for (std::uint64_t t = 0; t < 8; ++t) EXPECT_EQ(reachable(g, s, t), bfs_reachable(g, s, t));
    }
}

TEST(ButterflyEncode, Sizes) {
    const auto enc = encode_instance(ButterflyInstance::full(2, 1), GroupMode::Cyclic);
    EXPECT_EQ(enc.instance.A1().size(), 4u);
    EXPECT_EQ(enc.instance.A2().size(), 4u);
    for (std::uint64_t B : {2, 3})
        for (unsigned d : {1u, 2u}) {
            const auto e = encode_instance(ButterflyInstance(B, d), GroupMode::Cyclic);
            const auto n = d * static_cast<std::uint64_t>(std::pow(B, d + 1));
            EXPECT_EQ(e.instance.A1().size(), n);
            EXPECT_EQ(e.instance.A2().size(), n);
        }
}

TEST(ButterflyEncode, OrderIsProductOfBases) {
    for (auto mode : {GroupMode::Cyclic, GroupMode::Xor})
        for (unsigned d : {1u, 2u}) {
            ButterflyLayout L(2, d, mode);
            Id prod = 4 * d * (mode == GroupMode::Cyclic ? 3 : 2);
            for (unsigned i = 0; i < 2 * d + 2; ++i) prod *= 2;
            EXPECT_EQ(L.group().order(), prod);
            EXPECT_EQ(L.digits(), 2u * (d + 2));
        }
}

TEST(ButterflyEncode, CarryFreeWhenTopDigitsCancel) {
    for (auto mode : {GroupMode::Cyclic, GroupMode::Xor}) {
        const auto enc = encode_instance(ButterflyInstance::full(2, 2), mode);
        const auto& L = enc.layout;
        for (const auto& a1 : enc.instance.A1())
            for (const auto& a2 : enc.instance.A2()) {
                const auto d1 = L.decode_msf(a1), d2 = L.decode_msf(a2);
                const bool cancel = mode == GroupMode::Cyclic ? (d1[0] + d2[0]) % L.top_base() == 0
                                                               : (d1[0] ^ d2[0]) == L.query_top();
                if (!cancel) continue;
                const auto r = L.codec().add_carry_free(a1, a2);
                ASSERT_TRUE(std::holds_alternative<Id>(r));
                EXPECT_EQ(std::get<Id>(r), enc.group.add(a1, a2));
            }
    }
}

TEST(ButterflyQuery, DigitsRoundTrip) {
    ButterflyLayout L(2, 1, GroupMode::Cyclic);
    const auto z = encode_query(L, 1, 0);
    EXPECT_EQ(L.decode_msf(z), (std::vector<std::uint64_t>{0, 0, 1, 0, 0, 0}));
    ButterflyLayout X(2, 1, GroupMode::Xor);
    EXPECT_EQ(X.decode_msf(encode_query(X, 1, 0)), (std::vector<std::uint64_t>{3, 0, 1, 0, 0, 0}));
    EXPECT_EQ(L.decode_msf(encode_query(L, 0, 0)), (std::vector<std::uint64_t>(6, 0)));
    EXPECT_THROW(encode_query(L, 2, 0), Error);
}

TEST(ButterflyQuery, Injective) {
    for (auto mode : {GroupMode::Cyclic, GroupMode::Xor}) {
        ButterflyLayout L(2, 2, mode);
        std::set<Id> seen;
        for (std::uint64_t s = 0; s < 4; ++s)
            for (std::uint64_t t = 0; t < 4; ++t) seen.insert(encode_query(L, s, t));
        EXPECT_EQ(seen.size(), 16u);
    }
}

TEST(ButterflyEquivalence, FullGraphHasNoWitness) {
    const auto g = ButterflyInstance::full(2, 2);
    for (auto mode : {GroupMode::Cyclic, GroupMode::Xor}) {
        const auto enc = encode_instance(g, mode);
        for (std::uint64_t s = 0; s < 4; ++s)
            for (std::uint64_t t = 0; t < 4; ++t) EXPECT_FALSE(brute_force_query(enc.instance, encode_query(enc.layout, s, t)).found);
    }
}

TEST(ButterflyEquivalence, RemovingOneEdge) {
    for (std::uint64_t e = 0; e < 16; ++e) {
        auto g = ButterflyInstance::full(2, 2);
        g.set(e, false);
        const auto removed = g.edge_at(e);
        for (auto mode : {GroupMode::Cyclic, GroupMode::Xor}) {
            const auto enc = encode_instance(g, mode);
            for (std::uint64_t s = 0; s < 4; ++s)
                for (std::uint64_t t = 0; t < 4; ++t) {
                    const auto path = canonical_path(2, 2, s, t);
                    const bool uses = std::find(path.begin(), path.end(), removed) != path.end();
                    EXPECT_EQ(brute_force_query(enc.instance, encode_query(enc.layout, s, t)).found, uses);
                }
        }
    }
}

TEST(ButterflyEquivalence, ModesAgreeOnRandomGraphs) {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = ButterflyInstance::random(2, 2, rng);
        EXPECT_TRUE(check_equivalence(g, GroupMode::Cyclic).ok());
        EXPECT_TRUE(check_equivalence(g, GroupMode::Xor).ok());
    }
    Rng rng3(13);
    for (int trial = 0; trial < 5; ++trial) EXPECT_TRUE(check_equivalence(ButterflyInstance::random(3, 2, rng3), GroupMode::Cyclic).ok());
}

TEST(ButterflyEncode, XorNeedsPowersOfTwo) {
    try {
        ButterflyLayout(3, 2, GroupMode::Xor);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnsupportedMode);
    }
    EXPECT_THROW(ButterflyLayout(2, 3, GroupMode::Xor), Error);
    EXPECT_THROW(parse_group_mode("ring"), Error);
}

TEST(ButterflyAnalysis, Wiring) {
    const auto a = analysis_parameters(1024, 8, 1024);
    EXPECT_DOUBLE_EQ(a.B, 64.0);
    EXPECT_DOUBLE_EQ(a.B_over_w2, 1.0);
    EXPECT_NEAR(a.T_lower, std::log(1024.0) / std::log(8.0), 1e-12);
}

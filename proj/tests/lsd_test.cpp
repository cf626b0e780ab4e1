#include <gtest/gtest.h>

#include <algorithm>

#include "tsumlab/lsd.hpp"
#include "tsumlab/solutions.hpp"

using namespace tsumlab;

namespace {

LsdInstance from_masks(std::uint64_t N, std::uint64_t B, unsigned xmask, std::uint64_t ycode) {
    LsdInstance inst{N, B, {}, {}};
    for (std::uint64_t j = 0; j < N; ++j)
        for (std::uint64_t b = 0; b < B; ++b)
            if ((xmask >> (j * B + b)) & 1) inst.X.push_back({j, b});
    for (std::uint64_t j = 0; j < N; ++j) {
        inst.Y.push_back(ycode % B);
        ycode /= B;
    }
    return inst;
}

bool contains(const std::vector<Id>& v, const Id& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST(LsdEncode, SmallExample) {
    LsdInstance inst{2, 2, {{0, 1}}, {0, 1}};
    const auto enc = encode_bob(inst, 1);
    EXPECT_EQ(enc.A1, (std::vector<Id>{2}));
    EXPECT_EQ(enc.A2, (std::vector<Id>{0}));
    const auto z = encode_alice(inst, 1);
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z[0], 1);
    EXPECT_EQ(enc.group.order(), 2 * 125);
}

TEST(LsdEncode, A2Shape) {
    const auto L = lsd_layout(4, 3, 2, GroupMode::Cyclic);
    const auto a2 = lsd_encode_A2(L);
    EXPECT_EQ(a2.size(), 2u * 3);
    for (const auto& v : a2) {
        const auto x = v.convert_to<std::uint64_t>();
        const auto lo = x % 7, hi = x / 7;
        EXPECT_LT(hi, 7u);
        EXPECT_TRUE((lo == 0) != (hi == 0));
        EXPECT_LE(std::max(lo, hi), 3u);
    }
}

TEST(LsdEncode, PaddingUsesGapDigit) {
    LsdInstance inst{3, 2, {}, {0, 0, 0}};
    for (auto mode : {GroupMode::Cyclic, GroupMode::Xor}) {
        const auto enc = encode_bob(inst, 2, mode);
        EXPECT_EQ(enc.layout.Npad, 4u);
        EXPECT_TRUE(enc.A1.empty());
        EXPECT_EQ(enc.instance.A1().size(), enc.instance.A2().size());
        for (const auto& z : encode_alice(inst, 2, mode)) EXPECT_FALSE(brute_force_query(enc.instance, z).found);
    }
}

TEST(LsdReduction, ExhaustiveSmall) {
    for (auto mode : {GroupMode::Cyclic, GroupMode::Xor})
        for (unsigned ell : {1u, 2u}) {
            const std::uint64_t N = 2, B = 3;
            for (unsigned xmask = 0; xmask < (1u << (N * B)); ++xmask)
                for (std::uint64_t y = 0; y < B * B; ++y) {
                    const auto inst = from_masks(N, B, xmask, y);
                    const auto enc = encode_bob(inst, ell, mode);
                    const auto qs = encode_alice(inst, ell, mode);
                    for (std::uint64_t i = 0; i < qs.size(); ++i) {
                        bool meet = false;
                        for (auto [j, b] : inst.X) meet |= j / ell == i && inst.Y[j] == b;
                        const auto r = brute_force_query(enc.instance, qs[i]);
                        ASSERT_EQ(r.found, meet) << xmask << " " << y << " " << i;
                        if (r.witness) {
                            EXPECT_TRUE(contains(enc.A1, r.witness->a1));
                            EXPECT_TRUE(contains(enc.A2, r.witness->a2));
                        }
                    }
                    const auto oracle = [&](const Id& z) { return brute_force_query(enc.instance, z).found; };
                    EXPECT_EQ(decide_disjointness(inst, ell, oracle, mode), inst.disjoint());
                }
        }
}

TEST(LsdProtocol, SumsetTableTakesOneRound) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        LsdInstance inst{4, 3, {}, {}};
        for (std::uint64_t j = 0; j < 4; ++j) {
            inst.Y.push_back(rng.below(std::uint64_t{3}));
            if (rng.coin()) inst.X.push_back({j, rng.below(std::uint64_t{3})});
        }
        const auto enc = encode_bob(inst, 2);
        SumsetTableSolution sol(enc.group, 16, false);
        const auto mem = sol.preprocess(enc.instance);
        const auto st = simulate_protocol(inst, 2, sol, mem);
        EXPECT_EQ(st.rounds, 1u);
        EXPECT_EQ(st.disjoint, inst.disjoint());
        EXPECT_LE(st.cells_revealed, 2u);
        EXPECT_EQ(st.bob_bits, st.cells_revealed * 16);
        EXPECT_EQ(decide_disjointness(inst, 2, sol, mem), inst.disjoint());
    }
}

TEST(LsdProtocol, ScanNeedsManyRounds) {
    LsdInstance inst{2, 2, {{0, 0}, {1, 1}}, {1, 1}};
    const auto enc = encode_bob(inst, 1);
    ScanSolution sol(enc.group, enc.instance.n(), ScanSolution::Schedule::Fixed);
    const auto mem = sol.preprocess(enc.instance);
    const auto st = simulate_protocol(inst, 1, sol, mem);
    EXPECT_EQ(st.rounds, sol.declared(AnswerMode::Decision).T);
    EXPECT_FALSE(st.disjoint);
}

TEST(LsdLayout, Errors) {
    EXPECT_THROW(lsd_layout(4, 2, 0, GroupMode::Cyclic), Error);
    EXPECT_THROW(lsd_layout(1u << 22, 4, 1, GroupMode::Cyclic), Error);
    LsdInstance bad{2, 2, {{2, 0}}, {0, 0}};
    EXPECT_THROW(bad.validate(), Error);
    EXPECT_THROW(encode_bob(bad, 1), Error);
}

TEST(LsdDefaults, Values) {
    EXPECT_EQ(default_ell(1 << 20, 16, 1.0), 5u);
    EXPECT_EQ(default_ell(2, 64, 0.5), 1u);
    EXPECT_EQ(default_block_size(4), 256u);
}

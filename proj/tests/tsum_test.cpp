#include <gtest/gtest.h>

#include <set>

#include "tsumlab/rng.hpp"
#include "tsumlab/solutions.hpp"

using namespace tsumlab;

namespace {

TsumInstance random_instance(const GroupSpec& g, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::set<Id> a1, a2;
    while (a1.size() < n) a1.insert(rng.below(g.order()));
    while (a2.size() < n) a2.insert(rng.below(g.order()));
    return TsumInstance::make(g, {a1.begin(), a1.end()}, {a2.begin(), a2.end()});
}

/// Independent oracle: every pair, keep the lexicographically smallest.
std::optional<Witness> all_pairs(const TsumInstance& inst, const Id& z) {
    std::optional<Witness> best;
    for (const auto& a1 : inst.A1())
        for (const auto& a2 : inst.A2())
            if (inst.group().add(a1, a2) == z) {
                Witness w{a1, a2};
                if (!best || std::tie(w.a1, w.a2) < std::tie(best->a1, best->a2)) best = w;
            }
    return best;
}

}  // namespace

TEST(BruteForce, Examples) {
    auto g5 = GroupSpec::cyclic(5);
    auto r = brute_force_query(TsumInstance::make(g5, {0}, {0}), 0);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, (Witness{0, 0}));
    EXPECT_FALSE(brute_force_query(TsumInstance::empty(g5), 3).found);

    auto inst = TsumInstance::make(GroupSpec::cyclic(7), {1, 2}, {2, 4});
    r = brute_force_query(inst, 6);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, (Witness{2, 4}));
    EXPECT_THROW(brute_force_query(inst, 7), Error);
}

TEST(BruteForce, MatchesAllPairs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto inst = random_instance(GroupSpec::product(GroupSpec::cyclic(3), GroupSpec::xor_bits(3)), 5, seed);
        for (int z = 0; z < 24; ++z) {
            const auto got = brute_force_query(inst, z);
            const auto want = all_pairs(inst, z);
            EXPECT_EQ(got.found, want.has_value());
            if (want) {
                EXPECT_EQ(*got.witness, *want);
            }
        }
    }
}

TEST(Instance, CanonicalisesAndPads) {
    auto inst = TsumInstance::make(GroupSpec::cyclic(10), {5, 3, 5}, {1});
    EXPECT_EQ(std::vector<Id>(inst.A1().begin(), inst.A1().end()), (std::vector<Id>{3, 5}));
    EXPECT_EQ(std::vector<Id>(inst.A2().begin(), inst.A2().end()), (std::vector<Id>{0, 1}));
    auto again = TsumInstance::make(inst.group(), {inst.A1().begin(), inst.A1().end()}, {inst.A2().begin(), inst.A2().end()});
    EXPECT_EQ(again, inst);
    EXPECT_THROW(TsumInstance::make(GroupSpec::cyclic(3), {4}, {}), Error);
}

TEST(SumsetTable, DecisionCells) {
    auto inst = TsumInstance::make(GroupSpec::cyclic(16), {1}, {2});
    SumsetTableSolution sol(inst.group(), 8, false);
    EXPECT_EQ(sol.declared(AnswerMode::Decision).S, 2u);
    EXPECT_EQ(sol.declared(AnswerMode::Decision).T, 1u);
}

TEST(SumsetTable, BitsEqualSumset) {
    auto inst = random_instance(GroupSpec::cyclic(40), 6, 11);
    SumsetTableSolution sol(inst.group(), 8);
    const auto mem = sol.preprocess(inst);
    for (int z = 0; z < 40; ++z) {
        const bool bit = (mem.get(z / 8) >> (z % 8)) & 1;
        EXPECT_EQ(bit, all_pairs(inst, z).has_value()) << z;
    }
}

TEST(SumsetTable, EmptyInstanceIsAllZero) {
    auto inst = TsumInstance::empty(GroupSpec::cyclic(20));
    SumsetTableSolution sol(inst.group(), 8);
    const auto mem = sol.preprocess(inst);
    for (auto w : mem.words()) EXPECT_EQ(w, 0u);
}

TEST(SumsetTable, Cap) {
    try {
        SumsetTableSolution(GroupSpec::cyclic(1000), 64, true, 512);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::GroupTooLarge);
    }
}

TEST(Scan, SingleElement) {
    auto inst = TsumInstance::make(GroupSpec::cyclic(9), {4}, {7});
    ScanSolution sol(inst.group(), 1);
    const auto mem = sol.preprocess(inst);
    for (int z = 0; z < 9; ++z) {
        const auto run = run_query(sol, mem, z);
        EXPECT_LE(run.transcript.probes.size(), 2u);
        EXPECT_EQ(run.answer.found, z == 2);
    }
}

TEST(Scan, AgreesWithOracle) {
    auto inst = random_instance(GroupSpec::cyclic(101), 8, 3);
    for (auto s : {ScanSolution::Schedule::Fixed, ScanSolution::Schedule::BinarySearch}) {
        ScanSolution sol(inst.group(), inst.n(), s);
        const auto rep = sweep_against_oracle(sol, inst);
        EXPECT_EQ(rep.queries, 101u);
        EXPECT_EQ(rep.mismatches, 0u);
        EXPECT_LE(rep.max_probes, rep.declared_T);
    }
}

TEST(Scan, WitnessIsSmallest) {
    auto inst = random_instance(GroupSpec::cyclic(31), 6, 9);
    ScanSolution sol(inst.group(), inst.n(), ScanSolution::Schedule::BinarySearch, 3);
    const auto mem = sol.preprocess(inst);
    for (int z = 0; z < 31; ++z) {
        const auto run = run_query(sol, mem, z);
        const auto want = all_pairs(inst, z);
        ASSERT_EQ(run.answer.found, want.has_value());
        if (want) {
            EXPECT_EQ(*run.answer.witness, *want);
        }
    }
}

TEST(Hellman, AgreesWithOracleAndBudget) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto inst = random_instance(GroupSpec::cyclic(257), 10, seed);
        HellmanSolution::Params p;
        p.m = 4 * seed;
        p.t = 5;
        p.seed = seed;
        p.w = 16;
        HellmanSolution sol(inst, p);
        const auto rep = sweep_against_oracle(sol, inst);
        EXPECT_EQ(rep.mismatches, 0u);
        EXPECT_LE(rep.max_probes, rep.declared_T);
        EXPECT_LE(sol.exception_count(), sol.sumset_size());
    }
}

TEST(Hellman, MoreChainsFewerExceptions) {
    auto inst = random_instance(GroupSpec::cyclic(4001), 20, 5);
    std::uint64_t last = ~std::uint64_t{0};
    for (std::uint64_t m : {1, 4, 16, 64}) {
        HellmanSolution sol(inst, {m, 8, 2, 64});
        EXPECT_LE(sol.exception_count(), last);
        last = sol.exception_count();
    }
}

TEST(SingleSet, Example) {
    auto inst = TsumInstance::make(GroupSpec::cyclic(5), {1}, {2});
    const auto t = to_single_set(inst);
    EXPECT_EQ(t.group.order(), 10);
    const Id q = t.query(3);
    EXPECT_EQ(q, 8);
    const auto r = brute_force_query(t.instance, q);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, (Witness{t.group.combine(0, 1), t.group.combine(1, 2)}));
    EXPECT_EQ(t.project(*r.witness), (Witness{1, 2}));
}

TEST(SingleSet, PreservesAnswers) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto inst = random_instance(GroupSpec::cyclic(23), 5, seed);
        const auto t = to_single_set(inst);
        EXPECT_EQ(t.instance.n(), 2 * inst.n());
        for (int z = 0; z < 23; ++z) {
            const auto two = brute_force_query(inst, z);
            const auto one = brute_force_query(t.instance, t.query(z));
            EXPECT_EQ(two.found, one.found);
            if (one.witness) {
                const auto w = t.project(*one.witness);
                EXPECT_EQ(inst.group().add(w.a1, w.a2), z);
            }
        }
    }
}

TEST(SingleSet, Empty) {
    const auto t = to_single_set(TsumInstance::empty(GroupSpec::cyclic(4)));
    EXPECT_EQ(t.instance.n(), 0u);
    for (int z = 0; z < 4; ++z) EXPECT_FALSE(brute_force_query(t.instance, t.query(z)).found);
}

TEST(Conjectures, Recorded) { EXPECT_EQ(std::size(kConjectures), 3u); }

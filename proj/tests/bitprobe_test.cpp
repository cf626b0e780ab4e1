#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "tsumlab/bitprobe.hpp"

using namespace tsumlab;

namespace {

using Edges = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

/// Group Cyclic(nq); query q reads its own pair (2q, 2q+1) with AND unless overridden.
TwoProbeScheme forest(std::uint64_t nq, std::uint64_t S = 0) {
    TwoProbeScheme s;
    s.group = GroupSpec::cyclic(nq);
    s.S = S ? S : 2 * nq + 8;
    for (std::uint64_t q = 0; q < nq; ++q) s.queries.push_back({2 * q, 2 * q + 1, 8});
    return s;
}

/// Moves the first three queries onto a triangle over cells S-3..S-1.
TwoProbeScheme triangle(unsigned t0, unsigned t1, unsigned t2) {
    auto s = forest(61);
    const auto a = s.S - 3, b = s.S - 2, c = s.S - 1;
    s.queries[0] = {a, b, t0};
    s.queries[1] = {b, c, t1};
    s.queries[2] = {c, a, t2};
    return s;
}

std::size_t reachable_by_brute_force(const TwoProbeScheme& s, const std::vector<std::uint64_t>& qs) {
    std::vector<std::uint64_t> cells;
    for (auto q : qs) {
        cells.push_back(s.queries[q].u);
        cells.push_back(s.queries[q].v);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    std::set<std::uint64_t> pats;
    for (std::uint64_t a = 0; a < (1u << cells.size()); ++a) {
        std::map<std::uint64_t, bool> x;
        for (std::size_t i = 0; i < cells.size(); ++i) x[cells[i]] = (a >> i) & 1;
        std::uint64_t p = 0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            const auto& Q = s.queries[qs[i]];
            const unsigned idx = (x[Q.u] ? 2 : 0) + (x[Q.v] ? 1 : 0);
            if ((Q.table >> idx) & 1) p |= 1u << i;
        }
        pats.insert(p);
    }
    return pats.size();
}

/// Girth by enumerating edge subsets that form one simple cycle.
std::optional<std::uint64_t> girth_by_subsets(std::uint64_t nodes, const Edges& edges) {
    std::optional<std::uint64_t> best;
    for (std::uint64_t m = 1; m < (1u << edges.size()); ++m) {
        std::vector<int> deg(nodes, 0);
        std::vector<std::uint64_t> parent(nodes);
        for (std::uint64_t i = 0; i < nodes; ++i) parent[i] = i;
        std::function<std::uint64_t(std::uint64_t)> find = [&](std::uint64_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        std::uint64_t k = 0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!((m >> e) & 1)) continue;
            ++k;
            auto [u, v] = edges[e];
            deg[u] += 1;
            deg[v] += 1;
            parent[find(u)] = find(v);
        }
        bool ok = true;
        std::optional<std::uint64_t> root;
        for (std::uint64_t x = 0; x < nodes && ok; ++x) {
            if (deg[x] == 0) continue;
            if (deg[x] != 2) ok = false;
            if (!root) root = find(x);
            else if (find(x) != *root) ok = false;
        }
        if (ok && (!best || k < *best)) best = k;
    }
    return best;
}

}  // namespace

TEST(TruthTables, ClassSizes) {
    std::map<FnType, int> count;
    for (unsigned t = 0; t < 16; ++t) {
        const bool f00 = t & 1, f01 = t & 2, f10 = t & 4, f11 = t & 8;
        FnType want;
        if (f00 == f01 && f01 == f10 && f10 == f11) want = FnType::Const;
        else if ((f00 == f01 && f10 == f11) || (f00 == f10 && f01 == f11)) want = FnType::Copy;
        else if (f00 == f11 && f01 == f10) want = FnType::Xor;
        else want = FnType::And;
        EXPECT_EQ(classify_truth_table(t), want) << t;
        ++count[want];
    }
    EXPECT_EQ(count[FnType::Const], 2);
    EXPECT_EQ(count[FnType::Copy], 4);
    EXPECT_EQ(count[FnType::And], 8);
    EXPECT_EQ(count[FnType::Xor], 2);
    EXPECT_THROW(classify_truth_table(16), Error);
}

TEST(TruthTables, Eval) {
    EXPECT_TRUE(eval_table(8, true, true));
    EXPECT_FALSE(eval_table(8, true, false));
    EXPECT_TRUE(eval_table(12, true, false));
    EXPECT_TRUE(eval_table(10, false, true));
}

TEST(Witness, ForestIsNotRefuted) {
    EXPECT_EQ(find_refutation_witness(forest(5)).kind, VerdictKind::NotRefuted);
    EXPECT_TRUE(find_witnesses(forest(5)).empty());
}

TEST(Witness, ConstEdge) {
    auto s = forest(5);
    s.queries[3].table = 15;
    auto v = find_refutation_witness(s);
    EXPECT_EQ(v.kind, VerdictKind::ConstEdge);
    EXPECT_EQ(v.queries, (std::vector<std::uint64_t>{3}));
    // a == b on a self-loop is constant
    s = forest(5);
    s.queries[1] = {4, 4, 9};
    EXPECT_EQ(find_refutation_witness(s).kind, VerdictKind::ConstEdge);
}

TEST(Witness, ParallelTriple) {
    auto s = forest(5);
    s.queries[1] = {0, 1, 14};
    s.queries[2] = {1, 0, 6};
    const auto all = find_witnesses(s);
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(all.front().kind, VerdictKind::ParallelTriple);
    EXPECT_EQ(all.front().queries, (std::vector<std::uint64_t>{0, 1, 2}));
    EXPECT_TRUE(std::any_of(all.begin(), all.end(), [](const Verdict& v) { return v.kind == VerdictKind::AndCycle; }));
}

TEST(Witness, CopyHub) {
    auto s = forest(5);
    s.queries[0] = {0, 1, 12};
    s.queries[4] = {2, 0, 10};
    const auto v = find_refutation_witness(s);
    EXPECT_EQ(v.kind, VerdictKind::CopyHub);
    EXPECT_EQ(*v.node, 0u);
    EXPECT_EQ(v.queries, (std::vector<std::uint64_t>{0, 4}));
}

TEST(Witness, AndCycle) {
    auto v = find_refutation_witness(triangle(8, 8, 8));
    EXPECT_EQ(v.kind, VerdictKind::AndCycle);
    EXPECT_EQ(v.queries, (std::vector<std::uint64_t>{0, 1, 2}));
    EXPECT_FALSE(*v.fixing_output);
    EXPECT_TRUE(*find_refutation_witness(triangle(14, 8, 7)).fixing_output);
}

TEST(Witness, XorCycle) {
    auto v = find_refutation_witness(triangle(6, 6, 9));
    EXPECT_EQ(v.kind, VerdictKind::XorCycle);
    EXPECT_TRUE(*v.parity);
    EXPECT_FALSE(*find_refutation_witness(triangle(6, 6, 6)).parity);
}

TEST(Witness, TrivialSchemeSurvives) {
    const auto s = TwoProbeScheme::trivial(GroupSpec::cyclic(16));
    EXPECT_EQ(find_refutation_witness(s).kind, VerdictKind::NotRefuted);
    const auto inst = TsumInstance::make(s.group, {1, 5}, {2, 9});
    const auto bits = preprocess_bits("sumset-bits", s, inst);
    for (std::uint64_t z = 0; z < 16; ++z) EXPECT_EQ(s.answer(z, bits), brute_force_query(inst, z).found);
    const auto r = empirical_refute(s, {0, 3, 7});
    EXPECT_TRUE(r.consistent);
    EXPECT_FALSE(r.failing);
}

TEST(Refute, AndTriangle) {
    const auto s = triangle(8, 8, 8);
    const auto r = empirical_refute(s, {0, 1, 2}, 0, "sumset-bits");
    EXPECT_EQ(r.patterns, 8u);
    EXPECT_EQ(r.reachable_patterns, reachable_by_brute_force(s, {0, 1, 2}));
    EXPECT_EQ(r.reachable_patterns, 5u);
    EXPECT_FALSE(r.consistent);
    ASSERT_TRUE(r.failing);
    EXPECT_TRUE(verify_realization(s.group, *r.failing, 3));
    EXPECT_TRUE(r.wrong_query);
}

TEST(Refute, XorTriangle) {
    const auto s = triangle(6, 9, 6);
    const auto r = empirical_refute(s, {0, 1, 2}, 4, "zeros");
    EXPECT_EQ(r.reachable_patterns, reachable_by_brute_force(s, {0, 1, 2}));
    EXPECT_EQ(r.reachable_patterns, 4u);
    ASSERT_TRUE(r.failing);
    EXPECT_TRUE(verify_realization(s.group, *r.failing, 4));
}

TEST(Girth, SmallGraphs) {
    const Edges k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    EXPECT_EQ(bfs_girth(4, k4), 3u);
    const Edges c6{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
    EXPECT_EQ(bfs_girth(6, c6), 6u);
    EXPECT_EQ(bfs_girth(3, {{0, 1}, {1, 0}}), 2u);
    EXPECT_EQ(bfs_girth(3, {{0, 1}, {1, 2}}), std::nullopt);
    const auto k4check = girth_bound_check(4, 6, &k4);
    EXPECT_DOUBLE_EQ(k4check.average_degree, 3.0);
    EXPECT_FALSE(k4check.analytic_bound);
    try {
        girth_bound_check(6, 6, &c6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DegreeTooSmall);
    }
}

TEST(Girth, AgreesWithSubsetEnumeration) {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        Edges e;
        for (int i = 0; i < 9; ++i) {
            auto u = rng.below(std::uint64_t{7}), v = rng.below(std::uint64_t{7});
            if (u == v) v = (v + 1) % 7;
            e.push_back({u, v});
        }
        EXPECT_EQ(bfs_girth(7, e), girth_by_subsets(7, e));
    }
}

TEST(Girth, RandomMultigraphUnderBound) {
    Rng rng(5);
    Edges e;
    for (int i = 0; i < 600; ++i) e.push_back({rng.below(std::uint64_t{200}), rng.below(std::uint64_t{200})});
    for (auto& [u, v] : e)
        if (u == v) v = (v + 1) % 200;
    const auto g = girth_bound_check(200, e.size(), &e);
    ASSERT_TRUE(g.analytic_bound);
    EXPECT_NEAR(*g.analytic_bound, 4 + 2 * std::log(100.0) / std::log(4.0), 1e-9);
    EXPECT_TRUE(g.consistent);
}

TEST(Preprocess, Maps) {
    const auto s = forest(4);
    const auto inst = TsumInstance::make(s.group, {1}, {2});
    for (const auto& m : preprocess_map_names()) EXPECT_EQ(preprocess_bits(m, s, inst).size(), s.S);
    EXPECT_EQ(preprocess_bits("random", s, inst, 3), preprocess_bits("random", s, inst, 3));
    EXPECT_THROW(preprocess_bits("oracle", s, inst), Error);
    auto bad = s;
    bad.queries[0].u = s.S;
    EXPECT_THROW(bad.validate(), Error);
}

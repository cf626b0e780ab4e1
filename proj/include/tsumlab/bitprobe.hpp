#pragma once

/**
 * @file bitprobe.hpp
 * @brief Auditor for non-adaptive two-probe bit schemes (T = 2, w = 1).
 *
 * Each query q reads bits a = x[u(q)] and b = x[v(q)] and answers bit
 * (a << 1 | b) of its 4-bit truth table. The cells form a multigraph with one
 * edge per query.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsumlab/adversarial.hpp"
#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/rng.hpp"

namespace tsumlab {

enum class FnType { Const, Copy, And, Xor };

inline const char* fn_type_name(FnType t) {
    switch (t) {
        case FnType::Const: return "const";
        case FnType::Copy: return "copy";
        case FnType::And: return "and";
        case FnType::Xor: return "xor";
    }
    return "?";
}

inline FnType classify_truth_table(unsigned table) {
    if (table > 15) throw Error(Errc::InvalidParameters, "truth table must be 4 bits");
    switch (table) {
        case 0:
        case 15: return FnType::Const;
        case 3:
        case 12:
        case 5:
        case 10: return FnType::Copy;
        case 6:
        case 9: return FnType::Xor;
        default: return FnType::And;
    }
}

inline bool eval_table(unsigned table, bool a, bool b) { return (table >> ((a ? 2 : 0) | (b ? 1 : 0))) & 1; }

struct TwoProbeQuery {
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    unsigned table = 0;
};

struct TwoProbeScheme {
    GroupSpec group = GroupSpec::cyclic(1);
    std::uint64_t S = 1;
    std::vector<TwoProbeQuery> queries;  // indexed by group element id

    void validate() const {
        if (Id(queries.size()) != group.order()) throw Error(Errc::InvalidParameters, "scheme needs one query per group element");
        if (S < 1) throw Error(Errc::InvalidParameters, "scheme needs S >= 1");
        for (const auto& q : queries) {
            if (q.u >= S || q.v >= S) throw Error(Errc::OutOfBoundsProbe, "query reads a cell >= S");
            if (q.table > 15) throw Error(Errc::InvalidParameters, "truth table must be 4 bits");
        }
    }

    bool answer(std::uint64_t q, const std::vector<char>& bits) const {
        const auto& Q = queries.at(q);
        return eval_table(Q.table, bits.at(Q.u), bits.at(Q.v));
    }

    /// Type after collapsing a self-loop to a function of one bit.
    FnType effective_type(std::uint64_t q) const {
        const auto& Q = queries.at(q);
        if (Q.u != Q.v) return classify_truth_table(Q.table);
        const bool f0 = eval_table(Q.table, false, false);
        const bool f1 = eval_table(Q.table, true, true);
        return f0 == f1 ? FnType::Const : FnType::Copy;
    }

    /// Cell a copy-type query depends on.
    std::uint64_t copy_node(std::uint64_t q) const {
        const auto& Q = queries.at(q);
        if (Q.u == Q.v) return Q.u;
        return (Q.table == 3 || Q.table == 12) ? Q.u : Q.v;
    }

    /// The identity scheme: cell q holds 1{q in sumset}.
    static TwoProbeScheme trivial(const GroupSpec& g) {
        TwoProbeScheme s;
        s.group = g;
        const auto n = to_u64(g.order());
        s.S = n;
        s.queries.resize(n);
        for (std::uint64_t q = 0; q < n; ++q) s.queries[q] = {q, q, 12};
        return s;
    }
};

enum class VerdictKind { ConstEdge, ParallelTriple, CopyHub, AndCycle, XorCycle, NotRefuted };

inline const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::ConstEdge: return "ConstEdge";
        case VerdictKind::ParallelTriple: return "ParallelTriple";
        case VerdictKind::CopyHub: return "CopyHub";
        case VerdictKind::AndCycle: return "AndCycle";
        case VerdictKind::XorCycle: return "XorCycle";
        case VerdictKind::NotRefuted: return "NotRefuted";
    }
    return "?";
}

struct Verdict {
    VerdictKind kind = VerdictKind::NotRefuted;
    std::vector<std::uint64_t> queries;  // the witness set Q
    std::optional<std::uint64_t> node;   // CopyHub
    std::optional<bool> fixing_output;   // AndCycle: value 3 of 4 inputs give on the first cycle edge
    std::optional<bool> parity;          // XorCycle: xor of all cycle answers
};

namespace detail {

/// Shortest cycle through edges of one type: for each edge, BFS between its
/// endpoints avoiding it. Parallel edges make 2-cycles.
inline std::optional<std::vector<std::uint64_t>> shortest_typed_cycle(const TwoProbeScheme& s, FnType type,
                                                                       std::size_t max_len) {
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> adj(s.S);  // (neighbour, query)
    std::vector<std::uint64_t> edges;
    for (std::uint64_t q = 0; q < s.queries.size(); ++q) {
        if (s.effective_type(q) != type) continue;
        const auto& Q = s.queries[q];
        if (Q.u == Q.v) continue;
        adj[Q.u].push_back({Q.v, q});
        adj[Q.v].push_back({Q.u, q});
        edges.push_back(q);
    }
    std::optional<std::vector<std::uint64_t>> best;
    for (auto e : edges) {
        const auto& E = s.queries[e];
        std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> parent;  // node -> (prev node, query)
        std::deque<std::uint64_t> frontier{E.u};
        parent[E.u] = {E.u, e};
        while (!frontier.empty() && !parent.count(E.v)) {
            const auto x = frontier.front();
            frontier.pop_front();
            for (auto [y, q] : adj[x]) {
                if (q == e || parent.count(y)) continue;
                parent[y] = {x, q};
                frontier.push_back(y);
            }
        }
        if (!parent.count(E.v)) continue;
        std::vector<std::uint64_t> cycle{e};
        for (auto x = E.v; x != E.u; x = parent[x].first) cycle.push_back(parent[x].second);
        if (cycle.size() <= max_len && (!best || cycle.size() < best->size())) best = cycle;
    }
    if (best) std::sort(best->begin(), best->end());
    return best;
}

/// Output shared by 3 of the 4 inputs.
inline bool and_fixing_output(unsigned table) { return std::popcount(table) == 3; }

}  // namespace detail

/// Every refutation witness found, in priority order, at most one per kind.
inline std::vector<Verdict> find_witnesses(const TwoProbeScheme& s, std::size_t max_cycle = 64) {
    s.validate();
    std::vector<Verdict> out;
    const auto nq = s.queries.size();

    for (std::uint64_t q = 0; q < nq; ++q) {
        if (s.effective_type(q) == FnType::Const) {
            out.push_back({VerdictKind::ConstEdge, {q}, {}, {}, {}});
            break;
        }
    }

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> by_pair;
    for (std::uint64_t q = 0; q < nq; ++q) {
        const auto& Q = s.queries[q];
        by_pair[{std::min(Q.u, Q.v), std::max(Q.u, Q.v)}].push_back(q);
    }
    for (const auto& [pair, qs] : by_pair) {
        if (qs.size() >= 3) {
            out.push_back({VerdictKind::ParallelTriple, {qs[0], qs[1], qs[2]}, {}, {}, {}});
            break;
        }
    }

    std::map<std::uint64_t, std::vector<std::uint64_t>> hubs;
    for (std::uint64_t q = 0; q < nq; ++q)
        if (s.effective_type(q) == FnType::Copy) hubs[s.copy_node(q)].push_back(q);
    for (const auto& [node, qs] : hubs) {
        if (qs.size() >= 2) {
            out.push_back({VerdictKind::CopyHub, {qs[0], qs[1]}, node, {}, {}});
            break;
        }
    }

    if (auto c = detail::shortest_typed_cycle(s, FnType::And, max_cycle)) {
        Verdict v{VerdictKind::AndCycle, *c, {}, {}, {}};
        v.fixing_output = detail::and_fixing_output(s.queries[c->front()].table);
        out.push_back(std::move(v));
    }
    if (auto c = detail::shortest_typed_cycle(s, FnType::Xor, max_cycle)) {
        Verdict v{VerdictKind::XorCycle, *c, {}, {}, {}};
        // a xor b xor [table == 9]; every node appears twice around the cycle.
        bool parity = false;
        for (auto q : *c) parity ^= s.queries[q].table == 9;
        v.parity = parity;
        out.push_back(std::move(v));
    }
    return out;
}

inline Verdict find_refutation_witness(const TwoProbeScheme& s, std::size_t max_cycle = 64) {
    auto all = find_witnesses(s, max_cycle);
    if (all.empty()) return {};
    return all.front();
}

struct GirthCheck {
    double average_degree = 0;
    std::optional<double> analytic_bound;  // empty when unbounded (d <= 3)
    std::optional<std::uint64_t> bfs_girth;
    bool consistent = true;                // bfs girth <= bound whenever both exist
};

/// Shortest cycle of an undirected multigraph; self-loops have length 1.
inline std::optional<std::uint64_t> bfs_girth(std::uint64_t nodes, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges) {
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> adj(nodes);
    for (std::uint64_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (u >= nodes || v >= nodes) throw Error(Errc::InvalidParameters, "edge endpoint out of range");
        if (u == v) return 1;
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::optional<std::uint64_t> best;
    for (std::uint64_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        std::vector<std::uint64_t> dist(nodes, std::numeric_limits<std::uint64_t>::max());
        std::deque<std::uint64_t> frontier{u};
        dist[u] = 0;
        while (!frontier.empty()) {
            const auto x = frontier.front();
            frontier.pop_front();
            if (x == v) break;
            if (best && dist[x] + 1 >= *best) break;
            for (auto [y, f] : adj[x]) {
                if (f == e || dist[y] != std::numeric_limits<std::uint64_t>::max()) continue;
                dist[y] = dist[x] + 1;
                frontier.push_back(y);
            }
        }
        if (dist[v] != std::numeric_limits<std::uint64_t>::max()) {
            const auto len = dist[v] + 1;
            if (!best || len < *best) best = len;
        }
    }
    return best;
}

/// Largest r with nodes >= 2 (d - 2)^(r/2 - 2), d the average degree.
inline GirthCheck girth_bound_check(std::uint64_t nodes, std::uint64_t edge_count,
                                    const std::vector<std::pair<std::uint64_t, std::uint64_t>>* edges = nullptr) {
    if (nodes == 0) throw Error(Errc::InvalidParameters, "graph needs nodes");
    GirthCheck g;
    g.average_degree = 2.0 * static_cast<double>(edge_count) / static_cast<double>(nodes);
    if (g.average_degree <= 2) throw Error(Errc::DegreeTooSmall, "average degree must exceed 2");
    if (g.average_degree > 3) {
        g.analytic_bound = 4 + 2 * std::log(static_cast<double>(nodes) / 2) / std::log(g.average_degree - 2);
    }
    if (edges) {
        g.bfs_girth = bfs_girth(nodes, *edges);
        if (g.analytic_bound && g.bfs_girth) g.consistent = static_cast<double>(*g.bfs_girth) <= *g.analytic_bound;
        if (g.analytic_bound && !g.bfs_girth) g.consistent = false;
    }
    return g;
}

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> query_graph_edges(const TwoProbeScheme& s) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> e;
    e.reserve(s.queries.size());
    for (const auto& q : s.queries) e.push_back({q.u, q.v});
    return e;
}

/// Preprocessing maps instance -> S bits.
inline std::vector<char> preprocess_bits(const std::string& map, const TwoProbeScheme& s, const TsumInstance& inst,
                                         std::uint64_t seed = 1) {
    std::vector<char> bits(s.S, 0);
    if (map == "zeros") return bits;
    if (map == "sumset-bits") {
        for (const auto& z : sumset(inst))
            if (z < s.S) bits[z.convert_to<std::uint64_t>()] = 1;
        return bits;
    }
    if (map == "random") {
        Rng rng(seed);
        for (auto& b : bits) b = rng.coin();
        return bits;
    }
    throw Error(Errc::UnsupportedMode, "unknown preprocessing map '" + map + "'");
}

inline const std::vector<std::string>& preprocess_map_names() {
    static const std::vector<std::string> names{"sumset-bits", "zeros", "random"};
    return names;
}

struct RefutationResult {
    bool consistent = true;                  // every pattern on Q reachable by some memory
    std::uint64_t patterns = 0;              // 2^|Q|
    std::uint64_t reachable_patterns = 0;
    std::uint64_t touched_cells = 0;
    bool exhaustive = true;
    std::optional<SubsetRealization> failing;  // misanswered under every memory content
    std::optional<std::uint64_t> wrong_query;  // under the named preprocessing map, if any
};

/// Builds the realization for every P subset of Q and asks which answer
/// patterns any memory can produce on Q. A pattern no assignment to the
/// touched cells reaches is a failing instance for every preprocessing map.
inline RefutationResult empirical_refute(const TwoProbeScheme& s, const std::vector<std::uint64_t>& witness_queries,
                                         std::size_t n_param = 0, const std::string& preprocess_map = "",
                                         std::uint64_t seed = 1, unsigned exhaustive_cells = 20) {
    s.validate();
    std::vector<std::uint64_t> wq = witness_queries;
    std::sort(wq.begin(), wq.end());
    wq.erase(std::unique(wq.begin(), wq.end()), wq.end());
    if (wq.size() > 20) throw Error(Errc::InvalidParameters, "witness set too large");
    std::vector<Id> Q(wq.begin(), wq.end());
    const std::size_t n = std::max(n_param, Q.size());

    std::vector<std::uint64_t> cells;
    for (auto q : wq) {
        cells.push_back(s.queries[q].u);
        cells.push_back(s.queries[q].v);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    RefutationResult res;
    res.patterns = std::uint64_t{1} << wq.size();
    res.touched_cells = cells.size();
    std::vector<char> reachable(res.patterns, 0);
    std::vector<char> bits(s.S, 0);
    auto record = [&]() {
        std::uint64_t pat = 0;
        for (std::size_t i = 0; i < wq.size(); ++i)
            if (s.answer(wq[i], bits)) pat |= std::uint64_t{1} << i;
        reachable[pat] = 1;
    };
    if (cells.size() <= exhaustive_cells) {
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << cells.size()); ++a) {
            for (std::size_t c = 0; c < cells.size(); ++c) bits[cells[c]] = (a >> c) & 1;
            record();
        }
    } else {
        res.exhaustive = false;
        Rng rng(seed);
        for (std::uint64_t trial = 0; trial < (std::uint64_t{1} << exhaustive_cells); ++trial) {
            for (auto c : cells) bits[c] = rng.coin();
            record();
        }
    }
    res.reachable_patterns = static_cast<std::uint64_t>(std::count(reachable.begin(), reachable.end(), 1));
    res.consistent = res.reachable_patterns == res.patterns;
    if (res.consistent) return res;

    for (std::uint64_t mask = 0; mask < res.patterns; ++mask) {
        if (reachable[mask]) continue;
        auto r = realize_subset(s.group, Q, subset_from_mask(Q, mask), n);
        if (!preprocess_map.empty()) {
            const auto inst = TsumInstance::make(s.group, r.A1, r.A2);
            const auto mem = preprocess_bits(preprocess_map, s, inst, seed);
            for (std::size_t i = 0; i < wq.size(); ++i) {
                if (s.answer(wq[i], mem) != static_cast<bool>((mask >> i) & 1)) {
                    res.wrong_query = wq[i];
                    break;
                }
            }
        }
        res.failing = std::move(r);
        break;
    }
    return res;
}

}  // namespace tsumlab

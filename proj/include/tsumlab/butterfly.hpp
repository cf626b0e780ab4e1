#pragma once

/**
 * @file butterfly.hpp
 * @brief Reachability in butterfly graphs compiled to 3SUM-Indexing.
 *
 * Nodes are d-digit base-B labels, one copy per layer 0..d. The layer-k edge
 * e_k(i, j) joins i at layer k to j at layer k+1, where i and j agree on every
 * digit except digit k. The source-to-sink path is unique: edge k of the path
 * from s to t goes from (s[d-1..k], t[k-1..0]) to (s[d-1..k+1], t[k..0]).
 *
 * Element layout, most significant digit first (2(d+2) digits):
 *
 *   [top: base 4d] [presence: base 3] [d digits base B] [d digits base B] [2 digits base B]
 *
 *   A1, edge e_k(i,j):  k,  1{e in E},  i[d-1..k] 0^k,   0^(d-k-1) j[k..0],  0 0
 *   A2, layer k:       -k,  0,          0^(d-k) *^k,     *^(d-k-1) 0^(k+1),  * *
 *   query (s,t):        0,  0,          s[d-1..0],       t[d-1..0],          0 0
 *
 * In xor mode the presence digit has base 2 and -k is the one's complement
 * of k in log2(4d) bits, so the query's top digit is all ones.
 */

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/codec.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"
#include "tsumlab/rng.hpp"

namespace tsumlab {

enum class GroupMode { Cyclic, Xor };

inline const char* group_mode_name(GroupMode m) { return m == GroupMode::Cyclic ? "cyclic" : "xor"; }

inline GroupMode parse_group_mode(const std::string& s) {
    if (s == "cyclic") return GroupMode::Cyclic;
    if (s == "xor") return GroupMode::Xor;
    throw Error(Errc::UnsupportedMode, "mode must be cyclic or xor, got '" + s + "'");
}

struct ButterflyEdge {
    unsigned k;
    std::uint64_t i;
    std::uint64_t j;
    friend bool operator==(const ButterflyEdge&, const ButterflyEdge&) = default;
};

class ButterflyInstance {
public:
    ButterflyInstance(std::uint64_t B, unsigned d) : B_(B), d_(d) {
        if (B < 2) throw Error(Errc::InvalidParameters, "butterfly degree B must be >= 2");
        if (d < 1) throw Error(Errc::InvalidParameters, "butterfly depth d must be >= 1");
        const Id labels = ipow(Id(B), d);
        if (labels > Id(std::uint64_t{1} << 32)) throw Error(Errc::ParameterOverflow, "B^d too large");
        labels_ = labels.convert_to<std::uint64_t>();
        edges_.assign(d * labels_ * B, false);
    }

    static ButterflyInstance full(std::uint64_t B, unsigned d) {
        ButterflyInstance g(B, d);
        g.edges_.assign(g.edges_.size(), true);
        return g;
    }

    static ButterflyInstance random(std::uint64_t B, unsigned d, Rng& rng) {
        ButterflyInstance g(B, d);
        for (std::size_t e = 0; e < g.edges_.size(); ++e) g.edges_[e] = rng.coin();
        return g;
    }

    std::uint64_t B() const noexcept { return B_; }
    unsigned d() const noexcept { return d_; }
    std::uint64_t labels() const noexcept { return labels_; }
    std::uint64_t edge_count() const noexcept { return edges_.size(); }

    std::uint64_t digit(std::uint64_t label, unsigned pos) const {
        for (unsigned p = 0; p < pos; ++p) label /= B_;
        return label % B_;
    }

    std::uint64_t with_digit(std::uint64_t label, unsigned pos, std::uint64_t value) const {
        std::uint64_t w = 1;
        for (unsigned p = 0; p < pos; ++p) w *= B_;
        return label - digit(label, pos) * w + value * w;
    }

    void check_label(std::uint64_t label) const {
        if (label >= labels_) throw Error(Errc::LabelOutOfRange, "label " + std::to_string(label) + " >= B^d = " + std::to_string(labels_));
    }

    /// (k, i, j[k]) lexicographic.
    std::uint64_t edge_index(const ButterflyEdge& e) const {
        if (e.k >= d_) throw Error(Errc::LabelOutOfRange, "layer out of range");
        check_label(e.i);
        check_label(e.j);
        if (with_digit(e.i, e.k, 0) != with_digit(e.j, e.k, 0)) {
            throw Error(Errc::LabelOutOfRange, "edge endpoints differ outside digit " + std::to_string(e.k));
        }
        return (e.k * labels_ + e.i) * B_ + digit(e.j, e.k);
    }

    ButterflyEdge edge_at(std::uint64_t index) const {
        const std::uint64_t jk = index % B_;
        index /= B_;
        const std::uint64_t i = index % labels_;
        const auto k = static_cast<unsigned>(index / labels_);
        return {k, i, with_digit(i, k, jk)};
    }

    bool has(const ButterflyEdge& e) const { return edges_[edge_index(e)]; }
    bool has(std::uint64_t index) const { return edges_.at(index); }
    void set(std::uint64_t index, bool present) { edges_.at(index) = present; }
    void set(const ButterflyEdge& e, bool present) { edges_[edge_index(e)] = present; }
    const std::vector<bool>& edges() const noexcept { return edges_; }

private:
    std::uint64_t B_;
    unsigned d_;
    std::uint64_t labels_ = 0;
    std::vector<bool> edges_;
};

inline std::vector<ButterflyEdge> canonical_path(std::uint64_t B, unsigned d, std::uint64_t s, std::uint64_t t) {
    ButterflyInstance shape(B, d);
    shape.check_label(s);
    shape.check_label(t);
    std::vector<ButterflyEdge> path;
    path.reserve(d);
    std::uint64_t cur = s;
    for (unsigned k = 0; k < d; ++k) {
        const std::uint64_t next = shape.with_digit(cur, k, shape.digit(t, k));
        path.push_back({k, cur, next});
        cur = next;
    }
    return path;
}

inline bool reachable(const ButterflyInstance& g, std::uint64_t s, std::uint64_t t) {
    for (const auto& e : canonical_path(g.B(), g.d(), s, t))
        if (!g.has(e)) return false;
    return true;
}

/// Plain BFS over present edges, layer by layer; independent of canonical_path.
inline bool bfs_reachable(const ButterflyInstance& g, std::uint64_t s, std::uint64_t t) {
    g.check_label(s);
    g.check_label(t);
    std::vector<char> frontier(g.labels(), 0);
    frontier[s] = 1;
    for (std::uint64_t layer = 0; layer < g.d(); ++layer) {
        std::vector<char> next(g.labels(), 0);
        for (std::uint64_t e = layer * g.labels() * g.B(); e < (layer + 1) * g.labels() * g.B(); ++e) {
            if (!g.has(e)) continue;
            const auto edge = g.edge_at(e);
            if (frontier[edge.i]) next[edge.j] = 1;
        }
        frontier = std::move(next);
    }
    return frontier[t] != 0;
}

/// Digit layout for one (B, d, mode).
class ButterflyLayout {
public:
    ButterflyLayout(std::uint64_t B, unsigned d, GroupMode mode) : B_(B), d_(d), mode_(mode), codec_(bases(B, d, mode), codec_mode(mode)) {}

    std::uint64_t B() const noexcept { return B_; }
    unsigned d() const noexcept { return d_; }
    GroupMode mode() const noexcept { return mode_; }
    const MixedRadixCodec& codec() const noexcept { return codec_; }
    std::size_t digits() const noexcept { return 2 * (d_ + 2); }

    GroupSpec group() const {
        if (mode_ == GroupMode::Cyclic) return GroupSpec::cyclic(codec_.order());
        return GroupSpec::xor_bits(bit_length(codec_.order()) - 1);
    }

    std::uint64_t top_base() const { return 4 * static_cast<std::uint64_t>(d_); }

    /// Encoding of -k in the top digit.
    std::uint64_t neg_layer(unsigned k) const {
        if (mode_ == GroupMode::Cyclic) return (top_base() - k) % top_base();
        return (~static_cast<std::uint64_t>(k)) & (top_base() - 1);
    }

    /// The top digit every query carries: 0 (cyclic) or k xor ~k (xor).
    std::uint64_t query_top() const { return mode_ == GroupMode::Cyclic ? 0 : top_base() - 1; }

    /// Most-significant-first digits to an id.
    Id encode_msf(const std::vector<std::uint64_t>& msf) const {
        std::vector<std::uint64_t> lsf(msf.rbegin(), msf.rend());
        return codec_.encode(lsf);
    }

    std::vector<std::uint64_t> decode_msf(const Id& e) const {
        auto lsf = codec_.decode(e);
        return {lsf.rbegin(), lsf.rend()};
    }

private:
    static CodecMode codec_mode(GroupMode m) { return m == GroupMode::Cyclic ? CodecMode::CyclicCarry : CodecMode::XorDigitwise; }

    static std::vector<std::uint64_t> bases(std::uint64_t B, unsigned d, GroupMode mode) {
        if (B < 2 || d < 1) throw Error(Errc::InvalidParameters, "butterfly needs B >= 2 and d >= 1");
        if (mode == GroupMode::Xor && (!is_power_of_two(B) || !is_power_of_two(d))) {
            throw Error(Errc::UnsupportedMode, "xor mode needs B and d powers of two");
        }
        std::vector<std::uint64_t> msf;
        msf.push_back(4 * static_cast<std::uint64_t>(d));
        msf.push_back(mode == GroupMode::Cyclic ? 3 : 2);
        for (unsigned i = 0; i < 2 * d + 2; ++i) msf.push_back(B);
        return {msf.rbegin(), msf.rend()};
    }

    std::uint64_t B_;
    unsigned d_;
    GroupMode mode_;
    MixedRadixCodec codec_;
};

/// Label digits most significant first.
inline std::vector<std::uint64_t> label_digits(std::uint64_t label, std::uint64_t B, unsigned d) {
    std::vector<std::uint64_t> out(d);
    for (unsigned p = 0; p < d; ++p) {
        out[d - 1 - p] = label % B;
        label /= B;
    }
    return out;
}

inline Id encode_edge(const ButterflyLayout& L, const ButterflyEdge& e, bool present) {
    const auto d = L.d();
    const auto id = label_digits(e.i, L.B(), d);
    const auto jd = label_digits(e.j, L.B(), d);
    std::vector<std::uint64_t> msf;
    msf.reserve(L.digits());
    msf.push_back(e.k);
    msf.push_back(present ? 1 : 0);
    // i[d-1..k] then k zeros
    for (unsigned p = 0; p < d; ++p) msf.push_back(p < d - e.k ? id[p] : 0);
    // d-k-1 zeros then j[k..0]
    for (unsigned p = 0; p < d; ++p) msf.push_back(p < d - e.k - 1 ? 0 : jd[p]);
    msf.push_back(0);
    msf.push_back(0);
    return L.encode_msf(msf);
}

/// All B^(d+1) wildcard completions for layer k.
inline std::vector<Id> encode_layer_pattern(const ButterflyLayout& L, unsigned k) {
    const auto d = L.d();
    const auto B = L.B();
    const unsigned free = k + (d - k - 1) + 2;
    std::vector<Id> out;
    std::vector<std::uint64_t> wild(free, 0);
    while (true) {
        std::vector<std::uint64_t> msf;
        msf.reserve(L.digits());
        msf.push_back(L.neg_layer(k));
        msf.push_back(0);
        std::size_t w = 0;
        for (unsigned p = 0; p < d; ++p) msf.push_back(p < d - k ? 0 : wild[w++]);
        for (unsigned p = 0; p < d; ++p) msf.push_back(p < d - k - 1 ? wild[w++] : 0);
        msf.push_back(wild[w++]);
        msf.push_back(wild[w++]);
        out.push_back(L.encode_msf(msf));
        std::size_t pos = 0;
        while (pos < free && ++wild[pos] == B) wild[pos++] = 0;
        if (pos == free) break;
    }
    return out;
}

struct ButterflyEncoding {
    ButterflyLayout layout;
    GroupSpec group;
    TsumInstance instance;
};

inline ButterflyEncoding encode_instance(const ButterflyInstance& g, GroupMode mode) {
    ButterflyLayout L(g.B(), g.d(), mode);
    auto group = L.group();
    L.codec().check_group(group);
    std::vector<Id> a1, a2;
    a1.reserve(g.edge_count());
    for (std::uint64_t e = 0; e < g.edge_count(); ++e) a1.push_back(encode_edge(L, g.edge_at(e), g.has(e)));
    for (unsigned k = 0; k < g.d(); ++k) {
        auto part = encode_layer_pattern(L, k);
        a2.insert(a2.end(), part.begin(), part.end());
    }
    auto inst = TsumInstance::make(group, std::move(a1), std::move(a2));
    return {std::move(L), std::move(group), std::move(inst)};
}

inline Id encode_query(const ButterflyLayout& L, std::uint64_t s, std::uint64_t t) {
    ButterflyInstance shape(L.B(), L.d());
    shape.check_label(s);
    shape.check_label(t);
    std::vector<std::uint64_t> msf;
    msf.reserve(L.digits());
    msf.push_back(L.query_top());
    msf.push_back(0);
    for (auto x : label_digits(s, L.B(), L.d())) msf.push_back(x);
    for (auto x : label_digits(t, L.B(), L.d())) msf.push_back(x);
    msf.push_back(0);
    msf.push_back(0);
    return L.encode_msf(msf);
}

inline Id encode_query(std::uint64_t B, unsigned d, std::uint64_t s, std::uint64_t t, GroupMode mode) {
    return encode_query(ButterflyLayout(B, d, mode), s, t);
}

struct EquivalenceViolation {
    std::uint64_t s, t;
    bool witness;
    bool reachable;
};

struct EquivalenceReport {
    std::uint64_t queries = 0;
    std::vector<EquivalenceViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// For every (s,t): the encoded query has a witness iff t is unreachable from s.
inline EquivalenceReport check_equivalence(const ButterflyInstance& g, GroupMode mode) {
    const auto enc = encode_instance(g, mode);
    EquivalenceReport rep;
    for (std::uint64_t s = 0; s < g.labels(); ++s) {
        for (std::uint64_t t = 0; t < g.labels(); ++t) {
            ++rep.queries;
            const bool witness = brute_force_query(enc.instance, encode_query(enc.layout, s, t)).found;
            const bool reach = reachable(g, s, t);
            if (witness == reach) rep.violations.push_back({s, t, witness, reach});
        }
    }
    return rep;
}

/// Parameter wiring for the lower-bound analysis.
struct ButterflyAnalysis {
    double B;            // S w^2 / n
    double B_over_w2;    // S / n, so B = Omega(w^2) iff S = Omega(n)
    double T_lower;      // log n / log(S w / n)
    std::string formula = "T = Omega(log n / log(S w / n))";
};

inline ButterflyAnalysis analysis_parameters(double S, double w, double n) {
    if (S <= 0 || w <= 0 || n <= 0) throw Error(Errc::InvalidParameters, "S, w, n must be positive");
    ButterflyAnalysis a;
    a.B = S * w * w / n;
    a.B_over_w2 = S / n;
    const double ratio = S * w / n;
    a.T_lower = ratio > 1 ? std::log(n) / std::log(ratio) : INFINITY;
    return a;
}

}  // namespace tsumlab

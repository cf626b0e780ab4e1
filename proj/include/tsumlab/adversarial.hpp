#pragma once

/**
 * @file adversarial.hpp
 * @brief Inputs whose sumset meets a query set Q in exactly a chosen subset P,
 *        and the distribution that picks P uniformly.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"
#include "tsumlab/rng.hpp"

namespace tsumlab {

struct SubsetRealization {
    std::vector<Id> Q;  // sorted
    std::vector<Id> P;  // sorted, subset of Q
    std::vector<Id> A1;
    std::vector<Id> A2;
};

/// Bit i set iff Q[i] is in the sumset of (A1, A2).
inline std::uint64_t membership_pattern(const GroupSpec& g, const std::vector<Id>& Q, const std::vector<Id>& A1,
                                        const std::vector<Id>& A2) {
    std::vector<Id> a2 = A2;
    std::sort(a2.begin(), a2.end());
    std::uint64_t pattern = 0;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        for (const auto& a1 : A1) {
            if (std::binary_search(a2.begin(), a2.end(), g.subtract_unchecked(Q[i], a1))) {
                pattern |= std::uint64_t{1} << i;
                break;
            }
        }
    }
    return pattern;
}

inline std::uint64_t subset_mask(const std::vector<Id>& Q, const std::vector<Id>& P) {
    std::uint64_t mask = 0;
    for (const auto& p : P) {
        auto it = std::lower_bound(Q.begin(), Q.end(), p);
        if (it == Q.end() || *it != p) throw Error(Errc::InvalidParameters, "P is not a subset of Q");
        mask |= std::uint64_t{1} << (it - Q.begin());
    }
    return mask;
}

/// Sizes are n, P is inside the sumset and Q \ P is outside it.
inline bool verify_realization(const GroupSpec& g, const SubsetRealization& r, std::size_t n) {
    if (r.A1.size() != n || r.A2.size() != n) return false;
    auto a1 = r.A1, a2 = r.A2;
    detail::sort_unique(a1);
    detail::sort_unique(a2);
    if (a1.size() != n || a2.size() != n) return false;
    return membership_pattern(g, r.Q, r.A1, r.A2) == subset_mask(r.Q, r.P);
}

namespace detail {

inline bool contains_sorted(const std::vector<Id>& v, const Id& x) { return std::binary_search(v.begin(), v.end(), x); }

inline void insert_sorted(std::vector<Id>& v, const Id& x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); }

}  // namespace detail

/// Greedy construction: for each p in P not yet covered, the smallest t such
/// that (p - t, t) is new to both sets and creates no sum in Q \ P; then each
/// set is filled to n with the smallest elements that stay clear of Q \ P.
inline SubsetRealization realize_subset(const GroupSpec& g, std::vector<Id> Q, std::vector<Id> P, std::size_t n) {
    for (const auto& q : Q) g.check(q);
    detail::sort_unique(Q);
    detail::sort_unique(P);
    (void)subset_mask(Q, P);
    if (Q.size() > n) throw Error(Errc::InvalidParameters, "|Q| must be <= n");
    const Id need = Id(2) * n * n + 2 * n;
    if (g.order() <= need) {
        throw Error(Errc::GroupTooSmall, "need |G| > 2n^2 + 2n = " + need.str() + ", got " + g.order().str());
    }
    std::vector<Id> forbidden;
    std::set_difference(Q.begin(), Q.end(), P.begin(), P.end(), std::back_inserter(forbidden));

    std::vector<Id> A1, A2;  // kept sorted
    auto clear_with_A2 = [&](const Id& a1, const std::vector<Id>& a2s) {
        for (const auto& a2 : a2s)
            if (detail::contains_sorted(forbidden, g.add_unchecked(a1, a2))) return false;
        return true;
    };
    auto clear_with_A1 = [&](const Id& a2, const std::vector<Id>& a1s) {
        for (const auto& a1 : a1s)
            if (detail::contains_sorted(forbidden, g.add_unchecked(a1, a2))) return false;
        return true;
    };
    auto in_sumset = [&](const Id& z) {
        for (const auto& a1 : A1)
            if (detail::contains_sorted(A2, g.subtract_unchecked(z, a1))) return true;
        return false;
    };

    for (const auto& p : P) {
        if (in_sumset(p)) continue;
        bool placed = false;
        for (Id t = 0; t < g.order(); ++t) {
            const Id a1 = g.subtract_unchecked(p, t);
            if (detail::contains_sorted(A1, a1) || detail::contains_sorted(A2, t)) continue;
            if (!clear_with_A2(a1, A2) || !clear_with_A1(t, A1)) continue;
            if (detail::contains_sorted(forbidden, g.add_unchecked(a1, t))) continue;
            detail::insert_sorted(A1, a1);
            detail::insert_sorted(A2, t);
            placed = true;
            break;
        }
        if (!placed) throw Error(Errc::GroupTooSmall, "no safe pair for " + p.str());
    }
    for (Id a = 0; A1.size() < n; ++a) {
        if (a >= g.order()) throw Error(Errc::GroupTooSmall, "cannot pad A1");
        if (!detail::contains_sorted(A1, a) && clear_with_A2(a, A2)) detail::insert_sorted(A1, a);
    }
    for (Id a = 0; A2.size() < n; ++a) {
        if (a >= g.order()) throw Error(Errc::GroupTooSmall, "cannot pad A2");
        if (!detail::contains_sorted(A2, a) && clear_with_A1(a, A1)) detail::insert_sorted(A2, a);
    }
    return {std::move(Q), std::move(P), std::move(A1), std::move(A2)};
}

inline std::vector<Id> subset_from_mask(const std::vector<Id>& Q, std::uint64_t mask) {
    std::vector<Id> P;
    for (std::size_t i = 0; i < Q.size(); ++i)
        if ((mask >> i) & 1) P.push_back(Q[i]);
    return P;
}

/// One realization per subset of Q, in mask order.
inline std::vector<SubsetRealization> enumerate_realizations(const GroupSpec& g, std::vector<Id> Q, std::size_t n) {
    detail::sort_unique(Q);
    if (Q.size() > 20) throw Error(Errc::InvalidParameters, "|Q| too large to enumerate");
    std::vector<SubsetRealization> out;
    out.reserve(std::size_t{1} << Q.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << Q.size()); ++mask)
        out.push_back(realize_subset(g, Q, subset_from_mask(Q, mask), n));
    return out;
}

struct AdversarialSample {
    SubsetRealization realization;
    TsumInstance instance;
};

/// P from one seeded coin per element of Q, then realize_subset.
inline AdversarialSample sample_adversarial(const GroupSpec& g, std::vector<Id> Q, std::size_t n, std::uint64_t seed) {
    detail::sort_unique(Q);
    Rng rng(seed);
    std::vector<Id> P;
    for (const auto& q : Q)
        if (rng.coin()) P.push_back(q);
    auto r = realize_subset(g, Q, std::move(P), n);
    auto inst = TsumInstance::make(g, r.A1, r.A2);
    return {std::move(r), std::move(inst)};
}

inline TsumInstance sample_adversarial_instance(const GroupSpec& g, std::vector<Id> Q, std::size_t n, std::uint64_t seed) {
    return sample_adversarial(g, std::move(Q), n, seed).instance;
}

struct EntropyReport {
    std::size_t q_size = 0;
    std::size_t realizations = 0;
    double entropy_bits = 0;
    bool full_entropy = false;       // entropy == |Q|
    bool uniform_joint = false;      // every pattern appears equally often
    bool invariants_hold = false;    // each realization's pattern equals its P
    std::vector<double> marginals;   // Pr[q_i in sumset]
    std::map<std::uint64_t, std::uint64_t> histogram;
};

/// Exact entropy of the |Q| membership bits when the realizations are drawn
/// uniformly. Requires that the P fields cover every subset of Q.
inline EntropyReport entropy_audit(const GroupSpec& g, std::vector<Id> Q, const std::vector<SubsetRealization>& rs) {
    detail::sort_unique(Q);
    if (Q.size() > 20) throw Error(Errc::InvalidParameters, "|Q| too large to audit");
    const std::uint64_t subsets = std::uint64_t{1} << Q.size();
    std::vector<char> seen(subsets, 0);
    for (const auto& r : rs) {
        if (r.Q != Q) throw Error(Errc::InvalidParameters, "realization built for a different Q");
        seen[subset_mask(Q, r.P)] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw Error(Errc::IncompleteCover, "realizations do not cover every subset of Q");
    }

    EntropyReport rep;
    rep.q_size = Q.size();
    rep.realizations = rs.size();
    rep.marginals.assign(Q.size(), 0.0);
    rep.invariants_hold = true;
    for (const auto& r : rs) {
        const auto pat = membership_pattern(g, Q, r.A1, r.A2);
        ++rep.histogram[pat];
        if (pat != subset_mask(Q, r.P)) rep.invariants_hold = false;
        for (std::size_t i = 0; i < Q.size(); ++i)
            if ((pat >> i) & 1) rep.marginals[i] += 1.0;
    }
    for (auto& m : rep.marginals) m /= static_cast<double>(rs.size());

    // H = log2 N - (1/N) sum c log2 c, exact when all counts are equal powers of two.
    const double N = static_cast<double>(rs.size());
    double acc = 0;
    for (const auto& [pat, c] : rep.histogram) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
    rep.entropy_bits = std::log2(N) - acc / N;
    rep.full_entropy = rep.entropy_bits == static_cast<double>(Q.size());
    rep.uniform_joint = rep.histogram.size() == subsets;
    if (rep.uniform_joint) {
        const auto c0 = rep.histogram.begin()->second;
        for (const auto& [pat, c] : rep.histogram)
            if (c != c0) rep.uniform_joint = false;
    }
    return rep;
}

}  // namespace tsumlab

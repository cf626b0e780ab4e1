#pragma once

/**
 * @file instance.hpp
 * @brief 3SUM-Indexing instances, the brute-force oracle and the
 *        two-set to single-set transform.
 */

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"

namespace tsumlab {

struct Witness {
    Id a1;
    Id a2;
    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Answer to a query z: either a witness pair, a bare "yes" (decision mode),
/// or nothing.
struct SumsetAnswer {
    bool found = false;
    std::optional<Witness> witness;

    static SumsetAnswer none() { return {}; }
    static SumsetAnswer yes() { return {true, std::nullopt}; }
    static SumsetAnswer of(Witness w) { return {true, std::move(w)}; }
};

namespace detail {

inline void sort_unique(std::vector<Id>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Appends the smallest ids not already in `v` until it has `target` entries.
inline void pad_smallest_unused(std::vector<Id>& v, std::size_t target, const GroupSpec& group) {
    if (v.size() >= target) return;
    if (Id(target) > group.order()) {
        throw Error(Errc::InvalidParameters, "cannot pad to " + std::to_string(target) + " distinct elements in " +
                                                 group.describe());
    }
    std::vector<Id> added;
    std::size_t cursor = 0;
    Id candidate = 0;
    while (v.size() + added.size() < target) {
        while (cursor < v.size() && v[cursor] < candidate) ++cursor;
        if (cursor < v.size() && v[cursor] == candidate) {
            ++candidate;
            continue;
        }
        added.push_back(candidate);
        ++candidate;
    }
    v.insert(v.end(), added.begin(), added.end());
    std::sort(v.begin(), v.end());
}

}  // namespace detail

class TsumInstance {
public:
    /// Canonicalises (sort, dedup) both lists and pads the shorter one with
    /// the smallest unused ids so that |A1| = |A2|. Padding is not sum-aware.
    static TsumInstance make(GroupSpec group, std::vector<Id> a1, std::vector<Id> a2) {
        for (const auto& e : a1) group.check(e);
        for (const auto& e : a2) group.check(e);
        detail::sort_unique(a1);
        detail::sort_unique(a2);
        const auto n = std::max(a1.size(), a2.size());
        detail::pad_smallest_unused(a1, n, group);
        detail::pad_smallest_unused(a2, n, group);
        return TsumInstance(std::move(group), std::move(a1), std::move(a2));
    }

    static TsumInstance empty(GroupSpec group) { return TsumInstance(std::move(group), {}, {}); }

    const GroupSpec& group() const noexcept { return group_; }
    std::span<const Id> A1() const noexcept { return a1_; }
    std::span<const Id> A2() const noexcept { return a2_; }
    std::size_t n() const noexcept { return a1_.size(); }

    bool in_A1(const Id& e) const { return std::binary_search(a1_.begin(), a1_.end(), e); }
    bool in_A2(const Id& e) const { return std::binary_search(a2_.begin(), a2_.end(), e); }

    friend bool operator==(const TsumInstance&, const TsumInstance&) = default;

private:
    TsumInstance(GroupSpec g, std::vector<Id> a1, std::vector<Id> a2)
        : group_(std::move(g)), a1_(std::move(a1)), a2_(std::move(a2)) {}

    GroupSpec group_;
    std::vector<Id> a1_;
    std::vector<Id> a2_;
};

/// Exhaustive oracle: the lexicographically smallest (a1, a2) with a1 + a2 = z.
inline SumsetAnswer brute_force_query(const TsumInstance& inst, const Id& z) {
    inst.group().check(z);
    for (const auto& a1 : inst.A1()) {
        Id a2 = inst.group().subtract_unchecked(z, a1);
        if (inst.in_A2(a2)) return SumsetAnswer::of({a1, std::move(a2)});
    }
    return SumsetAnswer::none();
}

/// All pair sums, sorted and deduplicated.
inline std::vector<Id> sumset(const TsumInstance& inst) {
    std::vector<Id> out;
    out.reserve(inst.n() * inst.n());
    for (const auto& a1 : inst.A1())
        for (const auto& a2 : inst.A2()) out.push_back(inst.group().add_unchecked(a1, a2));
    detail::sort_unique(out);
    return out;
}

/// Two-set instance recast as a single set over Xor(1) x G.
struct SingleSetTransform {
    GroupSpec group;        // Product(Xor(1), G)
    TsumInstance instance;  // A1 = A2 = {0}xA1 u {1}xA2
    Id query(const Id& z) const { return group.combine(1, z); }
    /// Projects a single-set witness back to the original group.
    Witness project(const Witness& w) const { return {group.split(w.a1).second, group.split(w.a2).second}; }
};

inline SingleSetTransform to_single_set(const TsumInstance& inst) {
    auto group = GroupSpec::product(GroupSpec::xor_bits(1), inst.group());
    std::vector<Id> a;
    a.reserve(2 * inst.n());
    for (const auto& e : inst.A1()) a.push_back(group.combine(0, e));
    for (const auto& e : inst.A2()) a.push_back(group.combine(1, e));
    auto single = TsumInstance::make(group, a, a);
    return {std::move(group), std::move(single)};
}

/// The hardness conjectures, kept as report annotations only.
struct Conjecture {
    const char* label;
    const char* statement;
};

inline constexpr Conjecture kConjectures[] = {
    {"a", "space S with T = O(1) probes requires S = ~Omega(n^2)"},
    {"b", "space S with T probes requires S*T = ~Omega(n^2)"},
    {"c", "space S with T = O(n^{1-delta}) probes requires S = ~Omega(n^2) (refuted by function-inversion data structures)"},
};

}  // namespace tsumlab

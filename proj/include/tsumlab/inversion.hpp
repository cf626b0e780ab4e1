#pragma once

/**
 * @file inversion.hpp
 * @brief Full inverse tables and single-table Hellman chains.
 *
 * Chains live in a domain [D]; f maps into a codomain [M]; the step
 * between two chain points is x -> r(f(x)) with r(y) = (y + salt) mod D.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tsumlab/error.hpp"
#include "tsumlab/rng.hpp"

namespace tsumlab {

struct FunctionTable {
    std::uint64_t N = 0;  // domain size
    std::uint64_t M = 0;  // codomain size
    std::vector<std::uint64_t> values;

    static FunctionTable make(std::uint64_t M, std::vector<std::uint64_t> values) {
        for (auto v : values)
            if (v >= M) throw Error(Errc::InvalidParameters, "function value " + std::to_string(v) + " >= M");
        FunctionTable f;
        f.N = values.size();
        f.M = M;
        f.values = std::move(values);
        return f;
    }

    static FunctionTable random(std::uint64_t N, std::uint64_t M, std::uint64_t seed) {
        Rng rng(seed);
        std::vector<std::uint64_t> v(N);
        for (auto& x : v) x = rng.below(M);
        return make(M, std::move(v));
    }

    std::uint64_t operator()(std::uint64_t x) const { return values.at(x); }
};

class FullInverse {
public:
    std::optional<std::uint64_t> invert(std::uint64_t y) const {
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{y, std::uint64_t{0}});
        if (it == pairs_.end() || it->first != y) return std::nullopt;
        return it->second;
    }
    std::size_t image_size() const noexcept { return pairs_.size(); }
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries() const noexcept { return pairs_; }

private:
    friend FullInverse build_full_inverse(const FunctionTable& f);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;  // (y, smallest x), sorted by y
};

inline FullInverse build_full_inverse(const FunctionTable& f) {
    FullInverse inv;
    inv.pairs_.reserve(f.N);
    for (std::uint64_t x = 0; x < f.N; ++x) inv.pairs_.emplace_back(f.values[x], x);
    std::sort(inv.pairs_.begin(), inv.pairs_.end());
    inv.pairs_.erase(std::unique(inv.pairs_.begin(), inv.pairs_.end(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; }),
                     inv.pairs_.end());
    return inv;
}

struct HellmanTable {
    std::uint64_t domain = 0;
    std::uint64_t codomain = 0;
    std::uint64_t m = 0;
    std::uint64_t t = 0;
    std::uint64_t salt = 0;
    std::uint64_t seed = 0;
    /// (chain end, chain start), sorted by end. When chains merge only the
    /// lowest-indexed one is kept.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> endpoints;

    std::uint64_t reduce(std::uint64_t y) const { return (y + salt) % domain; }

    std::optional<std::uint64_t> start_for(std::uint64_t end) const {
        auto it = std::lower_bound(endpoints.begin(), endpoints.end(), std::pair{end, std::uint64_t{0}});
        if (it == endpoints.end() || it->first != end) return std::nullopt;
        return it->second;
    }
};

inline constexpr std::uint64_t kDefaultChainCap = std::uint64_t{1} << 26;

/// Salt is drawn before the starts, and starts in chain order, so for a fixed
/// seed the table for m chains is a prefix of the table for m' > m.
template <class F>
HellmanTable hellman_build(std::uint64_t domain, std::uint64_t codomain, F&& f, std::uint64_t m, std::uint64_t t,
                           std::uint64_t seed, std::uint64_t cap = kDefaultChainCap) {
    if (domain == 0 || codomain == 0) throw Error(Errc::InvalidParameters, "empty domain or codomain");
    if (t == 0) throw Error(Errc::InvalidParameters, "chain length must be >= 1");
    if (m > cap / t) throw Error(Errc::InvalidParameters, "m*t exceeds chain cap");
    HellmanTable h;
    h.domain = domain;
    h.codomain = codomain;
    h.m = m;
    h.t = t;
    h.seed = seed;
    Rng rng(seed);
    h.salt = rng.below(domain);
    std::vector<std::uint64_t> starts(m);
    for (auto& s : starts) s = rng.below(domain);

    std::vector<std::pair<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>>> ends;  // end, (index, start)
    ends.reserve(m);
    for (std::uint64_t c = 0; c < m; ++c) {
        std::uint64_t x = starts[c];
        for (std::uint64_t j = 0; j < t; ++j) x = h.reduce(f(x));
        ends.push_back({x, {c, starts[c]}});
    }
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 0; i < ends.size(); ++i) {
        if (i > 0 && ends[i].first == ends[i - 1].first) continue;
        h.endpoints.emplace_back(ends[i].first, ends[i].second.second);
    }
    return h;
}

inline HellmanTable hellman_build(const FunctionTable& f, std::uint64_t m, std::uint64_t t, std::uint64_t seed) {
    return hellman_build(f.N, f.M, f, m, t, seed);
}

struct InversionResult {
    std::optional<std::uint64_t> x;
    std::uint64_t oracle_calls = 0;
    std::uint64_t endpoint_lookups = 0;
    std::uint64_t false_alarms = 0;
};

/// Walks forward from r(y) for at most t positions; on each endpoint hit the
/// stored chain is replayed looking for a preimage. Succeeds exactly when y is
/// among the values f takes on a kept chain. Oracle calls are bounded by
/// (t - 1) + t * (endpoint hits).
template <class F, class Lookup>
InversionResult hellman_invert(const HellmanTable& h, F&& f, std::uint64_t y, Lookup&& lookup) {
    InversionResult out;
    std::uint64_t cur = h.reduce(y);
    for (std::uint64_t step = 0; step < h.t; ++step) {
        ++out.endpoint_lookups;
        if (std::optional<std::uint64_t> start = lookup(cur)) {
            std::uint64_t x = *start;
            for (std::uint64_t j = 0; j < h.t; ++j) {
                const std::uint64_t v = f(x);
                ++out.oracle_calls;
                if (v == y) {
                    out.x = x;
                    return out;
                }
                x = h.reduce(v);
            }
            ++out.false_alarms;
        }
        if (step + 1 < h.t) {
            cur = h.reduce(f(cur));
            ++out.oracle_calls;
        }
    }
    return out;
}

template <class F>
InversionResult hellman_invert(const HellmanTable& h, F&& f, std::uint64_t y) {
    return hellman_invert(h, std::forward<F>(f), y, [&](std::uint64_t e) { return h.start_for(e); });
}

/// Sorted distinct values f takes along the kept chains.
template <class F>
std::vector<std::uint64_t> hellman_covered(const HellmanTable& h, F&& f) {
    std::vector<std::uint64_t> cov;
    cov.reserve(h.endpoints.size() * h.t);
    for (const auto& [end, start] : h.endpoints) {
        std::uint64_t x = start;
        for (std::uint64_t j = 0; j < h.t; ++j) {
            const auto v = f(x);
            cov.push_back(v);
            x = h.reduce(v);
        }
    }
    std::sort(cov.begin(), cov.end());
    cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
    return cov;
}

/// Fraction of the codomain covered (uniform y).
template <class F>
double hellman_coverage(const HellmanTable& h, F&& f) {
    return static_cast<double>(hellman_covered(h, std::forward<F>(f)).size()) / static_cast<double>(h.codomain);
}

}  // namespace tsumlab

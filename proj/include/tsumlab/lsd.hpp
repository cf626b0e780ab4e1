#pragma once

/**
 * @file lsd.hpp
 * @brief Blocked lopsided set disjointness compiled to 3SUM-Indexing, and a
 *        round-by-round simulation of the induced Alice/Bob protocol.
 *
 * With base q = 2B+1 and blocks grouped l at a time, an element is read as
 *
 *   value = I * q^(l+1) + gap * q^l + sum_{j<l} c_j q^j
 *
 * Bob's pair (j, b) in group i = j / l becomes I = i, c_{j - il} = b + 1.
 * A2 holds every digit vector with exactly one zero digit and the rest in
 * [1, B]. Alice's query for group i is I = i, c_j = b_{il+j} + 1. Digits
 * never exceed 2B in a sum, so nothing carries; a1 + a2 = z_i exactly when
 * a1 sits at a position where Alice's and Bob's sets meet.
 *
 * Padding elements (to equalise |A1| and |A2|) carry a nonzero gap digit, so
 * no sum involving one can equal a query.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/butterfly.hpp"
#include "tsumlab/cellprobe.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"

namespace tsumlab {

struct LsdInstance {
    std::uint64_t N = 0;
    std::uint64_t B = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> X;  // Bob: (block, value)
    std::vector<std::uint64_t> Y;                            // Alice: one value per block

    void validate() const {
        if (N < 1 || B < 1) throw Error(Errc::InvalidParameters, "LSD needs N >= 1 and B >= 1");
        if (Y.size() != N) throw Error(Errc::InvalidParameters, "Y must have exactly one entry per block");
        for (auto b : Y)
            if (b >= B) throw Error(Errc::InvalidParameters, "Y entry out of [0, B)");
        for (auto [j, b] : X)
            if (j >= N || b >= B) throw Error(Errc::InvalidParameters, "X entry out of [N] x [B]");
    }

    bool disjoint() const {
        for (auto [j, b] : X)
            if (Y[j] == b) return false;
        return true;
    }
};

inline constexpr std::uint64_t kLsdElementCap = std::uint64_t{1} << 22;

struct LsdLayout {
    std::uint64_t N = 0;       // original block count
    std::uint64_t Npad = 0;    // rounded up to a multiple of l
    std::uint64_t B = 0;
    unsigned ell = 1;
    GroupMode mode = GroupMode::Cyclic;
    unsigned digit_bits = 0;   // xor only

    std::uint64_t q() const { return 2 * B + 1; }
    std::uint64_t groups() const { return Npad / ell; }

    /// Weight of low digit position p (p = l is the gap digit, p = l+1 starts the group field).
    Id weight(unsigned p) const {
        if (mode == GroupMode::Cyclic) return ipow(Id(q()), p);
        return Id(1) << (digit_bits * p);
    }

    GroupSpec group() const {
        if (mode == GroupMode::Cyclic) return GroupSpec::cyclic(Id(Npad) * ipow(Id(q()), ell + 2));
        return GroupSpec::xor_bits(digit_bits * (ell + 2) + bit_length(Id(Npad)));
    }

    Id element(const Id& group_field, std::uint64_t gap, const std::vector<std::uint64_t>& low) const {
        Id v = group_field * weight(ell + 1) + Id(gap) * weight(ell);
        for (unsigned p = 0; p < low.size(); ++p)
            if (low[p]) v += Id(low[p]) * weight(p);
        return v;
    }
};

inline LsdLayout lsd_layout(std::uint64_t N, std::uint64_t B, unsigned ell, GroupMode mode) {
    if (ell < 1) throw Error(Errc::InvalidParameters, "ell must be >= 1");
    if (N < 1 || B < 1) throw Error(Errc::InvalidParameters, "LSD needs N >= 1 and B >= 1");
    LsdLayout L;
    L.N = N;
    L.Npad = (N + ell - 1) / ell * ell;
    L.B = B;
    L.ell = ell;
    L.mode = mode;
    if (mode == GroupMode::Xor) L.digit_bits = ceil_log2(Id(2 * B + 1));
    const Id a2 = Id(ell) * ipow(Id(B), ell - 1);
    if (a2 > kLsdElementCap || Id(L.Npad) * B > kLsdElementCap) {
        throw Error(Errc::ParameterOverflow, "LSD encoding exceeds the element cap");
    }
    return L;
}

struct LsdEncoding {
    LsdLayout layout;
    GroupSpec group;
    std::vector<Id> A1;  // before padding
    std::vector<Id> A2;  // before padding
    TsumInstance instance;
};

namespace detail {

/// k-th sum-safe dummy: gap digit set, low digits from k in base B+1.
inline Id lsd_dummy(const LsdLayout& L, std::uint64_t k, std::uint64_t gap) {
    std::vector<std::uint64_t> low(L.ell);
    std::uint64_t rest = k;
    for (unsigned p = 0; p < L.ell; ++p) {
        low[p] = rest % (L.B + 1);
        rest /= (L.B + 1);
    }
    return L.element(Id(rest), gap, low);
}

inline void lsd_pad(const LsdLayout& L, std::vector<Id>& v, std::size_t target, std::uint64_t gap) {
    for (std::uint64_t k = 0; v.size() < target; ++k) v.push_back(lsd_dummy(L, k, gap));
}

}  // namespace detail

inline std::vector<Id> lsd_encode_A2(const LsdLayout& L) {
    std::vector<Id> out;
    std::vector<std::uint64_t> low(L.ell);
    for (unsigned zero = 0; zero < L.ell; ++zero) {
        std::vector<std::uint64_t> rest(L.ell - 1, 1);
        while (true) {
            for (unsigned p = 0, r = 0; p < L.ell; ++p) low[p] = p == zero ? 0 : rest[r++];
            out.push_back(L.element(0, 0, low));
            std::size_t pos = 0;
            while (pos < rest.size() && ++rest[pos] > L.B) rest[pos++] = 1;
            if (pos == rest.size()) break;
        }
    }
    return out;
}

/// Bob's side. The shorter list is padded with sum-safe dummies.
inline LsdEncoding encode_bob(const LsdInstance& inst, unsigned ell, GroupMode mode = GroupMode::Cyclic) {
    auto L = lsd_layout(inst.N, inst.B, ell, mode);
    for (auto [j, b] : inst.X)
        if (j >= inst.N || b >= inst.B) throw Error(Errc::InvalidParameters, "X entry out of [N] x [B]");
    std::vector<Id> a1;
    a1.reserve(inst.X.size());
    for (auto [j, b] : inst.X) {
        std::vector<std::uint64_t> low(ell, 0);
        low[j % ell] = b + 1;
        a1.push_back(L.element(Id(j / ell), 0, low));
    }
    detail::sort_unique(a1);
    auto a2 = lsd_encode_A2(L);
    detail::sort_unique(a2);

    auto p1 = a1, p2 = a2;
    const auto n = std::max(p1.size(), p2.size());
    detail::lsd_pad(L, p1, n, 1);
    detail::lsd_pad(L, p2, n, mode == GroupMode::Cyclic ? 1 : 2);
    auto group = L.group();
    auto padded = TsumInstance::make(group, std::move(p1), std::move(p2));
    return {L, std::move(group), std::move(a1), std::move(a2), std::move(padded)};
}

/// Alice's side: one query per group of l blocks. Padding blocks take value 0.
inline std::vector<Id> encode_alice(const LsdInstance& inst, unsigned ell, GroupMode mode = GroupMode::Cyclic) {
    auto L = lsd_layout(inst.N, inst.B, ell, mode);
    if (inst.Y.size() != inst.N) throw Error(Errc::InvalidParameters, "Y must have exactly one entry per block");
    std::vector<Id> z;
    z.reserve(L.groups());
    for (std::uint64_t i = 0; i < L.groups(); ++i) {
        std::vector<std::uint64_t> low(ell);
        for (unsigned j = 0; j < ell; ++j) {
            const auto block = i * ell + j;
            low[j] = (block < inst.N ? inst.Y[block] : 0) + 1;
        }
        z.push_back(L.element(Id(i), 0, low));
    }
    return z;
}

using QueryAnswerer = std::function<bool(const Id&)>;

/// Disjoint iff no query has a witness.
inline bool decide_disjointness(const LsdInstance& inst, unsigned ell, const QueryAnswerer& answer,
                                GroupMode mode = GroupMode::Cyclic) {
    for (const auto& z : encode_alice(inst, ell, mode))
        if (answer(z)) return false;
    return true;
}

inline bool decide_disjointness(const LsdInstance& inst, unsigned ell, const CellProbeSolution& sol, const Memory& mem,
                                GroupMode mode = GroupMode::Cyclic) {
    return decide_disjointness(
        inst, ell, [&](const Id& z) { return run_query(sol, mem, z, AnswerMode::Decision).answer.found; }, mode);
}

struct CommStats {
    std::uint64_t alice_bits = 0;
    std::uint64_t bob_bits = 0;
    std::uint64_t rounds = 0;
    std::uint64_t cells_revealed = 0;
    bool disjoint = true;
};

namespace detail {

struct RoundStop {};

/// Serves cells Bob has already revealed; any other read is recorded as a
/// request and ends the query's progress for this round.
class RevealedHandle final : public ProbeHandle {
public:
    RevealedHandle(const Memory& mem, std::uint64_t budget, const std::set<std::uint64_t>& revealed,
                   std::set<std::uint64_t>& requests)
        : ProbeHandle(budget, mem.S()), mem_(mem), revealed_(revealed), requests_(requests) {}

protected:
    std::uint64_t fetch(std::uint64_t cell) override {
        if (!revealed_.count(cell)) {
            requests_.insert(cell);
            throw RoundStop{};
        }
        return mem_.get(cell);
    }

private:
    const Memory& mem_;
    const std::set<std::uint64_t>& revealed_;
    std::set<std::uint64_t>& requests_;
};

}  // namespace detail

/// Alice holds the queries, Bob holds the memory. Each round Alice names the
/// set of unrevealed cells her unfinished queries need next
/// (ceil(log2 C(S, k)) bits) and Bob returns their contents (k*w bits).
/// Rounds are counted up to the solution's declared T.
inline CommStats simulate_protocol(const LsdInstance& inst, unsigned ell, const CellProbeSolution& sol, const Memory& mem,
                                   GroupMode mode = GroupMode::Cyclic) {
    const auto queries = encode_alice(inst, ell, mode);
    const auto T = sol.declared(AnswerMode::Decision).T;
    const auto S = mem.S();
    const auto w = mem.w();
    CommStats st;
    st.rounds = T;
    std::set<std::uint64_t> revealed;
    std::vector<std::optional<bool>> verdict(queries.size());

    auto attempt = [&](std::size_t q, std::set<std::uint64_t>& requests) {
        detail::RevealedHandle h(mem, T, revealed, requests);
        try {
            verdict[q] = sol.query(queries[q], AnswerMode::Decision, h).found;
        } catch (const detail::RoundStop&) {
        }
    };

    for (std::uint64_t r = 0; r < T; ++r) {
        std::set<std::uint64_t> requests;
        for (std::size_t q = 0; q < queries.size(); ++q)
            if (!verdict[q]) attempt(q, requests);
        if (requests.empty()) continue;
        st.alice_bits += ceil_log2(binomial(S, requests.size()));
        st.bob_bits += requests.size() * w;
        st.cells_revealed += requests.size();
        revealed.insert(requests.begin(), requests.end());
    }
    // Queries that needed no probes, or whose last probe arrived in round T.
    std::set<std::uint64_t> leftover;
    for (std::size_t q = 0; q < queries.size(); ++q)
        if (!verdict[q]) attempt(q, leftover);
    if (!leftover.empty()) throw Error(Errc::ProbeBudgetExceeded, "query still probing after T rounds");

    st.disjoint = std::all_of(verdict.begin(), verdict.end(), [](const auto& v) { return v && !*v; });
    return st;
}

/// l = max(1, floor(eps * log2 n / log2 w)).
inline unsigned default_ell(double n, double w, double eps) {
    if (w < 2 || n < 1) return 1;
    const double v = std::floor(eps * std::log2(n) / std::log2(w));
    return v < 1 ? 1u : static_cast<unsigned>(v);
}

inline std::uint64_t default_block_size(std::uint64_t w) { return w * w * w * w; }

}  // namespace tsumlab

#pragma once

/**
 * @file solutions.hpp
 * @brief Baseline cell-probe solutions for 3SUM-Indexing: the sumset bit
 *        table, a linear-space scan and a Hellman-chain tradeoff.
 */

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/cellprobe.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"
#include "tsumlab/inversion.hpp"

namespace tsumlab {

inline constexpr std::uint64_t kDefaultGroupCap = std::uint64_t{1} << 24;

/// An element id spread over consecutive w-bit cells, least significant first.
struct WordLayout {
    unsigned w = 64;
    unsigned cells = 1;

    static WordLayout for_group(const GroupSpec& g, unsigned w) {
        const unsigned bits = std::max(1u, bit_length(Id(g.order() - 1)));
        return {w, std::max(1u, (bits + w - 1) / w)};
    }
    static WordLayout for_count(std::uint64_t count, unsigned w) {
        const unsigned bits = std::max(1u, bit_length(Id(count)));
        return {w, std::max(1u, (bits + w - 1) / w)};
    }

    std::uint64_t mask() const { return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

    void write(Memory& mem, std::uint64_t base, Id value) const {
        for (unsigned i = 0; i < cells; ++i) {
            mem.set(base + i, static_cast<std::uint64_t>(value & Id(mask())));
            value >>= w;
        }
        if (value != 0) throw Error(Errc::ParameterOverflow, "value does not fit its cell layout");
    }

    Id read(ProbeHandle& h, std::uint64_t base) const {
        Id v = 0;
        for (unsigned i = 0; i < cells; ++i) v |= Id(h.read(base + i)) << (w * i);
        return v;
    }

    std::uint64_t read_u64(ProbeHandle& h, std::uint64_t base) const {
        const Id v = read(h, base);
        return fits_u64(v) ? v.convert_to<std::uint64_t>() : ~std::uint64_t{0};
    }
};

/// Bit z of the sumset at cell z / w, bit z mod w. An optional witness region
/// stores the smallest a1 for each z.
class SumsetTableSolution final : public CellProbeSolution {
public:
    SumsetTableSolution(GroupSpec g, unsigned w = 64, bool with_witness = true, std::uint64_t cap = kDefaultGroupCap)
        : group_(std::move(g)), w_(w), with_witness_(with_witness), layout_(WordLayout::for_group(group_, w)) {
        if (w < 1 || w > 64) throw Error(Errc::InvalidParameters, "word size must be in [1, 64]");
        if (group_.order() > cap) {
            throw Error(Errc::GroupTooLarge, "sumset table needs |G| <= " + std::to_string(cap) + ", got " + group_.order().str());
        }
        order_ = group_.order().convert_to<std::uint64_t>();
        decision_cells_ = (order_ + w - 1) / w;
    }

    std::string name() const override { return "sumset"; }
    const GroupSpec& group() const override { return group_; }
    bool adaptive() const override { return false; }

    Declared declared(AnswerMode mode) const override {
        const std::uint64_t S = decision_cells_ + (with_witness_ ? order_ * layout_.cells : 0);
        const std::uint64_t T = (mode == AnswerMode::Witness && with_witness_) ? 1 + layout_.cells : 1;
        return {S, w_, T};
    }

    Memory preprocess(const TsumInstance& inst) const override {
        if (!(inst.group() == group_)) throw Error(Errc::InvalidParameters, "instance group differs from solution group");
        Memory mem(declared(AnswerMode::Witness).S, w_);
        // Descending a1 so the smallest a1 is written last.
        for (auto i = inst.A1().size(); i-- > 0;) {
            const auto& a1 = inst.A1()[i];
            for (const auto& a2 : inst.A2()) {
                const auto z = group_.add_unchecked(a1, a2).convert_to<std::uint64_t>();
                mem.set(z / w_, mem.get(z / w_) | (std::uint64_t{1} << (z % w_)));
                if (with_witness_) layout_.write(mem, decision_cells_ + z * layout_.cells, a1);
            }
        }
        return mem;
    }

    SumsetAnswer query(const Id& z, AnswerMode mode, ProbeHandle& mem) const override {
        const auto zi = z.convert_to<std::uint64_t>();
        const bool bit = (mem.read(zi / w_) >> (zi % w_)) & 1;
        if (!bit) return SumsetAnswer::none();
        if (mode == AnswerMode::Decision) return SumsetAnswer::yes();
        if (!with_witness_) throw Error(Errc::UnsupportedMode, "sumset table built without witness region");
        Id a1 = layout_.read(mem, decision_cells_ + zi * layout_.cells);
        if (!group_.contains(a1)) return SumsetAnswer::yes();
        Id a2 = group_.subtract_unchecked(z, a1);
        return SumsetAnswer::of({std::move(a1), std::move(a2)});
    }

    std::uint64_t decision_cells() const noexcept { return decision_cells_; }

private:
    GroupSpec group_;
    unsigned w_;
    bool with_witness_;
    WordLayout layout_;
    std::uint64_t order_ = 0;
    std::uint64_t decision_cells_ = 0;
};

/// Stores sorted A1 then sorted A2. The fixed schedule reads every cell; the
/// binary-search schedule looks up z - a1 in A2 for each a1.
class ScanSolution final : public CellProbeSolution {
public:
    enum class Schedule { Fixed, BinarySearch };

    ScanSolution(GroupSpec g, std::uint64_t n, Schedule schedule = Schedule::Fixed, unsigned w = 64)
        : group_(std::move(g)), n_(n), schedule_(schedule), w_(w), layout_(WordLayout::for_group(group_, w)) {}

    std::string name() const override { return schedule_ == Schedule::Fixed ? "scan" : "scan-bsearch"; }
    const GroupSpec& group() const override { return group_; }
    bool adaptive() const override { return schedule_ == Schedule::BinarySearch; }

    Declared declared(AnswerMode) const override {
        if (n_ == 0) return {1, w_, 0};
        const std::uint64_t S = 2 * n_ * layout_.cells;
        if (schedule_ == Schedule::Fixed) return {S, w_, S};
        return {S, w_, n_ * layout_.cells * (1 + bit_length(Id(n_)))};
    }

    Memory preprocess(const TsumInstance& inst) const override {
        if (inst.n() != n_) throw Error(Errc::InvalidParameters, "instance size differs from solution size");
        Memory mem(declared(AnswerMode::Witness).S, w_);
        for (std::uint64_t i = 0; i < n_; ++i) {
            layout_.write(mem, i * layout_.cells, inst.A1()[i]);
            layout_.write(mem, (n_ + i) * layout_.cells, inst.A2()[i]);
        }
        return mem;
    }

    SumsetAnswer query(const Id& z, AnswerMode mode, ProbeHandle& mem) const override {
        if (n_ == 0) return SumsetAnswer::none();
        auto found = [&](Id a1, Id a2) {
            return mode == AnswerMode::Decision ? SumsetAnswer::yes() : SumsetAnswer::of({std::move(a1), std::move(a2)});
        };
        const auto a2_base = n_ * layout_.cells;
        if (schedule_ == Schedule::Fixed) {
            std::vector<Id> a1s(n_), a2s(n_);
            for (std::uint64_t i = 0; i < n_; ++i) a1s[i] = layout_.read(mem, i * layout_.cells);
            for (std::uint64_t i = 0; i < n_; ++i) a2s[i] = layout_.read(mem, a2_base + i * layout_.cells);
            for (const auto& a1 : a1s) {
                if (!group_.contains(a1)) continue;
                Id want = group_.subtract_unchecked(z, a1);
                if (std::binary_search(a2s.begin(), a2s.end(), want)) return found(a1, want);
            }
            return SumsetAnswer::none();
        }
        for (std::uint64_t i = 0; i < n_; ++i) {
            Id a1 = layout_.read(mem, i * layout_.cells);
            if (!group_.contains(a1)) continue;
            Id want = group_.subtract_unchecked(z, a1);
            std::uint64_t lo = 0, hi = n_;
            while (lo < hi) {
                const auto mid = lo + (hi - lo) / 2;
                const Id v = layout_.read(mem, a2_base + mid * layout_.cells);
                if (v == want) return found(std::move(a1), std::move(want));
                if (v < want)
                    lo = mid + 1;
                else
                    hi = mid;
            }
        }
        return SumsetAnswer::none();
    }

private:
    GroupSpec group_;
    std::uint64_t n_;
    Schedule schedule_;
    unsigned w_;
    WordLayout layout_;
};

/// Inverts f(i, j) = A1[i] + A2[j] over the n^2 index pairs with a Hellman
/// table. Sums the chains miss go to a sorted exception list, so every query
/// is answered correctly; the tradeoff shows up in how large that list is.
///
/// Memory layout: A1 | A2 | endpoints (end, start) sorted | exceptions (z, i, j) sorted.
class HellmanSolution final : public CellProbeSolution {
public:
    struct Params {
        std::uint64_t m = 16;
        std::uint64_t t = 16;
        std::uint64_t seed = 1;
        unsigned w = 64;
    };

    HellmanSolution(const TsumInstance& inst, Params p)
        : group_(inst.group()), n_(inst.n()), p_(p), elem_(WordLayout::for_group(group_, p.w)),
          index_(WordLayout::for_count(std::max<std::uint64_t>(1, n_ * n_), p.w)) {
        if (!fits_u64(group_.order())) throw Error(Errc::GroupTooLarge, "hellman solution needs |G| < 2^64");
        build(inst);
    }

    std::string name() const override { return "hellman"; }
    const GroupSpec& group() const override { return group_; }
    bool adaptive() const override { return true; }

    Declared declared(AnswerMode) const override {
        if (n_ == 0) return {1, p_.w, 0};
        const std::uint64_t f_cost = 2 * elem_.cells;
        const std::uint64_t endpoint_search = bit_length(Id(table_.endpoints.size())) * (index_.cells);
        const std::uint64_t exception_search = bit_length(Id(exceptions_.size())) * elem_.cells + 2 * index_.cells;
        const std::uint64_t t = p_.t;
        // Each of the t walk positions may hit an endpoint (search + fetch
        // start + replay of t evaluations); t - 1 forward steps in between.
        const std::uint64_t walk = t * (endpoint_search + index_.cells + t * f_cost) + (t - 1) * f_cost;
        return {S_, p_.w, walk + exception_search + f_cost};
    }

    Memory preprocess(const TsumInstance& inst) const override {
        if (!(inst == inst_)) throw Error(Errc::InvalidParameters, "hellman solution was built for a different instance");
        Memory mem(S_, p_.w);
        if (n_ == 0) return mem;
        for (std::uint64_t i = 0; i < n_; ++i) {
            elem_.write(mem, a1_base() + i * elem_.cells, inst.A1()[i]);
            elem_.write(mem, a2_base() + i * elem_.cells, inst.A2()[i]);
        }
        for (std::uint64_t k = 0; k < table_.endpoints.size(); ++k) {
            index_.write(mem, end_base() + 2 * k * index_.cells, table_.endpoints[k].first);
            index_.write(mem, end_base() + (2 * k + 1) * index_.cells, table_.endpoints[k].second);
        }
        for (std::uint64_t k = 0; k < exceptions_.size(); ++k) {
            const auto base = exc_base() + k * exc_stride();
            elem_.write(mem, base, exceptions_[k].z);
            index_.write(mem, base + elem_.cells, exceptions_[k].i);
            index_.write(mem, base + elem_.cells + index_.cells, exceptions_[k].j);
        }
        return mem;
    }

    SumsetAnswer query(const Id& z, AnswerMode mode, ProbeHandle& mem) const override {
        if (n_ == 0) return SumsetAnswer::none();
        const auto y = z.convert_to<std::uint64_t>();
        auto f = [&](std::uint64_t x) -> std::uint64_t {
            const auto i = x / n_, j = x % n_;
            const Id a1 = elem_.read(mem, a1_base() + i * elem_.cells);
            const Id a2 = elem_.read(mem, a2_base() + j * elem_.cells);
            if (!group_.contains(a1) || !group_.contains(a2)) return 0;
            return group_.add_unchecked(a1, a2).convert_to<std::uint64_t>();
        };
        auto lookup = [&](std::uint64_t end) -> std::optional<std::uint64_t> {
            std::uint64_t lo = 0, hi = table_.endpoints.size();
            while (lo < hi) {
                const auto mid = lo + (hi - lo) / 2;
                const auto v = index_.read_u64(mem, end_base() + 2 * mid * index_.cells);
                if (v == end) return index_.read_u64(mem, end_base() + (2 * mid + 1) * index_.cells);
                if (v < end)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return std::nullopt;
        };
        auto answer = [&](std::uint64_t i, std::uint64_t j) {
            if (mode == AnswerMode::Decision) return SumsetAnswer::yes();
            if (i >= n_ || j >= n_) return SumsetAnswer::yes();
            Id a1 = elem_.read(mem, a1_base() + i * elem_.cells);
            Id a2 = elem_.read(mem, a2_base() + j * elem_.cells);
            return SumsetAnswer::of({std::move(a1), std::move(a2)});
        };

        if (!table_.endpoints.empty()) {
            const auto r = hellman_invert(table_, f, y, lookup);
            if (r.x) return answer(*r.x / n_, *r.x % n_);
        }
        std::uint64_t lo = 0, hi = exceptions_.size();
        while (lo < hi) {
            const auto mid = lo + (hi - lo) / 2;
            const auto base = exc_base() + mid * exc_stride();
            const Id v = elem_.read(mem, base);
            if (v == z) {
                const auto i = index_.read_u64(mem, base + elem_.cells);
                const auto j = index_.read_u64(mem, base + elem_.cells + index_.cells);
                if (mode == AnswerMode::Decision) return SumsetAnswer::yes();
                return answer(i, j);
            }
            if (v < z)
                lo = mid + 1;
            else
                hi = mid;
        }
        return SumsetAnswer::none();
    }

    const HellmanTable& table() const noexcept { return table_; }
    std::uint64_t exception_count() const noexcept { return exceptions_.size(); }
    std::uint64_t sumset_size() const noexcept { return sumset_size_; }

private:
    struct Exception {
        Id z;
        std::uint64_t i, j;
    };

    std::uint64_t a1_base() const { return 0; }
    std::uint64_t a2_base() const { return n_ * elem_.cells; }
    std::uint64_t end_base() const { return 2 * n_ * elem_.cells; }
    std::uint64_t exc_base() const { return end_base() + 2 * table_.endpoints.size() * index_.cells; }
    std::uint64_t exc_stride() const { return elem_.cells + 2 * index_.cells; }

    void build(const TsumInstance& inst) {
        inst_ = inst;
        if (n_ == 0) {
            S_ = 1;
            return;
        }
        const std::uint64_t domain = n_ * n_;
        const std::uint64_t order = group_.order().convert_to<std::uint64_t>();
        auto f = [&](std::uint64_t x) {
            return group_.add_unchecked(inst.A1()[x / n_], inst.A2()[x % n_]).convert_to<std::uint64_t>();
        };
        table_ = hellman_build(domain, order, f, p_.m, p_.t, p_.seed);
        const auto covered = hellman_covered(table_, f);
        const auto sums = sumset(inst);
        sumset_size_ = sums.size();
        for (const auto& z : sums) {
            const auto zi = z.convert_to<std::uint64_t>();
            if (std::binary_search(covered.begin(), covered.end(), zi)) continue;
            const auto w = brute_force_query(inst, z).witness;
            const auto i = static_cast<std::uint64_t>(std::lower_bound(inst.A1().begin(), inst.A1().end(), w->a1) - inst.A1().begin());
            const auto j = static_cast<std::uint64_t>(std::lower_bound(inst.A2().begin(), inst.A2().end(), w->a2) - inst.A2().begin());
            exceptions_.push_back({z, i, j});
        }
        S_ = exc_base() + exceptions_.size() * exc_stride();
        if (S_ == 0) S_ = 1;
    }

    GroupSpec group_;
    std::uint64_t n_;
    Params p_;
    WordLayout elem_;
    WordLayout index_;
    TsumInstance inst_ = TsumInstance::empty(GroupSpec::cyclic(1));
    HellmanTable table_;
    std::vector<Exception> exceptions_;
    std::uint64_t sumset_size_ = 0;
    std::uint64_t S_ = 1;
};

inline std::unique_ptr<CellProbeSolution> build_sumset_table(const TsumInstance& inst, unsigned w = 64,
                                                             std::uint64_t cap = kDefaultGroupCap) {
    return std::make_unique<SumsetTableSolution>(inst.group(), w, true, cap);
}

inline std::unique_ptr<CellProbeSolution> build_scan_solution(const TsumInstance& inst,
                                                              ScanSolution::Schedule s = ScanSolution::Schedule::Fixed,
                                                              unsigned w = 64) {
    return std::make_unique<ScanSolution>(inst.group(), inst.n(), s, w);
}

inline std::unique_ptr<CellProbeSolution> build_hellman_solution(const TsumInstance& inst, HellmanSolution::Params p = {}) {
    return std::make_unique<HellmanSolution>(inst, p);
}

/// Names accepted by make_solution.
inline const std::vector<std::string>& solution_names() {
    static const std::vector<std::string> names{"sumset", "scan", "scan-bsearch", "hellman"};
    return names;
}

inline std::unique_ptr<CellProbeSolution> make_solution(const std::string& name, const TsumInstance& inst,
                                                        unsigned w = 64, std::uint64_t seed = 1) {
    if (name == "sumset") return build_sumset_table(inst, w);
    if (name == "scan") return build_scan_solution(inst, ScanSolution::Schedule::Fixed, w);
    if (name == "scan-bsearch") return build_scan_solution(inst, ScanSolution::Schedule::BinarySearch, w);
    if (name == "hellman") {
        HellmanSolution::Params p;
        p.seed = seed;
        p.w = w;
        return build_hellman_solution(inst, p);
    }
    throw Error(Errc::UnsupportedMode, "unknown solution '" + name + "'");
}

struct SweepReport {
    std::uint64_t queries = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t max_probes = 0;
    std::uint64_t declared_T = 0;
    std::vector<Id> mismatched;  // first few only
};

/// Runs every z in G through the solution and compares with the brute-force
/// oracle. A witness counts as a mismatch unless it sums to z with a1 in A1
/// and a2 in A2.
inline SweepReport sweep_against_oracle(const CellProbeSolution& sol, const TsumInstance& inst,
                                        AnswerMode mode = AnswerMode::Witness) {
    SweepReport rep;
    const auto mem = sol.preprocess(inst);
    rep.declared_T = sol.declared(mode).T;
    const auto& g = inst.group();
    const auto sums = sumset(inst);
    for (Id z = 0; z < g.order(); ++z) {
        ++rep.queries;
        bool ok = true;
        try {
            const auto run = run_query(sol, mem, z, mode);
            rep.max_probes = std::max<std::uint64_t>(rep.max_probes, run.transcript.probes.size());
            const bool truth = std::binary_search(sums.begin(), sums.end(), z);
            if (run.answer.found != truth) ok = false;
            if (ok && run.answer.found && mode == AnswerMode::Witness) {
                const auto& w = run.answer.witness;
                ok = w && inst.in_A1(w->a1) && inst.in_A2(w->a2) && g.add_unchecked(w->a1, w->a2) == z;
            }
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) {
            ++rep.mismatches;
            if (rep.mismatched.size() < 8) rep.mismatched.push_back(z);
        }
    }
    return rep;
}

}  // namespace tsumlab

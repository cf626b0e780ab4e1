#pragma once

/**
 * @file owf.hpp
 * @brief F'(x1, x2) = R(x1) + R(x2) over a seeded random oracle R, and
 *        preprocessing adversaries that try to invert it.
 *
 * The domain is unordered pairs x1 < x2 < N, ranked as x2 (x2 - 1) / 2 + x1.
 * Advice probes and oracle calls are counted separately.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/cellprobe.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"
#include "tsumlab/inversion.hpp"
#include "tsumlab/rng.hpp"
#include "tsumlab/solutions.hpp"

namespace tsumlab {

/// Group law on 64-bit ids, for groups whose order fits.
inline std::uint64_t add_u64(const GroupSpec& g, std::uint64_t a, std::uint64_t b) {
    switch (g.kind()) {
        case GroupSpec::Kind::Cyclic: {
            const auto m = g.order().convert_to<std::uint64_t>();
            return a >= m - b ? a - (m - b) : a + b;
        }
        case GroupSpec::Kind::Xor: return a ^ b;
        case GroupSpec::Kind::Product: {
            const auto r = g.right().order().convert_to<std::uint64_t>();
            return add_u64(g.left(), a / r, b / r) * r + add_u64(g.right(), a % r, b % r);
        }
    }
    return 0;
}

class RandomOracle {
public:
    RandomOracle(std::uint64_t N, GroupSpec group, std::uint64_t seed) : N_(N), group_(std::move(group)), seed_(seed) {
        if (N < 2) throw Error(Errc::InvalidParameters, "oracle domain needs N >= 2");
        if (!fits_u64(group_.order())) throw Error(Errc::GroupTooLarge, "oracle group order must fit in 64 bits");
        order_ = group_.order().convert_to<std::uint64_t>();
        Rng rng(seed);
        table_.resize(N);
        for (auto& v : table_) v = rng.below(order_);
    }

    static RandomOracle from_table(GroupSpec group, std::vector<std::uint64_t> values) {
        RandomOracle r(2, std::move(group), 0);
        for (auto v : values)
            if (Id(v) >= r.group_.order()) throw Error(Errc::InvalidElement, "oracle value outside group");
        r.N_ = values.size();
        r.table_ = std::move(values);
        return r;
    }

    std::uint64_t N() const noexcept { return N_; }
    const GroupSpec& group() const noexcept { return group_; }
    std::uint64_t order() const noexcept { return order_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t operator()(std::uint64_t x) const {
        if (x >= N_) throw Error(Errc::OutOfDomain, "oracle input " + std::to_string(x) + " >= N");
        return table_[x];
    }
    const std::vector<std::uint64_t>& table() const noexcept { return table_; }

private:
    std::uint64_t N_;
    GroupSpec group_;
    std::uint64_t seed_;
    std::uint64_t order_ = 1;
    std::vector<std::uint64_t> table_;
};

inline std::uint64_t immunized_eval(const RandomOracle& R, std::uint64_t x1, std::uint64_t x2) {
    if (x1 >= R.N() || x2 >= R.N()) throw Error(Errc::OutOfDomain, "input outside [N]");
    if (x1 == x2) throw Error(Errc::EqualHalves, "x1 must differ from x2");
    return add_u64(R.group(), R(x1), R(x2));
}

inline std::uint64_t pair_count(std::uint64_t N) { return N * (N - 1) / 2; }

inline std::uint64_t pair_rank(std::uint64_t x1, std::uint64_t x2) {
    if (x1 > x2) std::swap(x1, x2);
    return x2 * (x2 - 1) / 2 + x1;
}

inline std::pair<std::uint64_t, std::uint64_t> pair_unrank(std::uint64_t r) {
    auto x2 = static_cast<std::uint64_t>((1 + std::sqrt(1.0 + 8.0 * static_cast<double>(r))) / 2);
    while (x2 * (x2 - 1) / 2 > r) --x2;
    while ((x2 + 1) * x2 / 2 <= r) ++x2;
    return {r - x2 * (x2 - 1) / 2, x2};
}

/// Counts oracle reads made by the online phase.
class OracleHandle {
public:
    explicit OracleHandle(const RandomOracle& R) : R_(R) {}
    std::uint64_t operator()(std::uint64_t x) {
        ++calls_;
        return R_(x);
    }
    std::uint64_t calls() const noexcept { return calls_; }

private:
    const RandomOracle& R_;
    std::uint64_t calls_ = 0;
};

struct InversionAttempt {
    std::optional<std::pair<std::uint64_t, std::uint64_t>> x;
    std::uint64_t advice_probes = 0;
    std::uint64_t oracle_calls = 0;
};

class PreprocessingAdversary {
public:
    virtual ~PreprocessingAdversary() = default;
    virtual std::string name() const = 0;
    /// Offline phase: unbounded access to R.
    virtual void preprocess(const RandomOracle& R) = 0;
    /// Advice size in cells (0 when there is no advice).
    virtual std::uint64_t S() const = 0;
    virtual unsigned w() const = 0;
    /// Declared bound on advice probes per inversion.
    virtual std::uint64_t advice_budget() const = 0;
    virtual InversionAttempt invert(std::uint64_t y, OracleHandle& oracle) const = 0;
};

/// No advice, no queries: always answers (0, 1).
class NullAdversary final : public PreprocessingAdversary {
public:
    std::string name() const override { return "null"; }
    void preprocess(const RandomOracle&) override {}
    std::uint64_t S() const override { return 0; }
    unsigned w() const override { return 64; }
    std::uint64_t advice_budget() const override { return 0; }
    InversionAttempt invert(std::uint64_t, OracleHandle&) const override { return {std::pair{std::uint64_t{0}, std::uint64_t{1}}, 0, 0}; }
};

/// Sorted (y, smallest pair rank) over the whole image; binary search online.
class TableAdversary final : public PreprocessingAdversary {
public:
    explicit TableAdversary(unsigned w = 64) : w_(w) {}
    std::string name() const override { return "table"; }

    void preprocess(const RandomOracle& R) override {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
        entries.reserve(pair_count(R.N()));
        for (std::uint64_t x2 = 1; x2 < R.N(); ++x2)
            for (std::uint64_t x1 = 0; x1 < x2; ++x1) entries.emplace_back(immunized_eval(R, x1, x2), pair_rank(x1, x2));
        std::sort(entries.begin(), entries.end());
        entries.erase(std::unique(entries.begin(), entries.end(), [](auto& a, auto& b) { return a.first == b.first; }),
                      entries.end());
        yl_ = WordLayout::for_group(R.group(), w_);
        rl_ = WordLayout::for_count(pair_count(R.N()), w_);
        count_ = entries.size();
        mem_ = std::make_unique<Memory>(std::max<std::uint64_t>(1, count_ * (yl_.cells + rl_.cells)), w_);
        for (std::uint64_t k = 0; k < count_; ++k) {
            yl_.write(*mem_, k * stride(), entries[k].first);
            rl_.write(*mem_, k * stride() + yl_.cells, entries[k].second);
        }
    }

    std::uint64_t S() const override { return mem_ ? mem_->S() : 0; }
    unsigned w() const override { return w_; }
    std::uint64_t advice_budget() const override { return bit_length(Id(count_)) * yl_.cells + rl_.cells; }

    InversionAttempt invert(std::uint64_t y, OracleHandle&) const override {
        MemoryHandle h(*mem_, advice_budget());
        InversionAttempt out;
        std::uint64_t lo = 0, hi = count_;
        while (lo < hi) {
            const auto mid = lo + (hi - lo) / 2;
            const auto v = yl_.read_u64(h, mid * stride());
            if (v == y) {
                out.x = pair_unrank(rl_.read_u64(h, mid * stride() + yl_.cells));
                break;
            }
            if (v < y)
                lo = mid + 1;
            else
                hi = mid;
        }
        out.advice_probes = h.probes_used();
        return out;
    }

    std::uint64_t image_size() const noexcept { return count_; }

private:
    std::uint64_t stride() const { return yl_.cells + rl_.cells; }
    unsigned w_;
    WordLayout yl_, rl_;
    std::uint64_t count_ = 0;
    std::unique_ptr<Memory> mem_;
};

/// Hellman chains over pair ranks; endpoints held as advice.
class HellmanAdversary final : public PreprocessingAdversary {
public:
    HellmanAdversary(std::uint64_t m, std::uint64_t t, std::uint64_t seed, unsigned w = 64) : m_(m), t_(t), seed_(seed), w_(w) {}
    std::string name() const override { return "hellman"; }

    void preprocess(const RandomOracle& R) override {
        R_ = &R;
        auto f = [&](std::uint64_t r) {
            auto [x1, x2] = pair_unrank(r);
            return immunized_eval(R, x1, x2);
        };
        table_ = hellman_build(pair_count(R.N()), R.order(), f, m_, t_, seed_);
        il_ = WordLayout::for_count(pair_count(R.N()), w_);
        mem_ = std::make_unique<Memory>(std::max<std::uint64_t>(1, 2 * table_.endpoints.size() * il_.cells), w_);
        for (std::uint64_t k = 0; k < table_.endpoints.size(); ++k) {
            il_.write(*mem_, 2 * k * il_.cells, table_.endpoints[k].first);
            il_.write(*mem_, (2 * k + 1) * il_.cells, table_.endpoints[k].second);
        }
    }

    std::uint64_t S() const override { return mem_ ? mem_->S() : 0; }
    unsigned w() const override { return w_; }
    std::uint64_t advice_budget() const override {
        return t_ * (bit_length(Id(table_.endpoints.size())) * il_.cells + il_.cells);
    }

    InversionAttempt invert(std::uint64_t y, OracleHandle& oracle) const override {
        MemoryHandle h(*mem_, advice_budget());
        auto f = [&](std::uint64_t r) {
            auto [x1, x2] = pair_unrank(r);
            return add_u64(R_->group(), oracle(x1), oracle(x2));
        };
        auto lookup = [&](std::uint64_t end) -> std::optional<std::uint64_t> {
            std::uint64_t lo = 0, hi = table_.endpoints.size();
            while (lo < hi) {
                const auto mid = lo + (hi - lo) / 2;
                const auto v = il_.read_u64(h, 2 * mid * il_.cells);
                if (v == end) return il_.read_u64(h, (2 * mid + 1) * il_.cells);
                if (v < end)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return std::nullopt;
        };
        InversionAttempt out;
        const auto r = hellman_invert(table_, f, y, lookup);
        if (r.x) out.x = pair_unrank(*r.x);
        out.advice_probes = h.probes_used();
        out.oracle_calls = oracle.calls();
        return out;
    }

    const HellmanTable& table() const noexcept { return table_; }

    /// Exact success probability over y = F'(uniform pair): the preimage mass
    /// of the values the kept chains cover.
    double exact_coverage(const RandomOracle& R) const {
        auto f = [&](std::uint64_t r) {
            auto [x1, x2] = pair_unrank(r);
            return immunized_eval(R, x1, x2);
        };
        const auto covered = hellman_covered(table_, f);
        const auto mass = preimage_counts(R);
        std::uint64_t hit = 0;
        for (auto y : covered) hit += mass[y];
        return static_cast<double>(hit) / static_cast<double>(pair_count(R.N()));
    }

    /// Number of unordered pairs mapping to each y.
    static std::vector<std::uint64_t> preimage_counts(const RandomOracle& R) {
        std::vector<std::uint64_t> counts(R.order(), 0);
        for (std::uint64_t x2 = 1; x2 < R.N(); ++x2)
            for (std::uint64_t x1 = 0; x1 < x2; ++x1) ++counts[add_u64(R.group(), R(x1), R(x2))];
        return counts;
    }

private:
    std::uint64_t m_, t_, seed_;
    unsigned w_;
    const RandomOracle* R_ = nullptr;
    HellmanTable table_;
    WordLayout il_;
    std::unique_ptr<Memory> mem_;
};

/// Sumset-table data structure over A1 = A2 = image(R), plus a table with up
/// to two preimages per value. A witness (a, a) with a single preimage is a
/// failure.
class TsumAdversary final : public PreprocessingAdversary {
public:
    explicit TsumAdversary(unsigned w = 64) : w_(w) {}
    std::string name() const override { return "tsum"; }

    void preprocess(const RandomOracle& R) override {
        std::vector<Id> image;
        for (auto v : R.table()) image.push_back(Id(v));
        auto inst = TsumInstance::make(R.group(), image, image);
        ds_ = std::make_unique<SumsetTableSolution>(R.group(), w_);
        ds_mem_ = std::make_unique<Memory>(ds_->preprocess(inst));
        xl_ = WordLayout::for_count(R.N(), w_);
        pre_mem_ = std::make_unique<Memory>(2 * R.order() * xl_.cells, w_);
        std::vector<std::uint8_t> filled(R.order(), 0);
        for (std::uint64_t x = 0; x < R.N(); ++x) {
            const auto v = R(x);
            if (filled[v] >= 2) continue;
            xl_.write(*pre_mem_, (2 * v + filled[v]) * xl_.cells, Id(x + 1));
            ++filled[v];
        }
    }

    std::uint64_t S() const override { return ds_mem_ ? ds_mem_->S() + pre_mem_->S() : 0; }
    unsigned w() const override { return w_; }
    std::uint64_t advice_budget() const override { return ds_->declared(AnswerMode::Witness).T + 4 * xl_.cells; }

    InversionAttempt invert(std::uint64_t y, OracleHandle&) const override {
        InversionAttempt out;
        const auto run = run_query(*ds_, *ds_mem_, Id(y), AnswerMode::Witness);
        out.advice_probes = run.transcript.probes.size();
        if (!run.answer.witness) return out;
        const auto a1 = run.answer.witness->a1.convert_to<std::uint64_t>();
        const auto a2 = run.answer.witness->a2.convert_to<std::uint64_t>();
        MemoryHandle h(*pre_mem_, 4 * xl_.cells);
        const auto p1 = xl_.read_u64(h, 2 * a1 * xl_.cells);
        std::uint64_t p2 = xl_.read_u64(h, 2 * a2 * xl_.cells);
        if (a1 == a2) p2 = xl_.read_u64(h, (2 * a2 + 1) * xl_.cells);
        out.advice_probes += h.probes_used();
        if (p1 == 0 || p2 == 0 || p1 == p2) return out;
        out.x = std::pair{std::min(p1, p2) - 1, std::max(p1, p2) - 1};
        return out;
    }

    const CellProbeSolution& data_structure() const { return *ds_; }

private:
    unsigned w_;
    std::unique_ptr<SumsetTableSolution> ds_;
    std::unique_ptr<Memory> ds_mem_;
    std::unique_ptr<Memory> pre_mem_;
    WordLayout xl_;
};

inline const std::vector<std::string>& adversary_names() {
    static const std::vector<std::string> names{"null", "table", "hellman", "tsum"};
    return names;
}

inline std::unique_ptr<PreprocessingAdversary> make_adversary(const std::string& name, std::uint64_t seed, std::uint64_t m = 16,
                                                              std::uint64_t t = 16, unsigned w = 64) {
    if (name == "null") return std::make_unique<NullAdversary>();
    if (name == "table") return std::make_unique<TableAdversary>(w);
    if (name == "hellman") return std::make_unique<HellmanAdversary>(m, t, seed, w);
    if (name == "tsum") return std::make_unique<TsumAdversary>(w);
    throw Error(Errc::UnsupportedMode, "unknown adversary '" + name + "'");
}

struct ExperimentResult {
    std::string adversary;
    std::uint64_t N = 0;
    std::string group;
    std::uint64_t S = 0;
    unsigned w = 0;
    std::uint64_t T = 0;  // max advice probes + oracle calls seen in one trial
    std::uint64_t max_advice_probes = 0;
    std::uint64_t max_oracle_calls = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t bad_preimages = 0;  // returned pairs that do not evaluate to y
    double success = 0;
    double dtt_line = 0;      // T (S + log2 N) / N
    double hellman_line = 0;  // min(1, S^2 T / N^2)
};

/// Challenges are y = F'(x1, x2) for a uniform pair x1 < x2. A success is a
/// returned pair that evaluates to y.
inline ExperimentResult run_experiment(PreprocessingAdversary& adv, const RandomOracle& R, std::uint64_t trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw Error(Errc::InvalidParameters, "trials must be >= 1");
    adv.preprocess(R);
    ExperimentResult res;
    res.adversary = adv.name();
    res.N = R.N();
    res.group = R.group().describe();
    res.S = adv.S();
    res.w = adv.w();
    res.trials = trials;
    Rng rng(seed);
    const auto pairs = pair_count(R.N());
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto [x1, x2] = pair_unrank(rng.below(pairs));
        const auto y = immunized_eval(R, x1, x2);
        OracleHandle oracle(R);
        const auto a = adv.invert(y, oracle);
        res.max_advice_probes = std::max(res.max_advice_probes, a.advice_probes);
        res.max_oracle_calls = std::max(res.max_oracle_calls, oracle.calls());
        res.T = std::max(res.T, a.advice_probes + oracle.calls());
        if (!a.x) continue;
        const auto [r1, r2] = *a.x;
        bool ok = false;
        try {
            ok = immunized_eval(R, r1, r2) == y;
        } catch (const Error&) {
            ok = false;
        }
        if (ok)
            ++res.successes;
        else if (adv.name() != "null")
            ++res.bad_preimages;
    }
    res.success = static_cast<double>(res.successes) / static_cast<double>(trials);
    const double N = static_cast<double>(R.N());
    const double S = static_cast<double>(res.S);
    const double T = static_cast<double>(res.T);
    res.dtt_line = T * (S + std::log2(N)) / N;
    res.hellman_line = std::min(1.0, S * S * T / (N * N));
    return res;
}

inline RandomOracle make_oracle(std::uint64_t N, const GroupSpec* group, std::uint64_t seed) {
    return RandomOracle(N, group ? *group : GroupSpec::cyclic(N), seed);
}

}  // namespace tsumlab

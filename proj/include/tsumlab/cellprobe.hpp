#pragma once

/**
 * @file cellprobe.hpp
 * @brief Cell-probe execution model: S cells of w bits, probe-accounted
 *        queries and the cell-sampling count.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"
#include "tsumlab/rng.hpp"

namespace tsumlab {

class Memory {
public:
    Memory(std::uint64_t S, unsigned w) : w_(w) {
        if (S < 1) throw Error(Errc::InvalidParameters, "memory needs at least one cell");
        if (w < 1 || w > 64) throw Error(Errc::InvalidParameters, "word size must be in [1, 64]");
        cells_.assign(S, 0);
    }

    std::uint64_t S() const noexcept { return cells_.size(); }
    unsigned w() const noexcept { return w_; }
    std::uint64_t mask() const noexcept { return w_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w_) - 1; }

    std::uint64_t get(std::uint64_t i) const {
        if (i >= cells_.size()) throw Error(Errc::OutOfBoundsProbe, "cell " + std::to_string(i) + " >= S = " + std::to_string(cells_.size()));
        return cells_[i];
    }

    void set(std::uint64_t i, std::uint64_t word) {
        if (i >= cells_.size()) throw Error(Errc::OutOfBoundsProbe, "cell " + std::to_string(i) + " >= S = " + std::to_string(cells_.size()));
        if (word & ~mask()) throw Error(Errc::InvalidParameters, "word exceeds " + std::to_string(w_) + " bits");
        cells_[i] = word;
    }

    /// Same shape, uniformly random contents.
    static Memory random_like(const Memory& shape, Rng& rng) {
        Memory m(shape.S(), shape.w());
        for (auto& c : m.cells_) c = rng.next() & m.mask();
        return m;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return cells_; }

private:
    std::vector<std::uint64_t> cells_;
    unsigned w_;
};

struct Probe {
    std::uint64_t cell;
    std::uint64_t word;
    friend bool operator==(const Probe&, const Probe&) = default;
};

struct ProbeTranscript {
    std::vector<Probe> probes;
    bool adaptive = false;

    std::vector<std::uint64_t> addresses() const {
        std::vector<std::uint64_t> out;
        out.reserve(probes.size());
        for (const auto& p : probes) out.push_back(p.cell);
        return out;
    }
};

/// The only way a query may touch memory. Every read is budget-checked and logged.
class ProbeHandle {
public:
    ProbeHandle(std::uint64_t budget, std::uint64_t S) : budget_(budget), S_(S) {}
    virtual ~ProbeHandle() = default;

    std::uint64_t read(std::uint64_t cell) {
        if (transcript_.probes.size() >= budget_) {
            throw Error(Errc::ProbeBudgetExceeded, "probe " + std::to_string(transcript_.probes.size() + 1) +
                                                       " exceeds declared T = " + std::to_string(budget_));
        }
        if (cell >= S_) throw Error(Errc::OutOfBoundsProbe, "cell " + std::to_string(cell) + " >= S = " + std::to_string(S_));
        const auto word = fetch(cell);
        transcript_.probes.push_back({cell, word});
        return word;
    }

    std::uint64_t probes_used() const noexcept { return transcript_.probes.size(); }
    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t S() const noexcept { return S_; }
    const ProbeTranscript& transcript() const noexcept { return transcript_; }
    ProbeTranscript take_transcript() { return std::move(transcript_); }

protected:
    virtual std::uint64_t fetch(std::uint64_t cell) = 0;

private:
    std::uint64_t budget_;
    std::uint64_t S_;
    ProbeTranscript transcript_;
};

class MemoryHandle final : public ProbeHandle {
public:
    MemoryHandle(const Memory& mem, std::uint64_t budget) : ProbeHandle(budget, mem.S()), mem_(mem) {}

protected:
    std::uint64_t fetch(std::uint64_t cell) override { return mem_.get(cell); }

private:
    const Memory& mem_;
};

enum class AnswerMode { Decision, Witness };

struct Declared {
    std::uint64_t S;
    unsigned w;
    std::uint64_t T;
};

class CellProbeSolution {
public:
    virtual ~CellProbeSolution() = default;
    virtual std::string name() const = 0;
    virtual const GroupSpec& group() const = 0;
    virtual Declared declared(AnswerMode mode) const = 0;
    /// True if probe addresses may depend on contents read earlier.
    virtual bool adaptive() const = 0;
    virtual Memory preprocess(const TsumInstance& inst) const = 0;
    virtual SumsetAnswer query(const Id& z, AnswerMode mode, ProbeHandle& mem) const = 0;
};

struct QueryRun {
    SumsetAnswer answer;
    ProbeTranscript transcript;
};

inline QueryRun run_query(const CellProbeSolution& sol, const Memory& mem, const Id& z,
                          AnswerMode mode = AnswerMode::Witness) {
    sol.group().check(z);
    MemoryHandle handle(mem, sol.declared(mode).T);
    auto answer = sol.query(z, mode, handle);
    auto transcript = handle.take_transcript();
    transcript.adaptive = sol.adaptive();
    return {std::move(answer), std::move(transcript)};
}

/// Runs every sampled query against two memories with independent random
/// contents and compares the probe address sequences. A query that errors on
/// one memory but not the other counts as adaptive.
inline bool verify_nonadaptive(const CellProbeSolution& sol, const TsumInstance& shape_source,
                               const std::vector<Id>& sample_queries, std::uint64_t seed = 1,
                               AnswerMode mode = AnswerMode::Witness) {
    const auto shape = sol.preprocess(shape_source);
    Rng rng(seed);
    const auto m1 = Memory::random_like(shape, rng);
    const auto m2 = Memory::random_like(shape, rng);
    const auto budget = sol.declared(mode).T;

    auto trace = [&](const Memory& m, const Id& z) -> std::optional<std::vector<std::uint64_t>> {
        MemoryHandle h(m, budget);
        try {
            (void)sol.query(z, mode, h);
        } catch (const Error&) {
            return std::nullopt;
        }
        return h.transcript().addresses();
    };

    for (const auto& z : sample_queries) {
        if (trace(m1, z) != trace(m2, z)) return false;
    }
    return true;
}

struct CellSamplingCount {
    Rational exact;       // |G| C(S-T, D-T) / C(S, D)
    Rational simplified;  // |G| ((D-T+1)/S)^T
    Rational relaxation;  // |G| (D/(2S))^T
};

/// Expected number of queries whose T probes all fall in a uniformly random
/// D-subset of the S cells.
inline CellSamplingCount cell_sampling_count(const Id& group_order, std::uint64_t S, std::uint64_t T, std::uint64_t delta) {
    if (!(T <= delta && delta <= S)) {
        throw Error(Errc::InvalidParameters, "cell sampling needs T <= delta <= S (T=" + std::to_string(T) +
                                                 ", delta=" + std::to_string(delta) + ", S=" + std::to_string(S) + ")");
    }
    CellSamplingCount out;
    out.exact = Rational(group_order * binomial(S - T, delta - T), binomial(S, delta));
    Rational simple(group_order);
    Rational relax(group_order);
    for (std::uint64_t i = 0; i < T; ++i) {
        simple *= Rational(Id(delta - T + 1), Id(S));
        relax *= Rational(Id(delta), Id(2 * S));
    }
    out.simplified = simple;
    out.relaxation = relax;
    return out;
}

/// Default sample size: n / (2w), at least 1.
inline std::uint64_t default_delta(std::uint64_t n, unsigned w) {
    const auto d = n / (2 * static_cast<std::uint64_t>(w));
    return d == 0 ? 1 : d;
}

}  // namespace tsumlab

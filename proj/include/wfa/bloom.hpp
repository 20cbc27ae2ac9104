#pragma once

// Property harness for the two Bloom-algebra axioms.
//
// An instance fixes a carrier A, an algebra structure combining an output
// value with one carrier element per letter, and a "dagger" that solves an
// automaton: every state vector gets a carrier element. The axioms:
//
//   solution       dagger(v) = combine(v·o, (dagger(v·M^a))_a)
//   functoriality  dagger_src(v) = dagger_tgt(v·H) for every simulation H
//
// The shipped instance is truncated power series with dagger = behavior.
// Carriers are approximated to a finite depth, so the dagger and combine
// operations take the depth they must be accurate to.

#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wfa/automaton.hpp"
#include "wfa/zigzag.hpp"

namespace wfa {

template <class I>
concept BloomInstance = requires(const I& inst, const WeightedAutomaton<typename I::semiring>& aut,
                                 const StateVector<typename I::semiring>& v, std::size_t depth,
                                 const typename I::semiring::value_type& out,
                                 const std::vector<typename I::carrier>& successors,
                                 const typename I::carrier& x) {
    typename I::semiring;
    typename I::carrier;
    { inst.name() } -> std::convertible_to<std::string>;
    { inst.dagger(aut, v, depth) } -> std::same_as<typename I::carrier>;
    { inst.combine(out, successors, depth) } -> std::same_as<typename I::carrier>;
    // nullopt when equal, else a description of the first difference.
    { inst.compare(x, x) } -> std::same_as<std::optional<std::string>>;
};

/// Final-coalgebra instance: carrier = series truncated at a depth,
/// dagger = truncated behavior, combine = prepend letters.
template <Semiring S>
struct SeriesInstance {
    using semiring = S;
    using carrier = TruncatedSeries<S>;

    std::string name() const { return "series"; }

    carrier dagger(const WeightedAutomaton<S>& aut, const StateVector<S>& v,
                   std::size_t depth) const {
        return truncated_behavior(aut, v, depth);
    }

    /// Series s with s(ε) = out and s(a·w) = successors[a](w), to `depth`.
    carrier combine(const typename S::value_type& out, const std::vector<carrier>& successors,
                    std::size_t depth) const {
        const std::size_t k = successors.size();
        std::vector<typename S::value_type> values{out};
        for (const auto& w : words_up_to(k, depth)) {
            if (w.empty())
                continue;
            Word tail(w.begin() + 1, w.end());
            values.push_back(successors[w.front()].at(tail));
        }
        return carrier(k, depth, std::move(values));
    }

    std::optional<std::string> compare(const carrier& x, const carrier& y) const {
        const std::size_t depth = std::min(x.depth(), y.depth());
        const auto words = words_up_to(x.alphabet_size(), depth);
        for (const auto& w : words)
            if (!(x.at(w) == y.at(w)))
                return "differs at word of length " + std::to_string(w.size()) + " [" +
                       join_word(w) + "]: " + S::format(x.at(w)) + " vs " + S::format(y.at(w));
        return std::nullopt;
    }

private:
    static std::string join_word(const Word& w) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i)
            s += (i ? "," : "") + std::to_string(w[i]);
        return s;
    }
};

static_assert(BloomInstance<SeriesInstance<Rational>>);

/// One line per violation: instance, axiom, sample index, seed, detail.
struct BloomReport {
    std::vector<std::string> lines;
    bool skipped = false;
    std::string note; // why the check was skipped
    bool ok() const { return lines.empty(); }
};

namespace detail {

template <Semiring S>
StateVector<S> random_vector(std::size_t n, std::mt19937_64& rng) {
    StateVector<S> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(S::random(rng));
    return v;
}

template <class I>
std::string report_line(const I& inst, const char* axiom, std::size_t sample, std::uint64_t seed,
                        const std::string& detail) {
    return "instance=" + inst.name() + " axiom=" + axiom + " sample=" + std::to_string(sample) +
           " seed=" + std::to_string(seed) + " " + detail;
}

} // namespace detail

/// Checks dagger(v) = combine(v·o, (dagger(v·M^a))_a) up to `depth` for the
/// basis vectors and `samples` random vectors.
template <BloomInstance I>
BloomReport check_solution_axiom(const I& inst, const WeightedAutomaton<typename I::semiring>& aut,
                                 std::size_t depth, std::size_t samples, std::uint64_t seed) {
    using S = typename I::semiring;
    if (depth < 1)
        throw precondition_error("solution axiom needs depth >= 1");
    BloomReport report;
    std::mt19937_64 rng(seed);
    const std::size_t n = aut.states();
    for (std::size_t s = 0; s < n + samples; ++s) {
        auto v = s < n ? unit_vector<S>(n, s) : detail::random_vector<S>(n, rng);
        std::vector<typename I::carrier> successors;
        for (std::size_t a = 0; a < aut.alphabet().size(); ++a)
            successors.push_back(inst.dagger(aut, row_times<S>(v, aut.transition(a)), depth - 1));
        auto lhs = inst.dagger(aut, v, depth);
        auto rhs = inst.combine(dot<S>(v, aut.output()), successors, depth);
        if (auto diff = inst.compare(lhs, rhs))
            report.lines.push_back(detail::report_line(inst, "solution", s, seed, *diff));
    }
    return report;
}

/// Checks dagger_src(v) = dagger_tgt(v·H). Refuses (precondition_error)
/// matrices that are not simulations.
template <BloomInstance I>
BloomReport check_functoriality_axiom(const I& inst,
                                      const SimulationMatrix<typename I::semiring>& sim,
                                      std::size_t depth, std::size_t samples, std::uint64_t seed) {
    using S = typename I::semiring;
    if (auto violations = check_simulation(sim); !violations.empty())
        throw precondition_error("not a simulation: " + violations.front().describe());
    BloomReport report;
    std::mt19937_64 rng(seed);
    const std::size_t n = sim.source.states();
    for (std::size_t s = 0; s < n + samples; ++s) {
        auto v = s < n ? unit_vector<S>(n, s) : detail::random_vector<S>(n, rng);
        auto lhs = inst.dagger(sim.source, v, depth);
        auto rhs = inst.dagger(sim.target, apply_simulation(sim, v), depth);
        if (auto diff = inst.compare(lhs, rhs))
            report.lines.push_back(detail::report_line(inst, "functoriality", s, seed, *diff));
    }
    return report;
}

/// Zig-zag related elements must receive equal dagger values: along each
/// arrow, and between the two endpoints.
template <BloomInstance I>
    requires std::same_as<typename I::semiring, Rational>
BloomReport check_witness_factorization(const I& inst, const ZigZagWitness& w, std::size_t depth) {
    BloomReport report;
    if (auto failure = verify_zigzag(w)) {
        report.lines.push_back("instance=" + inst.name() + " axiom=initiality witness rejected: " +
                               *failure);
        return report;
    }
    for (std::size_t i = 0; i + 1 < w.automata.size(); ++i) {
        auto x = inst.dagger(w.automata[i], w.elements[i], depth);
        auto y = inst.dagger(w.automata[i + 1], w.elements[i + 1], depth);
        if (auto diff = inst.compare(x, y))
            report.lines.push_back("instance=" + inst.name() + " axiom=initiality elements " +
                                   std::to_string(i) + "," + std::to_string(i + 1) + " " + *diff);
    }
    auto first = inst.dagger(w.automata.front(), w.elements.front(), depth);
    auto last = inst.dagger(w.automata.back(), w.elements.back(), depth);
    if (auto diff = inst.compare(first, last))
        report.lines.push_back("instance=" + inst.name() + " axiom=initiality endpoints " + *diff);
    return report;
}

/// Builds the witness relating (a1, v1) and (a2, v2) and checks it with
/// check_witness_factorization. An inequivalent pair has no witness; the
/// report is then marked skipped.
template <BloomInstance I, Semiring S>
    requires std::same_as<typename I::semiring, Rational>
BloomReport check_initial_factorization(const I& inst, const WeightedAutomaton<S>& a1,
                                        const StateVector<S>& v1, const WeightedAutomaton<S>& a2,
                                        const StateVector<S>& v2, std::size_t depth) {
    ZigZagWitness w;
    try {
        w = construct_zigzag(a1, v1, a2, v2);
    } catch (const precondition_error& e) {
        BloomReport report;
        report.skipped = true;
        report.note = std::string("no witness: ") + e.what();
        return report;
    }
    return check_witness_factorization(inst, w, depth);
}

} // namespace wfa

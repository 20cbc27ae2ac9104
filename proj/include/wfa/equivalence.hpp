#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfa/automaton.hpp"
#include "wfa/linalg.hpp"
#include "wfa/semiring.hpp"

namespace wfa {

using QAutomaton = WeightedAutomaton<Rational>;
using QVector = StateVector<Rational>;

template <Semiring S>
QVector to_rationals(const StateVector<S>& v) {
    if constexpr (std::is_same_v<S, Rational>) {
        return v;
    } else if constexpr (std::is_same_v<S, Natural> || std::is_same_v<S, Integer>) {
        QVector out;
        out.reserve(v.size());
        for (const auto& x : v)
            out.push_back(embed_to_rationals(x));
        return out;
    } else {
        throw unsupported_semiring(std::string(S::name), "embeddable_in_rationals");
    }
}

/// Image of an automaton under the canonical embedding N, Z -> Q (identity on Q).
template <Semiring S>
QAutomaton to_rationals(const WeightedAutomaton<S>& aut) {
    if constexpr (std::is_same_v<S, Rational>) {
        return aut;
    } else if constexpr (std::is_same_v<S, Natural> || std::is_same_v<S, Integer>) {
        auto embed = [](const mpz_class& x) { return embed_to_rationals(x); };
        std::vector<SMatrix<Rational>> ts;
        for (const auto& m : aut.transitions())
            ts.push_back(map_entries<mpq_class>(m, embed));
        std::optional<QVector> init;
        if (aut.initial())
            init = to_rationals<S>(*aut.initial());
        return QAutomaton(aut.alphabet(), to_rationals<S>(aut.output()), std::move(ts),
                          std::move(init));
    } else {
        throw unsupported_semiring(std::string(S::name), "embeddable_in_rationals");
    }
}

/// Basis of the smallest subspace containing a start vector and closed under
/// every M^a, found by a breadth-first worklist over words.
struct ForwardSpaceBasis {
    std::vector<QVector> vectors;
    std::vector<Word> words; // vectors[i] = start · M^words[i]
    // closure[i][a]: coordinates of vectors[i] · M^a in `vectors`.
    std::vector<std::vector<QVector>> closure;

    std::size_t size() const { return vectors.size(); }
};

inline ForwardSpaceBasis forward_space(const QAutomaton& aut, const QVector& start) {
    detail::require_start(aut, start);
    const std::size_t k = aut.alphabet().size();
    linalg::EchelonBasis echelon(aut.states());
    ForwardSpaceBasis out;
    if (echelon.insert(start)) {
        out.vectors.push_back(start);
        out.words.emplace_back();
    }
    for (std::size_t i = 0; i < out.vectors.size(); ++i) {
        out.closure.emplace_back();
        for (std::size_t a = 0; a < k; ++a) {
            auto v = row_times<Rational>(out.vectors[i], aut.transition(a));
            auto coords = echelon.coordinates(v);
            if (!coords) {
                echelon.insert(v);
                coords = QVector(echelon.size(), mpq_class(0));
                coords->back() = 1;
                Word w = out.words[i];
                w.push_back(a);
                out.vectors.push_back(std::move(v));
                out.words.push_back(std::move(w));
            }
            out.closure[i].push_back(std::move(*coords));
        }
    }
    // Coordinates recorded before later insertions are shorter; pad them.
    for (auto& row : out.closure)
        for (auto& c : row)
            c.resize(out.vectors.size(), mpq_class(0));
    return out;
}

enum class Verdict { equivalent, inequivalent, unsupported };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::equivalent:
        return "equivalent";
    case Verdict::inequivalent:
        return "inequivalent";
    case Verdict::unsupported:
        return "unsupported";
    }
    return "?";
}

template <Semiring S>
struct EquivalenceVerdict {
    Verdict verdict = Verdict::unsupported;
    std::optional<Word> counterexample;
    std::optional<typename S::value_type> lhs; // behavior of (a1, v1) at the counterexample
    std::optional<typename S::value_type> rhs; // behavior of (a2, v2) at the counterexample
    std::size_t basis_size = 0;
    std::string missing_capability; // set when unsupported
};

/// States n1 and n2 of two field automata are equivalent iff they agree on
/// all words of length < n1 + n2.
template <Semiring S>
std::size_t equivalence_depth_bound(const WeightedAutomaton<S>& a1,
                                    const WeightedAutomaton<S>& a2) {
    return a1.states() + a2.states();
}

namespace detail {

inline EquivalenceVerdict<Rational> decide_rational(const QAutomaton& a1, const QVector& v1,
                                                    const QAutomaton& a2, const QVector& v2) {
    auto sum = coproduct(a1, a2);
    QVector diff = v1;
    for (const auto& x : v2)
        diff.push_back(-x);
    auto basis = forward_space(sum.automaton, diff);

    EquivalenceVerdict<Rational> verdict;
    verdict.basis_size = basis.size();
    verdict.verdict = Verdict::equivalent;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (sgn(dot<Rational>(basis.vectors[i], sum.automaton.output())) != 0) {
            verdict.verdict = Verdict::inequivalent;
            verdict.counterexample = basis.words[i];
            break;
        }
    }
    return verdict;
}

template <Semiring S>
EquivalenceVerdict<S> decide_locally_finite(const WeightedAutomaton<S>& a1,
                                            const StateVector<S>& v1,
                                            const WeightedAutomaton<S>& a2,
                                            const StateVector<S>& v2) {
    const auto d1 = concretize_locally_finite(a1, v1);
    const auto d2 = concretize_locally_finite(a2, v2);
    const std::size_t k = a1.alphabet().size();
    // Breadth-first over the product, remembering the word reaching each pair.
    std::map<std::pair<std::size_t, std::size_t>, Word> seen;
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    seen[{0, 0}] = {};
    queue.push_back({0, 0});
    EquivalenceVerdict<S> verdict;
    verdict.verdict = Verdict::equivalent;
    while (!queue.empty()) {
        auto [s1, s2] = queue.front();
        queue.pop_front();
        if (!(d1.output[s1] == d2.output[s2])) {
            verdict.verdict = Verdict::inequivalent;
            verdict.counterexample = seen[{s1, s2}];
            break;
        }
        for (std::size_t a = 0; a < k; ++a) {
            std::pair<std::size_t, std::size_t> t{d1.next[s1][a], d2.next[s2][a]};
            if (!seen.count(t)) {
                Word w = seen[{s1, s2}];
                w.push_back(a);
                seen.emplace(t, std::move(w));
                queue.push_back(t);
            }
        }
    }
    verdict.basis_size = seen.size();
    return verdict;
}

} // namespace detail

/// Decides whether (a1, v1) and (a2, v2) accept the same weighted language.
///
/// Q, and N/Z after embedding into Q: saturate the forward space of the
/// difference vector inl(v1) - inr(v2) in the coproduct; the states are
/// equivalent iff every basis vector has zero output. The counterexample is
/// the generating word of the first basis vector with nonzero output.
///
/// B: breadth-first search of the product of the two concretized DFAs.
///
/// Semirings without supports_equivalence_decision get Verdict::unsupported.
template <Semiring S>
EquivalenceVerdict<S> decide_equivalence(const WeightedAutomaton<S>& a1, const StateVector<S>& v1,
                                         const WeightedAutomaton<S>& a2, const StateVector<S>& v2) {
    detail::require_same_alphabet(a1, a2);
    detail::require_start(a1, v1);
    detail::require_start(a2, v2);
    EquivalenceVerdict<S> verdict;
    if constexpr (!S::capabilities.supports_equivalence_decision) {
        verdict.missing_capability = "supports_equivalence_decision";
        return verdict;
    } else if constexpr (S::capabilities.is_locally_finite) {
        verdict = detail::decide_locally_finite(a1, v1, a2, v2);
    } else {
        auto q = detail::decide_rational(to_rationals(a1), to_rationals<S>(v1), to_rationals(a2),
                                         to_rationals<S>(v2));
        verdict.verdict = q.verdict;
        verdict.basis_size = q.basis_size;
        verdict.counterexample = q.counterexample;
    }
    if (verdict.counterexample) {
        verdict.lhs = behavior(a1, v1, *verdict.counterexample);
        verdict.rhs = behavior(a2, v2, *verdict.counterexample);
    }
    return verdict;
}

} // namespace wfa

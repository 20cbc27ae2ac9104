#pragma once

// Weighted automata in matrix form. An n-state automaton over S is a
// coalgebra S^n -> S x (S^n)^Σ: an output column o and one n×n matrix per
// letter. States are row vectors acting on the left, so the weight of a word
// w = a1...ak from a vector v is v · M^a1 · ... · M^ak · o.

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "wfa/alphabet.hpp"
#include "wfa/errors.hpp"
#include "wfa/matrix.hpp"
#include "wfa/semiring.hpp"

namespace wfa {

template <Semiring S>
class WeightedAutomaton {
public:
    using semiring = S;
    using value_type = typename S::value_type;

    WeightedAutomaton() = default;

    WeightedAutomaton(Alphabet alphabet, std::vector<value_type> output,
                      std::vector<SMatrix<S>> transitions,
                      std::optional<StateVector<S>> initial = std::nullopt)
        : alphabet_(std::move(alphabet)), output_(std::move(output)),
          transitions_(std::move(transitions)), initial_(std::move(initial)) {
        const std::size_t n = output_.size();
        if (transitions_.size() != alphabet_.size())
            throw shape_error(std::to_string(transitions_.size()) + " transition matrices for " +
                              std::to_string(alphabet_.size()) + " letters");
        for (std::size_t a = 0; a < transitions_.size(); ++a)
            if (transitions_[a].rows() != n || transitions_[a].cols() != n)
                throw shape_error("transition matrix for '" + alphabet_.symbol(a) + "' is " +
                                  std::to_string(transitions_[a].rows()) + "x" +
                                  std::to_string(transitions_[a].cols()) + ", expected " +
                                  std::to_string(n) + "x" + std::to_string(n));
        if (initial_ && initial_->size() != n)
            throw shape_error("initial vector has length " + std::to_string(initial_->size()) +
                              ", expected " + std::to_string(n));
    }

    /// The automaton with no states over `alphabet`: the initial coalgebra.
    static WeightedAutomaton empty(Alphabet alphabet) {
        std::vector<SMatrix<S>> ts(alphabet.size(), zero_matrix<S>(0, 0));
        return WeightedAutomaton(std::move(alphabet), {}, std::move(ts));
    }

    std::size_t states() const { return output_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<value_type>& output() const { return output_; }
    const std::vector<SMatrix<S>>& transitions() const { return transitions_; }
    const SMatrix<S>& transition(std::size_t letter) const {
        if (letter >= transitions_.size())
            throw alphabet_error("letter index " + std::to_string(letter) + " out of range");
        return transitions_[letter];
    }
    const std::optional<StateVector<S>>& initial() const { return initial_; }

    WeightedAutomaton with_initial(std::optional<StateVector<S>> initial) const {
        return WeightedAutomaton(alphabet_, output_, transitions_, std::move(initial));
    }

    friend bool operator==(const WeightedAutomaton&, const WeightedAutomaton&) = default;

private:
    Alphabet alphabet_;
    std::vector<value_type> output_;
    std::vector<SMatrix<S>> transitions_;
    std::optional<StateVector<S>> initial_;
};

namespace detail {

template <Semiring S>
void require_start(const WeightedAutomaton<S>& aut, const StateVector<S>& start) {
    if (start.size() != aut.states())
        throw shape_error("start vector has length " + std::to_string(start.size()) +
                          " but the automaton has " + std::to_string(aut.states()) + " states");
}

inline void require_word(const Alphabet& alphabet, const Word& w) {
    for (auto a : w)
        if (a >= alphabet.size())
            throw alphabet_error("letter index " + std::to_string(a) + " outside alphabet of size " +
                                 std::to_string(alphabet.size()));
}

template <Semiring S>
void require_same_alphabet(const WeightedAutomaton<S>& a, const WeightedAutomaton<S>& b) {
    if (!(a.alphabet() == b.alphabet()))
        throw alphabet_error("automata have different alphabets");
}

} // namespace detail

/// start · M^w · o.
template <Semiring S>
typename S::value_type behavior(const WeightedAutomaton<S>& aut, const StateVector<S>& start,
                                const Word& word) {
    detail::require_start(aut, start);
    detail::require_word(aut.alphabet(), word);
    StateVector<S> v = start;
    for (auto a : word)
        v = row_times<S>(v, aut.transition(a));
    return dot<S>(v, aut.output());
}

template <Semiring S>
typename S::value_type behavior(const WeightedAutomaton<S>& aut, const StateVector<S>& start,
                                std::string_view word) {
    return behavior(aut, start, aut.alphabet().parse(word));
}

/// Values of a series on every word of length <= depth, stored in
/// length-lexicographic word order.
template <Semiring S>
class TruncatedSeries {
public:
    TruncatedSeries(std::size_t alphabet_size, std::size_t depth,
                    std::vector<typename S::value_type> values)
        : alphabet_size_(alphabet_size), depth_(depth), values_(std::move(values)) {
        if (values_.size() != word_count(alphabet_size_, depth_))
            throw shape_error("series of depth " + std::to_string(depth_) + " needs " +
                              std::to_string(word_count(alphabet_size_, depth_)) + " values");
    }

    std::size_t depth() const { return depth_; }
    std::size_t alphabet_size() const { return alphabet_size_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<typename S::value_type>& values() const { return values_; }
    std::vector<Word> words() const { return words_up_to(alphabet_size_, depth_); }

    const typename S::value_type& at(const Word& w) const {
        if (w.size() > depth_)
            throw shape_error("word longer than series depth " + std::to_string(depth_));
        return values_[index_of(w)];
    }

    /// Restriction to a smaller depth.
    TruncatedSeries truncate(std::size_t depth) const {
        if (depth > depth_)
            throw shape_error("cannot extend a truncated series");
        std::vector<typename S::value_type> vs(values_.begin(),
                                               values_.begin() + word_count(alphabet_size_, depth));
        return TruncatedSeries(alphabet_size_, depth, std::move(vs));
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    static std::size_t word_count(std::size_t k, std::size_t depth) {
        std::size_t total = 0, level = 1;
        for (std::size_t len = 0; len <= depth; ++len) {
            total += level;
            level *= k;
            if (k == 0)
                break;
        }
        return total;
    }

private:
    std::size_t index_of(const Word& w) const {
        // Words of length L start after all shorter words; within a length
        // they are ordered as base-k numerals.
        std::size_t offset = word_count(alphabet_size_, w.empty() ? 0 : w.size() - 1);
        if (w.empty())
            return 0;
        std::size_t rank = 0;
        for (auto a : w)
            rank = rank * alphabet_size_ + a;
        return offset + rank;
    }

    std::size_t alphabet_size_;
    std::size_t depth_;
    std::vector<typename S::value_type> values_;
};

/// Every value start · M^w · o for |w| <= depth, propagating start · M^w
/// breadth-first so each prefix vector is computed once.
template <Semiring S>
TruncatedSeries<S> truncated_behavior(const WeightedAutomaton<S>& aut, const StateVector<S>& start,
                                      std::size_t depth) {
    detail::require_start(aut, start);
    const std::size_t k = aut.alphabet().size();
    std::vector<typename S::value_type> values;
    values.reserve(TruncatedSeries<S>::word_count(k, depth));
    std::vector<StateVector<S>> level{start};
    values.push_back(dot<S>(start, aut.output()));
    for (std::size_t len = 1; len <= depth && k > 0; ++len) {
        std::vector<StateVector<S>> next;
        next.reserve(level.size() * k);
        for (const auto& v : level)
            for (std::size_t a = 0; a < k; ++a) {
                next.push_back(row_times<S>(v, aut.transition(a)));
                values.push_back(dot<S>(next.back(), aut.output()));
            }
        level = std::move(next);
    }
    return TruncatedSeries<S>(k, depth, std::move(values));
}

/// A linear map between automata, candidate coalgebra morphism from an
/// n-state source to an m-state target: an n×m matrix H acting on row
/// vectors, v ↦ v·H.
template <Semiring S>
struct SimulationMatrix {
    WeightedAutomaton<S> source;
    WeightedAutomaton<S> target;
    SMatrix<S> h;
};

struct SimulationViolation {
    enum class Equation { output, transition, initial };
    Equation equation;
    std::optional<std::string> letter; // transition equations only
    std::size_t row = 0;
    std::size_t column = 0;
    std::string lhs;
    std::string rhs;

    std::string describe() const {
        std::string s;
        switch (equation) {
        case Equation::output:
            s = "output equation o_src = H·o_tgt fails at row " + std::to_string(row);
            break;
        case Equation::transition:
            s = "transition equation M_src·H = H·M_tgt fails for letter '" + *letter + "' at (" +
                std::to_string(row) + "," + std::to_string(column) + ")";
            break;
        case Equation::initial:
            s = "initial equation i_src·H = i_tgt fails at column " + std::to_string(column);
            break;
        }
        return s + ": " + lhs + " != " + rhs;
    }
};

using SimulationReport = std::vector<SimulationViolation>;

/// Checks, exactly, o_src = H·o_tgt and M^a_src·H = H·M^a_tgt for every
/// letter, plus i_src·H = i_tgt when both sides carry an initial vector.
/// Returns the violated equations (empty on success).
template <Semiring S>
SimulationReport check_simulation(const WeightedAutomaton<S>& source,
                                  const WeightedAutomaton<S>& target, const SMatrix<S>& h) {
    detail::require_same_alphabet(source, target);
    if (h.rows() != source.states() || h.cols() != target.states())
        throw shape_error("simulation matrix is " + std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()) + " between automata with " +
                          std::to_string(source.states()) + " and " +
                          std::to_string(target.states()) + " states");
    SimulationReport report;
    using Eq = SimulationViolation::Equation;

    const auto ho = times_column<S>(h, target.output());
    for (std::size_t i = 0; i < ho.size(); ++i)
        if (!(ho[i] == source.output()[i]))
            report.push_back({Eq::output, std::nullopt, i, 0, S::format(source.output()[i]),
                              S::format(ho[i])});

    for (std::size_t a = 0; a < source.alphabet().size(); ++a) {
        const auto lhs = multiply<S>(source.transition(a), h);
        const auto rhs = multiply<S>(h, target.transition(a));
        for (std::size_t i = 0; i < lhs.rows(); ++i)
            for (std::size_t j = 0; j < lhs.cols(); ++j)
                if (!(lhs(i, j) == rhs(i, j)))
                    report.push_back({Eq::transition, source.alphabet().symbol(a), i, j,
                                      S::format(lhs(i, j)), S::format(rhs(i, j))});
    }

    if (source.initial() && target.initial()) {
        const auto ih = row_times<S>(*source.initial(), h);
        for (std::size_t j = 0; j < ih.size(); ++j)
            if (!(ih[j] == (*target.initial())[j]))
                report.push_back({Eq::initial, std::nullopt, 0, j, S::format(ih[j]),
                                  S::format((*target.initial())[j])});
    }
    return report;
}

template <Semiring S>
SimulationReport check_simulation(const SimulationMatrix<S>& sim) {
    return check_simulation(sim.source, sim.target, sim.h);
}

/// Transports a source element along the simulation: v ↦ v·H.
template <Semiring S>
StateVector<S> apply_simulation(const SimulationMatrix<S>& sim, const StateVector<S>& v) {
    if (v.size() != sim.source.states())
        throw shape_error("vector of length " + std::to_string(v.size()) +
                          " applied to a simulation from " + std::to_string(sim.source.states()) +
                          " states");
    return row_times<S>(v, sim.h);
}

template <Semiring S>
SimulationMatrix<S> identity_simulation(const WeightedAutomaton<S>& aut) {
    return {aut, aut, identity_matrix<S>(aut.states())};
}

template <Semiring S>
struct Coproduct {
    WeightedAutomaton<S> automaton;
    SimulationMatrix<S> left;  // [I 0]
    SimulationMatrix<S> right; // [0 I]
};

/// Block-diagonal sum of two automata together with both injections.
template <Semiring S>
Coproduct<S> coproduct(const WeightedAutomaton<S>& a1, const WeightedAutomaton<S>& a2) {
    detail::require_same_alphabet(a1, a2);
    const std::size_t n1 = a1.states(), n2 = a2.states(), n = n1 + n2;

    std::vector<typename S::value_type> output = a1.output();
    output.insert(output.end(), a2.output().begin(), a2.output().end());

    std::vector<SMatrix<S>> ts;
    for (std::size_t a = 0; a < a1.alphabet().size(); ++a) {
        auto m = zero_matrix<S>(n, n);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n1; ++j)
                m(i, j) = a1.transition(a)(i, j);
        for (std::size_t i = 0; i < n2; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                m(n1 + i, n1 + j) = a2.transition(a)(i, j);
        ts.push_back(std::move(m));
    }
    WeightedAutomaton<S> sum(a1.alphabet(), std::move(output), std::move(ts));

    auto inl = zero_matrix<S>(n1, n);
    for (std::size_t i = 0; i < n1; ++i)
        inl(i, i) = S::one();
    auto inr = zero_matrix<S>(n2, n);
    for (std::size_t i = 0; i < n2; ++i)
        inr(i, n1 + i) = S::one();
    return {sum, {a1, sum, std::move(inl)}, {a2, sum, std::move(inr)}};
}

/// One weighted successor in a nondeterministic transition.
template <Semiring S>
struct WeightedEdge {
    std::size_t to;
    typename S::value_type weight;
};

/// A coalgebra X -> S × (S-weighted finite combinations over X)^Σ on a
/// finite state set, given by sparse successor lists.
template <Semiring S>
struct NondetAutomaton {
    Alphabet alphabet;
    std::vector<typename S::value_type> output;                  // per state
    std::vector<std::vector<std::vector<WeightedEdge<S>>>> next; // [state][letter]
    std::optional<StateVector<S>> initial;

    std::size_t states() const { return output.size(); }
};

/// Extends a nondeterministic automaton to the free semimodule: row x of
/// M^a is the combination next[x][a], and o_x is output[x]. Parallel edges
/// are summed.
template <Semiring S>
WeightedAutomaton<S> determinize(const NondetAutomaton<S>& nd) {
    const std::size_t n = nd.states();
    if (nd.next.size() != n && !(nd.next.empty() && n == 0))
        throw shape_error("transition lists for " + std::to_string(nd.next.size()) +
                          " states, expected " + std::to_string(n));
    std::vector<SMatrix<S>> ts(nd.alphabet.size(), zero_matrix<S>(n, n));
    for (std::size_t x = 0; x < nd.next.size(); ++x) {
        if (nd.next[x].size() > nd.alphabet.size())
            throw alphabet_error("state " + std::to_string(x) + " has transitions for " +
                                 std::to_string(nd.next[x].size()) + " letters");
        for (std::size_t a = 0; a < nd.next[x].size(); ++a)
            for (const auto& e : nd.next[x][a]) {
                if (e.to >= n)
                    throw shape_error("state " + std::to_string(x) + " has a successor " +
                                      std::to_string(e.to) + " outside the state set");
                ts[a](x, e.to) = S::add(ts[a](x, e.to), e.weight);
            }
    }
    return WeightedAutomaton<S>(nd.alphabet, nd.output, std::move(ts), nd.initial);
}

/// Deterministic automaton whose states are the distinct vectors reachable
/// from a start vector; state 0 is the start.
template <Semiring S>
struct ExplicitDfa {
    Alphabet alphabet;
    std::vector<StateVector<S>> states;
    std::vector<typename S::value_type> output;
    std::vector<std::vector<std::size_t>> next; // [state][letter]

    std::size_t size() const { return states.size(); }

    std::size_t run(const Word& w) const {
        std::size_t s = 0;
        for (auto a : w)
            s = next.at(s).at(a);
        return s;
    }
    const typename S::value_type& accepts(const Word& w) const { return output[run(w)]; }
};

/// Breadth-first enumeration of {start·M^w}. Terminates because the carrier
/// is finite; for B this is the subset construction restricted to reachable
/// subsets.
template <Semiring S>
ExplicitDfa<S> concretize_locally_finite(const WeightedAutomaton<S>& aut,
                                         const StateVector<S>& start) {
    if constexpr (!S::capabilities.is_locally_finite) {
        throw unsupported_semiring(std::string(S::name), "is_locally_finite");
    } else {
        detail::require_start(aut, start);
        ExplicitDfa<S> dfa{aut.alphabet(), {}, {}, {}};
        std::map<StateVector<S>, std::size_t> index;
        auto intern = [&](StateVector<S> v) {
            auto [it, fresh] = index.emplace(v, dfa.states.size());
            if (fresh) {
                dfa.output.push_back(dot<S>(v, aut.output()));
                dfa.states.push_back(std::move(v));
                dfa.next.emplace_back();
            }
            return it->second;
        };
        intern(start);
        for (std::size_t s = 0; s < dfa.states.size(); ++s)
            for (std::size_t a = 0; a < aut.alphabet().size(); ++a) {
                auto succ = row_times<S>(dfa.states[s], aut.transition(a));
                auto t = intern(std::move(succ));
                dfa.next[s].push_back(t);
            }
        return dfa;
    }
}

} // namespace wfa

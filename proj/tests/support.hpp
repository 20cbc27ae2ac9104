#pragma once

// Random generators and independent oracles shared by the test suites.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wfa/automaton.hpp"
#include "wfa/equivalence.hpp"
#include "wfa/linalg.hpp"
#include "wfa/zigzag.hpp"

namespace wfa::oracle {

/// $SEED if set, else the given default. Failing tests print the seed.
inline std::uint64_t test_seed(std::uint64_t fallback = 20240611) {
    if (const char* env = std::getenv("SEED"))
        return std::stoull(env);
    return fallback;
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Small integer-valued rational, zero with probability ~ zero_percent.
inline mpq_class small_rational(std::mt19937_64& rng, int zero_percent = 40) {
    if (static_cast<int>(uniform(rng, 0, 99)) < zero_percent)
        return 0;
    mpq_class q(uniform_int(rng, -3, 3), uniform_int(rng, 1, 2));
    q.canonicalize();
    return q;
}

inline QVector random_qvector(std::mt19937_64& rng, std::size_t n, int zero_percent = 30) {
    QVector v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(small_rational(rng, zero_percent));
    return v;
}

inline QMatrix random_qmatrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                              int zero_percent = 40) {
    QMatrix m(rows, cols, mpq_class(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = small_rational(rng, zero_percent);
    return m;
}

inline Alphabet ab() { return Alphabet({"a", "b"}); }

inline QAutomaton random_qautomaton(std::mt19937_64& rng, std::size_t n,
                                    const Alphabet& alphabet = ab()) {
    std::vector<QMatrix> ts;
    for (std::size_t a = 0; a < alphabet.size(); ++a)
        ts.push_back(random_qmatrix(rng, n, n));
    return QAutomaton(alphabet, random_qvector(rng, n), std::move(ts));
}

/// Invertible P = L·U with unit-diagonal triangular factors.
inline QMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
    QMatrix l(n, n, mpq_class(0)), u(n, n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        l(i, i) = 1;
        u(i, i) = 1;
        for (std::size_t j = 0; j < i; ++j)
            l(i, j) = small_rational(rng, 30);
        for (std::size_t j = i + 1; j < n; ++j)
            u(i, j) = small_rational(rng, 30);
    }
    return multiply<Rational>(l, u);
}

struct Conjugate {
    QAutomaton automaton; // M' = P⁻¹ M P, o' = P⁻¹ o
    QMatrix p;            // v in the original corresponds to v·P
};

/// A change of basis of `aut`: start vector v corresponds to v·P, and the
/// two have the same behavior.
inline Conjugate conjugate(const QAutomaton& aut, std::mt19937_64& rng) {
    const auto p = random_invertible(rng, aut.states());
    const auto pinv = *linalg::inverse(p);
    std::vector<QMatrix> ts;
    for (const auto& m : aut.transitions())
        ts.push_back(multiply<Rational>(multiply<Rational>(pinv, m), p));
    return {QAutomaton(aut.alphabet(), times_column<Rational>(pinv, aut.output()), std::move(ts)),
            p};
}

/// Weighted path sum: Σ over state sequences q0..qk of
/// v[q0]·M_{w1}[q0][q1]···M_{wk}[q(k-1)][qk]·o[qk], by explicit enumeration.
/// Partial paths of weight zero are not extended; they contribute zero.
template <Semiring S>
typename S::value_type path_sum(const WeightedAutomaton<S>& aut, const StateVector<S>& v,
                                const Word& w) {
    const std::size_t n = aut.states();
    auto total = S::zero();
    std::vector<std::size_t> path(w.size() + 1, 0);
    std::function<void(std::size_t, typename S::value_type)> walk =
        [&](std::size_t depth, typename S::value_type weight) {
            if (depth == w.size()) {
                total = S::add(total, S::mul(weight, aut.output()[path[depth]]));
                return;
            }
            for (std::size_t q = 0; q < n; ++q) {
                auto next = S::mul(weight, aut.transition(w[depth])(path[depth], q));
                if (next == S::zero())
                    continue;
                path[depth + 1] = q;
                walk(depth + 1, next);
            }
        };
    for (std::size_t q = 0; q < n; ++q) {
        if (v[q] == S::zero())
            continue;
        path[0] = q;
        walk(0, v[q]);
    }
    return total;
}

/// Boolean NFA with explicit state sets.
struct Nfa {
    std::size_t states = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<std::vector<bool>>> delta; // [state][letter][state]
    std::vector<bool> start;

    bool accepts(const Word& w) const {
        auto current = start;
        for (auto a : w) {
            std::vector<bool> next(states, false);
            for (std::size_t p = 0; p < states; ++p)
                if (current[p])
                    for (std::size_t q = 0; q < states; ++q)
                        if (delta[p][a][q])
                            next[q] = true;
            current = next;
        }
        for (std::size_t q = 0; q < states; ++q)
            if (current[q] && accepting[q])
                return true;
        return false;
    }

    WeightedAutomaton<Boolean> to_automaton(const Alphabet& alphabet) const {
        std::vector<SMatrix<Boolean>> ts;
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            SMatrix<Boolean> m(states, states, Bit{false});
            for (std::size_t p = 0; p < states; ++p)
                for (std::size_t q = 0; q < states; ++q)
                    m(p, q) = Bit{delta[p][a][q]};
            ts.push_back(m);
        }
        StateVector<Boolean> out, init;
        for (std::size_t q = 0; q < states; ++q) {
            out.push_back(Bit{accepting[q]});
            init.push_back(Bit{start[q]});
        }
        return WeightedAutomaton<Boolean>(alphabet, out, std::move(ts), init);
    }
};

inline Nfa random_nfa(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    Nfa nfa;
    nfa.states = n;
    auto coin = [&](int percent) { return static_cast<int>(uniform(rng, 0, 99)) < percent; };
    for (std::size_t q = 0; q < n; ++q) {
        nfa.accepting.push_back(coin(40));
        nfa.start.push_back(q == 0 || coin(20));
        nfa.delta.emplace_back(k, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t r = 0; r < n; ++r)
                nfa.delta[q][a][r] = coin(35);
    }
    return nfa;
}

/// Boolean automaton over {a, b} accepting words that end in a.
inline WeightedAutomaton<Boolean> ends_in_a() {
    Nfa nfa;
    nfa.states = 2;
    nfa.accepting = {false, true};
    nfa.start = {true, false};
    nfa.delta = {{{true, true}, {true, false}}, {{false, false}, {false, false}}};
    return nfa.to_automaton(ab());
}

} // namespace wfa::oracle

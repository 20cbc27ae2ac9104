#pragma once

// Constructive witnesses of behavioral equivalence over Q.
//
// Given equivalent (A1, v1) and (A2, v2), let E be the coproduct of A1 and A2
// and q: Q^N ->> Q^r the observability quotient of E (v ↦ v·B, B a basis of
// the span of all M^w·o). The kernel pair K = {(z, z') : z·B = z'·B} is a
// subspace of Q^2N. Each basis vector (z, z') of K is sent by M^a into K
// again, so K carries an automaton ("lifted coalgebra") whose coordinate
// projections f, g: K -> Q^N are simulations into E. This yields
//
//     A1 --inl--> E <--f-- K --g--> E <--inr-- A2
//
// with (inl v1, inr v2) ∈ K because q identifies them.

#include <optional>
#include <string>
#include <vector>

#include "wfa/automaton.hpp"
#include "wfa/equivalence.hpp"
#include "wfa/linalg.hpp"

namespace wfa {

using QMatrix = SMatrix<Rational>;

struct ObservabilityQuotient {
    QMatrix q;               // n×r, columns are the basis of the observability space
    QAutomaton quotient;     // r states; q is a simulation onto it
    std::vector<Word> words; // column j of q is M^words[j] · o
};

/// Quotient of an automaton by the kernel of its behavior map.
inline ObservabilityQuotient observability_quotient(const QAutomaton& aut) {
    const std::size_t n = aut.states();
    const std::size_t k = aut.alphabet().size();
    linalg::EchelonBasis echelon(n);
    std::vector<QVector> columns;
    std::vector<Word> words;
    if (echelon.insert(aut.output())) {
        columns.push_back(aut.output());
        words.emplace_back();
    }
    // images[a][j] = coordinates of M^a · columns[j]
    std::vector<std::vector<QVector>> images(k);
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t a = 0; a < k; ++a) {
            auto col = times_column<Rational>(aut.transition(a), columns[j]);
            auto coords = echelon.coordinates(col);
            if (!coords) {
                echelon.insert(col);
                coords = QVector(echelon.size(), mpq_class(0));
                coords->back() = 1;
                Word w = words[j];
                w.insert(w.begin(), a);
                columns.push_back(std::move(col));
                words.push_back(std::move(w));
            }
            images[a].push_back(std::move(*coords));
        }

    const std::size_t r = columns.size();
    QMatrix q(n, r, mpq_class(0));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < n; ++i)
            q(i, j) = columns[j][i];

    std::vector<QMatrix> ts;
    for (std::size_t a = 0; a < k; ++a) {
        QMatrix m(r, r, mpq_class(0));
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < images[a][j].size(); ++i)
                m(i, j) = images[a][j][i];
        ts.push_back(std::move(m));
    }
    QVector output(r, mpq_class(0));
    if (r > 0)
        output[0] = 1; // o is the first basis column
    std::optional<QVector> init;
    if (aut.initial())
        init = row_times<Rational>(*aut.initial(), q);
    return {std::move(q), QAutomaton(aut.alphabet(), std::move(output), std::move(ts), init),
            std::move(words)};
}

/// {(z, z') ∈ Q^n × Q^n : z·q = z'·q} with a reduced-echelon basis.
struct KernelPairBasis {
    QMatrix q;
    std::vector<QVector> basis; // each of length 2n: (z, z')

    std::size_t carrier_dimension() const { return q.rows(); }

    /// Rows are the first (f) or second (g) halves of the basis vectors.
    QMatrix projection(bool second) const {
        const std::size_t n = carrier_dimension();
        QMatrix m(basis.size(), n, mpq_class(0));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = basis[i][(second ? n : 0) + j];
        return m;
    }
    QMatrix f() const { return projection(false); }
    QMatrix g() const { return projection(true); }
};

inline KernelPairBasis kernel_pair(const QMatrix& q) {
    const std::size_t n = q.rows();
    QMatrix stacked(2 * n, q.cols(), mpq_class(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) {
            stacked(i, j) = q(i, j);
            stacked(n + i, j) = -q(i, j);
        }
    return {q, linalg::left_null_space(stacked)};
}

struct LiftedCoalgebra {
    QAutomaton automaton; // on Q^|R|, R indexing the kernel-pair basis
    QMatrix fp;           // simulation into E: basis vector (z, z') ↦ z
    QMatrix gp;           // simulation into E: basis vector (z, z') ↦ z'
};

/// Automaton structure on the kernel pair of E's quotient map. The output of
/// generator (z, z') is z·o, and its a-successor is (z·M^a, z'·M^a) written
/// in the kernel-pair basis.
inline LiftedCoalgebra lift_coalgebra(const KernelPairBasis& kp, const QAutomaton& e) {
    const std::size_t n = e.states();
    if (kp.carrier_dimension() != n)
        throw shape_error("kernel pair over dimension " + std::to_string(kp.carrier_dimension()) +
                          " lifted along an automaton with " + std::to_string(n) + " states");
    const std::size_t dim = kp.basis.size();
    linalg::EchelonBasis echelon(2 * n);
    for (const auto& v : kp.basis)
        if (!echelon.insert(v))
            throw invariant_violation("kernel pair basis is not independent");

    auto fp = kp.f();
    auto gp = kp.g();
    QVector output(dim, mpq_class(0));
    for (std::size_t i = 0; i < dim; ++i) {
        output[i] = dot<Rational>(fp.row(i), e.output());
        if (output[i] != dot<Rational>(gp.row(i), e.output()))
            throw invariant_violation("kernel pair generator " + std::to_string(i) +
                                      " has distinct outputs on its two components");
    }
    std::vector<QMatrix> ts;
    for (std::size_t a = 0; a < e.alphabet().size(); ++a) {
        QMatrix m(dim, dim, mpq_class(0));
        for (std::size_t i = 0; i < dim; ++i) {
            auto left = row_times<Rational>(fp.row(i), e.transition(a));
            auto right = row_times<Rational>(gp.row(i), e.transition(a));
            left.insert(left.end(), right.begin(), right.end());
            auto coords = echelon.coordinates(left);
            if (!coords)
                throw invariant_violation("kernel pair not closed under the transition for '" +
                                          e.alphabet().symbol(a) + "'");
            for (std::size_t j = 0; j < dim; ++j)
                m(i, j) = (*coords)[j];
        }
        ts.push_back(std::move(m));
    }
    return {QAutomaton(e.alphabet(), std::move(output), std::move(ts)), std::move(fp),
            std::move(gp)};
}

struct ZigZagArrow {
    std::size_t from;
    std::size_t to;
    QMatrix matrix;
};

/// Alternating chain A0 -> A1 <- A2 -> A3 <- ... of simulations together with
/// one element per automaton. Arrow j joins automata j and j+1 and points
/// forward for even j, backward for odd j.
struct ZigZagWitness {
    std::vector<QAutomaton> automata;
    std::vector<ZigZagArrow> arrows;
    std::vector<QVector> elements;
};

/// Re-checks a witness from scratch. Returns the first violated condition,
/// or nullopt if the witness is valid.
inline std::optional<std::string> verify_zigzag(const ZigZagWitness& w) {
    if (w.automata.empty())
        return "witness has no automata";
    if (w.elements.size() != w.automata.size())
        return "witness has " + std::to_string(w.elements.size()) + " elements for " +
               std::to_string(w.automata.size()) + " automata";
    if (w.arrows.size() + 1 != w.automata.size())
        return "witness has " + std::to_string(w.arrows.size()) + " arrows for " +
               std::to_string(w.automata.size()) + " automata";
    for (std::size_t i = 0; i < w.automata.size(); ++i)
        if (w.elements[i].size() != w.automata[i].states())
            return "element " + std::to_string(i) + " has length " +
                   std::to_string(w.elements[i].size()) + " but automaton " + std::to_string(i) +
                   " has " + std::to_string(w.automata[i].states()) + " states";
    for (std::size_t j = 0; j < w.arrows.size(); ++j) {
        const auto& arrow = w.arrows[j];
        const std::size_t from = j % 2 == 0 ? j : j + 1;
        const std::size_t to = j % 2 == 0 ? j + 1 : j;
        const std::string name = "arrow " + std::to_string(j) + " (" + std::to_string(arrow.from) +
                                 "->" + std::to_string(arrow.to) + ")";
        if (arrow.from != from || arrow.to != to)
            return name + " should run " + std::to_string(from) + "->" + std::to_string(to);
        try {
            auto report = check_simulation(w.automata[from], w.automata[to], arrow.matrix);
            if (!report.empty())
                return name + " is not a simulation: " + report.front().describe();
            auto image = row_times<Rational>(w.elements[from], arrow.matrix);
            if (image != w.elements[to])
                return name + " does not carry element " + std::to_string(from) + " to element " +
                       std::to_string(to);
        } catch (const error& e) {
            return name + ": " + e.what();
        }
    }
    return std::nullopt;
}

/// As above, and additionally requires the endpoints to be the query elements.
inline std::optional<std::string> verify_zigzag(const ZigZagWitness& w, const QVector& v1,
                                                const QVector& v2) {
    if (auto failure = verify_zigzag(w))
        return failure;
    if (w.elements.front() != v1)
        return "first element differs from the left query vector";
    if (w.elements.back() != v2)
        return "last element differs from the right query vector";
    return std::nullopt;
}

/// Builds the 4-arrow witness relating (a1, v1) and (a2, v2). N and Z inputs
/// are embedded into Q; the witness is always over Q.
template <Semiring S>
ZigZagWitness construct_zigzag(const WeightedAutomaton<S>& a1, const StateVector<S>& v1,
                               const WeightedAutomaton<S>& a2, const StateVector<S>& v2) {
    if constexpr (!S::capabilities.supports_witness_construction) {
        throw unsupported_semiring(std::string(S::name), "supports_witness_construction");
    } else {
        auto verdict = decide_equivalence(a1, v1, a2, v2);
        if (verdict.verdict != Verdict::equivalent)
            throw precondition_error("states are not equivalent: they differ on '" +
                                     a1.alphabet().format(*verdict.counterexample) + "' (" +
                                     S::format(*verdict.lhs) + " vs " + S::format(*verdict.rhs) +
                                     ")");
        const QAutomaton q1 = to_rationals(a1);
        const QAutomaton q2 = to_rationals(a2);
        const QVector x = to_rationals<S>(v1);
        const QVector y = to_rationals<S>(v2);

        auto sum = coproduct(q1, q2);
        const auto& e = sum.automaton;
        auto obs = observability_quotient(e);
        auto kp = kernel_pair(obs.q);
        auto lifted = lift_coalgebra(kp, e);

        const QVector left_image = row_times<Rational>(x, sum.left.h);
        const QVector right_image = row_times<Rational>(y, sum.right.h);
        QVector pair = left_image;
        pair.insert(pair.end(), right_image.begin(), right_image.end());
        linalg::EchelonBasis echelon(2 * e.states());
        for (const auto& v : kp.basis)
            echelon.insert(v);
        auto z = echelon.coordinates(pair);
        if (!z)
            throw invariant_violation("equivalent elements are not identified by the quotient");

        ZigZagWitness w;
        w.automata = {q1, e, lifted.automaton, e, q2};
        w.arrows = {{0, 1, sum.left.h}, {2, 1, lifted.fp}, {2, 3, lifted.gp}, {4, 3, sum.right.h}};
        w.elements = {x, left_image, *z, right_image, y};
        return w;
    }
}

} // namespace wfa

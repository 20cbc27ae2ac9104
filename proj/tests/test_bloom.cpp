#include <gtest/gtest.h>

#include "wfa/bloom.hpp"
#include "support.hpp"

using namespace wfa;

namespace {

// Series instance whose combine drops the output: violates the solution axiom.
struct DroppedOutput : SeriesInstance<Rational> {
    std::string name() const { return "dropped-output"; }
    carrier combine(const mpq_class&, const std::vector<carrier>& successors,
                    std::size_t depth) const {
        return SeriesInstance<Rational>::combine(mpq_class(0), successors, depth);
    }
};
static_assert(BloomInstance<DroppedOutput>);

// Dagger that depends on the presentation, not just the behavior.
struct StateCount : SeriesInstance<Rational> {
    std::string name() const { return "state-count"; }
    carrier dagger(const QAutomaton& aut, const QVector& v, std::size_t depth) const {
        auto s = truncated_behavior(aut, v, depth);
        auto values = s.values();
        values[0] += static_cast<long>(aut.states());
        return carrier(s.alphabet_size(), depth, values);
    }
};

} // namespace

TEST(Bloom, SolutionAxiomHoldsForSeries) {
    std::mt19937_64 rng(oracle::test_seed());
    SeriesInstance<Rational> inst;
    for (int i = 0; i < 20; ++i) {
        auto a = oracle::random_qautomaton(rng, oracle::uniform(rng, 1, 4));
        auto r = check_solution_axiom(inst, a, 6, 5, i);
        EXPECT_TRUE(r.ok()) << r.lines.front();
    }
}

TEST(Bloom, SolutionAxiomHoldsOverOtherSemirings) {
    auto aut = oracle::ends_in_a();
    EXPECT_TRUE(check_solution_axiom(SeriesInstance<Boolean>{}, aut, 6, 10, 1).ok());
    using T = TropicalValue;
    SMatrix<Tropical> m(2, 2, Tropical::zero());
    m(0, 1) = T(mpz_class(2));
    m(1, 0) = T(mpz_class(1));
    WeightedAutomaton<Tropical> trop(Alphabet({"a"}), {T(mpz_class(0)), Tropical::zero()}, {m});
    EXPECT_TRUE(check_solution_axiom(SeriesInstance<Tropical>{}, trop, 6, 10, 1).ok());
}

TEST(Bloom, BrokenCombineIsReportedWithSeed) {
    std::mt19937_64 rng(oracle::test_seed() + 1);
    auto a = oracle::random_qautomaton(rng, 2);
    a = QAutomaton(a.alphabet(), QVector{1, 1}, a.transitions());
    auto r = check_solution_axiom(DroppedOutput{}, a, 3, 2, 99);
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.lines.front().find("instance=dropped-output axiom=solution"), std::string::npos);
    EXPECT_NE(r.lines.front().find("seed=99"), std::string::npos);
}

TEST(Bloom, FunctorialityHoldsAlongSimulations) {
    std::mt19937_64 rng(oracle::test_seed() + 2);
    SeriesInstance<Rational> inst;
    for (int i = 0; i < 20; ++i) {
        auto a = oracle::random_qautomaton(rng, oracle::uniform(rng, 1, 3));
        auto b = oracle::random_qautomaton(rng, 2);
        auto sum = coproduct(a, b);
        auto obs = observability_quotient(a);
        auto conj = oracle::conjugate(a, rng);
        for (const auto& sim : {identity_simulation(a), sum.left,
                                SimulationMatrix<Rational>{a, obs.quotient, obs.q},
                                SimulationMatrix<Rational>{a, conj.automaton, conj.p}})
            EXPECT_TRUE(check_functoriality_axiom(inst, sim, 6, 5, i).ok());
        EXPECT_TRUE(check_functoriality_axiom(inst, sum.right, 6, 5, i).ok());
    }
}

TEST(Bloom, PresentationDependentDaggerFailsFunctoriality) {
    std::mt19937_64 rng(oracle::test_seed() + 3);
    auto a = oracle::random_qautomaton(rng, 2);
    auto b = oracle::random_qautomaton(rng, 1);
    auto r = check_functoriality_axiom(StateCount{}, coproduct(a, b).left, 3, 1, 5);
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.lines.front().find("axiom=functoriality"), std::string::npos);
}

TEST(Bloom, FunctorialityRefusesNonSimulations) {
    std::mt19937_64 rng(oracle::test_seed() + 4);
    auto a = oracle::random_qautomaton(rng, 2);
    a = QAutomaton(a.alphabet(), QVector{1, 2}, a.transitions());
    auto h = identity_matrix<Rational>(2);
    h(0, 1) = 1;
    EXPECT_THROW(check_functoriality_axiom(SeriesInstance<Rational>{}, {a, a, h}, 3, 1, 0),
                 precondition_error);
}

TEST(Bloom, WitnessElementsShareTheirSeries) {
    std::mt19937_64 rng(oracle::test_seed() + 5);
    for (int i = 0; i < 10; ++i) {
        auto a = oracle::random_qautomaton(rng, 3);
        auto c = oracle::conjugate(a, rng);
        auto v = oracle::random_qvector(rng, 3);
        auto r = check_initial_factorization(SeriesInstance<Rational>{}, a, v, c.automaton,
                                             row_times<Rational>(v, c.p), 8);
        EXPECT_TRUE(r.ok());
        EXPECT_FALSE(r.skipped);
    }
}

TEST(Bloom, InequivalentPairIsSkipped) {
    QAutomaton a(Alphabet({"a"}), QVector{1}, {QMatrix(1, 1, mpq_class(1))});
    auto r = check_initial_factorization(SeriesInstance<Rational>{}, a, QVector{1}, a, QVector{2}, 4);
    EXPECT_TRUE(r.skipped);
    EXPECT_TRUE(r.ok());
    EXPECT_NE(r.note.find("no witness"), std::string::npos);
}

TEST(Bloom, DepthZeroIsRejected) {
    QAutomaton a(Alphabet({"a"}), QVector{1}, {QMatrix(1, 1, mpq_class(1))});
    EXPECT_THROW(check_solution_axiom(SeriesInstance<Rational>{}, a, 0, 1, 0), precondition_error);
}

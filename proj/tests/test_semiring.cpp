#include <gtest/gtest.h>

#include "wfa/semiring.hpp"
#include "wfa/semiring_laws.hpp"
#include "support.hpp"

using namespace wfa;

TEST(SemiringLaws, BooleanIsCheckedExhaustively) {
    auto r = semiring_laws_check<Boolean>(1);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.checked, 8u);
    EXPECT_TRUE(r.ok());
}

TEST(SemiringLaws, RandomTriplesOnInfiniteSemirings) {
    const auto seed = oracle::test_seed();
    EXPECT_TRUE(semiring_laws_check<Natural>(1000, seed).ok()) << "seed " << seed;
    EXPECT_TRUE(semiring_laws_check<Integer>(1000, seed).ok()) << "seed " << seed;
    EXPECT_TRUE(semiring_laws_check<Rational>(1000, seed).ok()) << "seed " << seed;
    auto tropical = semiring_laws_check<Tropical>(1000, seed);
    EXPECT_TRUE(tropical.ok()) << "seed " << seed;
    EXPECT_FALSE(tropical.exhaustive);
    EXPECT_EQ(tropical.seed, seed);
}

TEST(SemiringLaws, ZeroSamplesIsRejected) {
    EXPECT_THROW(semiring_laws_check<Rational>(0), precondition_error);
}

// Rational::add is replaced by an operation that is not commutative.
struct BrokenRational : Rational {
    static value_type add(const value_type& a, const value_type& b) { return a + 2 * b; }
};

TEST(SemiringLaws, DetectsABrokenAddition) {
    auto r = semiring_laws_check<BrokenRational>(200, 7);
    ASSERT_FALSE(r.ok());
    bool commutativity = false;
    for (const auto& v : r.violations)
        commutativity = commutativity || v.law == "additive commutativity";
    EXPECT_TRUE(commutativity);
}

TEST(Rational, NormalizesOnParse) {
    EXPECT_EQ(Rational::format(*Rational::parse("6/4")), "3/2");
    EXPECT_EQ(Rational::format(*Rational::parse("-3/7")), "-3/7");
    EXPECT_EQ(Rational::format(*Rational::parse("5")), "5/1");
    EXPECT_EQ(Rational::format(*Rational::parse("0/9")), "0/1");
    EXPECT_FALSE(Rational::parse("1/0"));
    EXPECT_FALSE(Rational::parse("1/"));
    EXPECT_FALSE(Rational::parse("x"));
    EXPECT_FALSE(Rational::parse(""));
}

TEST(Rational, FieldOperations) {
    mpq_class a(2, 3), b(-1, 4);
    EXPECT_EQ(Rational::sub(a, b), mpq_class(11, 12));
    EXPECT_EQ(Rational::div(a, b), mpq_class(-8, 3));
    EXPECT_EQ(Rational::negate(a), mpq_class(-2, 3));
}

TEST(Integers, AcceptOverOneNotation) {
    EXPECT_EQ(*Natural::parse("7/1"), 7);
    EXPECT_EQ(*Integer::parse("-7/1"), -7);
    EXPECT_EQ(*Integer::parse("-7"), -7);
    EXPECT_FALSE(Natural::parse("-1"));
    EXPECT_FALSE(Natural::parse("3/2"));
    EXPECT_EQ(Natural::format(mpz_class(12)), "12");
}

TEST(Boolean, FormatAndParse) {
    EXPECT_EQ(Boolean::format(Bit{true}), "1");
    EXPECT_EQ(*Boolean::parse("true"), Bit{true});
    EXPECT_EQ(*Boolean::parse("0"), Bit{false});
    EXPECT_FALSE(Boolean::parse("2"));
    EXPECT_EQ(Boolean::add(Bit{true}, Bit{true}), Bit{true});
}

TEST(Tropical, MinPlus) {
    auto inf = Tropical::zero();
    TropicalValue three(mpz_class(3)), five(mpz_class(5));
    EXPECT_EQ(Tropical::add(three, five), three);
    EXPECT_EQ(Tropical::mul(three, five), TropicalValue(mpz_class(8)));
    EXPECT_EQ(Tropical::add(inf, five), five);
    EXPECT_EQ(Tropical::mul(inf, five), inf);
    EXPECT_EQ(Tropical::format(inf), "inf");
    EXPECT_EQ(*Tropical::parse("inf"), inf);
    EXPECT_EQ(*Tropical::parse("4"), TropicalValue(mpz_class(4)));
    EXPECT_FALSE(Tropical::parse("-1"));
}

TEST(Capabilities, AreConsistentAndGateTheRightSemirings) {
    EXPECT_TRUE(Boolean::capabilities.consistent());
    EXPECT_TRUE(Rational::capabilities.has_multiplicative_inverses);
    EXPECT_FALSE(Tropical::capabilities.supports_equivalence_decision);
    EXPECT_FALSE(Tropical::capabilities.supports_witness_construction);
    Capabilities bad{.supports_witness_construction = true};
    EXPECT_FALSE(bad.consistent());
}

TEST(Dispatch, ByName) {
    EXPECT_EQ(dispatch_semiring("Q", [](auto s) { return std::string(decltype(s)::name); }), "Q");
    EXPECT_EQ(dispatch_semiring("tropical", [](auto s) { return std::string(decltype(s)::name); }),
              "tropical");
    EXPECT_THROW(dispatch_semiring("R", [](auto) { return 0; }), schema_error);
}

TEST(Embedding, IntegersIntoRationals) {
    EXPECT_EQ(embed_to_rationals(mpz_class(-4)), mpq_class(-4));
    Element e = Tagged<Integer>{mpz_class(3)};
    EXPECT_EQ(embed_to_rationals(e).value, mpq_class(3));
    Element b = Tagged<Boolean>{Bit{true}};
    try {
        embed_to_rationals(b);
        FAIL() << "expected unsupported_semiring";
    } catch (const unsupported_semiring& ex) {
        EXPECT_EQ(ex.capability(), "embeddable_in_rationals");
        EXPECT_EQ(ex.semiring(), "B");
    }
}

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wfa/semiring.hpp"

namespace wfa {

struct LawViolation {
    std::string law;
    std::string witness; // the offending triple, formatted
};

struct LawReport {
    bool exhaustive = false;
    std::uint64_t seed = 0; // meaningful only when !exhaustive
    std::size_t checked = 0;
    std::vector<LawViolation> violations;

    bool ok() const { return violations.empty(); }
};

namespace detail {

template <Semiring S>
void check_triple(const typename S::value_type& a, const typename S::value_type& b,
                  const typename S::value_type& c, LawReport& report) {
    using T = typename S::value_type;
    auto fail = [&](const char* law) {
        report.violations.push_back(
            {law, "(" + S::format(a) + ", " + S::format(b) + ", " + S::format(c) + ")"});
    };
    const T zero = S::zero();
    const T one = S::one();
    if (!(S::add(S::add(a, b), c) == S::add(a, S::add(b, c))))
        fail("additive associativity");
    if (!(S::add(a, b) == S::add(b, a)))
        fail("additive commutativity");
    if (!(S::add(a, zero) == a))
        fail("additive identity");
    if (!(S::mul(S::mul(a, b), c) == S::mul(a, S::mul(b, c))))
        fail("multiplicative associativity");
    if (!(S::mul(a, one) == a) || !(S::mul(one, a) == a))
        fail("multiplicative identity");
    if (!(S::mul(a, S::add(b, c)) == S::add(S::mul(a, b), S::mul(a, c))))
        fail("left distributivity");
    if (!(S::mul(S::add(a, b), c) == S::add(S::mul(a, c), S::mul(b, c))))
        fail("right distributivity");
    if (!(S::mul(a, zero) == zero) || !(S::mul(zero, a) == zero))
        fail("zero annihilation");
    ++report.checked;
}

} // namespace detail

/// Checks every semiring axiom. Finite carriers are enumerated exhaustively;
/// otherwise `samples` random triples are drawn from a generator seeded with
/// `seed`, which is recorded in the report for reproduction.
template <Semiring S>
LawReport semiring_laws_check(std::size_t samples, std::uint64_t seed = 0) {
    if (samples < 1)
        throw precondition_error("semiring_laws_check needs at least one sample");
    LawReport report;
    if constexpr (FiniteSemiring<S>) {
        report.exhaustive = true;
        const auto xs = S::elements();
        for (const auto& a : xs)
            for (const auto& b : xs)
                for (const auto& c : xs)
                    detail::check_triple<S>(a, b, c, report);
    } else {
        report.seed = seed;
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < samples; ++i) {
            auto a = S::random(rng);
            auto b = S::random(rng);
            auto c = S::random(rng);
            detail::check_triple<S>(a, b, c, report);
        }
    }
    return report;
}

} // namespace wfa

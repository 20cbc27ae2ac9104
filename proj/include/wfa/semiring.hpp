#pragma once

// Exact semirings the automata are parameterized over.
//
// A semiring is a stateless tag type exposing `value_type`, the constants
// `zero()`/`one()`, the operations `add`/`mul`, a textual codec and a
// `capabilities` record. All arithmetic is exact; there is no floating point
// anywhere in the library.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wfa/errors.hpp"

namespace wfa {

struct Capabilities {
    bool has_additive_inverses = false;       // ring
    bool has_multiplicative_inverses = false; // field
    bool is_locally_finite = false;           // finite carrier
    bool supports_equivalence_decision = false;
    bool supports_witness_construction = false;

    constexpr bool consistent() const {
        return (!has_multiplicative_inverses || has_additive_inverses) &&
               (!supports_witness_construction || supports_equivalence_decision);
    }
};

template <class S>
concept Semiring = requires(const typename S::value_type& a, const typename S::value_type& b,
                            std::string_view text, std::mt19937_64& rng) {
    typename S::value_type;
    { S::name } -> std::convertible_to<std::string_view>;
    { S::capabilities } -> std::convertible_to<Capabilities>;
    { S::zero() } -> std::same_as<typename S::value_type>;
    { S::one() } -> std::same_as<typename S::value_type>;
    { S::add(a, b) } -> std::same_as<typename S::value_type>;
    { S::mul(a, b) } -> std::same_as<typename S::value_type>;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    { S::format(a) } -> std::same_as<std::string>;
    { S::parse(text) } -> std::same_as<std::optional<typename S::value_type>>;
    { S::random(rng) } -> std::same_as<typename S::value_type>;
};

/// Semirings with a finite carrier also enumerate it.
template <class S>
concept FiniteSemiring = Semiring<S> && S::capabilities.is_locally_finite && requires {
    { S::elements() } -> std::same_as<std::vector<typename S::value_type>>;
};

template <class S>
concept Field = Semiring<S> && S::capabilities.has_multiplicative_inverses;

namespace detail {

// Strict decimal integer: optional '-', then digits. No whitespace, no '+'.
inline std::optional<mpz_class> parse_decimal(std::string_view s, bool allow_negative) {
    std::size_t i = 0;
    if (allow_negative && !s.empty() && s[0] == '-')
        i = 1;
    if (i == s.size())
        return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            return std::nullopt;
    return mpz_class(std::string(s));
}

// "n" or "n/1".
inline std::optional<mpz_class> parse_integral(std::string_view s, bool allow_negative) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        if (s.substr(slash + 1) != "1")
            return std::nullopt;
        s = s.substr(0, slash);
    }
    return parse_decimal(s, allow_negative);
}

template <class Rng>
long small_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

} // namespace detail

/// Boolean carrier. A struct rather than `bool` so that vectors of it are
/// ordinary contiguous containers.
struct Bit {
    bool value = false;
    constexpr Bit() = default;
    constexpr Bit(bool b) : value(b) {}
    constexpr explicit operator bool() const { return value; }
    friend constexpr bool operator==(Bit a, Bit b) { return a.value == b.value; }
    friend constexpr bool operator<(Bit a, Bit b) { return !a.value && b.value; }
};

struct Boolean {
    using value_type = Bit;
    static constexpr std::string_view name = "B";
    static constexpr Capabilities capabilities{.is_locally_finite = true,
                                               .supports_equivalence_decision = true};

    static value_type zero() { return false; }
    static value_type one() { return true; }
    static value_type add(value_type a, value_type b) { return a.value || b.value; }
    static value_type mul(value_type a, value_type b) { return a.value && b.value; }
    static std::vector<value_type> elements() { return {Bit(false), Bit(true)}; }

    static std::string format(value_type a) { return a.value ? "1" : "0"; }
    static std::optional<value_type> parse(std::string_view s) {
        if (s == "0" || s == "false")
            return Bit(false);
        if (s == "1" || s == "true")
            return Bit(true);
        return std::nullopt;
    }
    template <class Rng>
    static value_type random(Rng& rng) { return detail::small_int(rng, 0, 1) == 1; }
};

struct Natural {
    using value_type = mpz_class;
    static constexpr std::string_view name = "N";
    static constexpr Capabilities capabilities{.supports_equivalence_decision = true,
                                               .supports_witness_construction = true};

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }

    static std::string format(const value_type& a) { return a.get_str(); }
    static std::optional<value_type> parse(std::string_view s) {
        return detail::parse_integral(s, false);
    }
    template <class Rng>
    static value_type random(Rng& rng) {
        // Mostly small, occasionally large enough to leave machine words.
        if (detail::small_int(rng, 0, 9) == 0)
            return mpz_class(std::to_string(detail::small_int(rng, 0, 1L << 40))) *
                   mpz_class(std::to_string(detail::small_int(rng, 0, 1L << 40)));
        return detail::small_int(rng, 0, 9);
    }
};

struct Integer {
    using value_type = mpz_class;
    static constexpr std::string_view name = "Z";
    static constexpr Capabilities capabilities{.has_additive_inverses = true,
                                               .supports_equivalence_decision = true,
                                               .supports_witness_construction = true};

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type negate(const value_type& a) { return -a; }

    static std::string format(const value_type& a) { return a.get_str(); }
    static std::optional<value_type> parse(std::string_view s) {
        return detail::parse_integral(s, true);
    }
    template <class Rng>
    static value_type random(Rng& rng) {
        if (detail::small_int(rng, 0, 9) == 0)
            return mpz_class(std::to_string(detail::small_int(rng, -(1L << 40), 1L << 40))) *
                   mpz_class(std::to_string(detail::small_int(rng, 0, 1L << 40)));
        return detail::small_int(rng, -9, 9);
    }
};

struct Rational {
    using value_type = mpq_class;
    static constexpr std::string_view name = "Q";
    static constexpr Capabilities capabilities{.has_additive_inverses = true,
                                               .has_multiplicative_inverses = true,
                                               .supports_equivalence_decision = true,
                                               .supports_witness_construction = true};

    // gmpxx canonicalizes after every arithmetic operation, so results are
    // always in lowest terms with a positive denominator.
    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type negate(const value_type& a) { return -a; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type div(const value_type& a, const value_type& b) {
        if (b == 0)
            throw error("rational division by zero");
        return a / b;
    }

    static std::string format(const value_type& a) {
        return a.get_num().get_str() + "/" + a.get_den().get_str();
    }
    static std::optional<value_type> parse(std::string_view s) {
        auto slash = s.find('/');
        auto num = detail::parse_decimal(s.substr(0, slash), true);
        if (!num)
            return std::nullopt;
        mpz_class den = 1;
        if (slash != std::string_view::npos) {
            auto d = detail::parse_decimal(s.substr(slash + 1), true);
            if (!d || *d == 0)
                return std::nullopt;
            den = *d;
        }
        value_type q(*num, den);
        q.canonicalize();
        return q;
    }
    template <class Rng>
    static value_type random(Rng& rng) {
        value_type q(detail::small_int(rng, -12, 12), detail::small_int(rng, 1, 6));
        q.canonicalize();
        return q;
    }
};

/// Element of the tropical semiring (N ∪ {∞}, min, +, ∞, 0).
class TropicalValue {
public:
    TropicalValue() = default; // ∞
    explicit TropicalValue(mpz_class v) : value_(std::move(v)) {}
    static TropicalValue infinity() { return {}; }

    bool is_infinite() const { return !value_.has_value(); }
    const mpz_class& value() const { return *value_; }

    friend bool operator==(const TropicalValue& a, const TropicalValue& b) {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() == b.is_infinite();
        return a.value() == b.value();
    }
    // ∞ sorts last.
    friend bool operator<(const TropicalValue& a, const TropicalValue& b) {
        if (a.is_infinite())
            return false;
        if (b.is_infinite())
            return true;
        return a.value() < b.value();
    }

private:
    std::optional<mpz_class> value_;
};

struct Tropical {
    using value_type = TropicalValue;
    static constexpr std::string_view name = "tropical";
    // Not proper: equivalence is undecidable here, so the decision and witness
    // procedures refuse it.
    static constexpr Capabilities capabilities{};

    static value_type zero() { return TropicalValue::infinity(); }
    static value_type one() { return TropicalValue(0); }
    static value_type add(const value_type& a, const value_type& b) { return b < a ? b : a; }
    static value_type mul(const value_type& a, const value_type& b) {
        if (a.is_infinite() || b.is_infinite())
            return TropicalValue::infinity();
        return TropicalValue(a.value() + b.value());
    }

    static std::string format(const value_type& a) {
        return a.is_infinite() ? "inf" : a.value().get_str();
    }
    static std::optional<value_type> parse(std::string_view s) {
        if (s == "inf")
            return TropicalValue::infinity();
        if (auto n = detail::parse_integral(s, false))
            return TropicalValue(*n);
        return std::nullopt;
    }
    template <class Rng>
    static value_type random(Rng& rng) {
        auto k = detail::small_int(rng, 0, 10);
        return k == 10 ? TropicalValue::infinity() : TropicalValue(k);
    }
};

static_assert(Boolean::capabilities.consistent());
static_assert(Natural::capabilities.consistent());
static_assert(Integer::capabilities.consistent());
static_assert(Rational::capabilities.consistent());
static_assert(Tropical::capabilities.consistent());

template <Semiring S>
typename S::value_type add_all(const std::vector<typename S::value_type>& xs) {
    auto acc = S::zero();
    for (const auto& x : xs)
        acc = S::add(acc, x);
    return acc;
}

// Element: a tagged exact value, used where the semiring is only known at
// run time (file I/O, the CLI).

template <Semiring S>
struct Tagged {
    using semiring = S;
    typename S::value_type value;
    friend bool operator==(const Tagged& a, const Tagged& b) { return a.value == b.value; }
};

using Element = std::variant<Tagged<Boolean>, Tagged<Natural>, Tagged<Integer>,
                             Tagged<Rational>, Tagged<Tropical>>;

inline std::string_view semiring_name(const Element& e) {
    return std::visit([](const auto& t) { return std::decay_t<decltype(t)>::semiring::name; }, e);
}

inline std::string format(const Element& e) {
    return std::visit(
        [](const auto& t) { return std::decay_t<decltype(t)>::semiring::format(t.value); }, e);
}

/// Canonical injective homomorphism N, Z -> Q.
inline mpq_class embed_to_rationals(const mpz_class& n) { return mpq_class(n); }

inline Tagged<Rational> embed_to_rationals(const Element& e) {
    if (auto* n = std::get_if<Tagged<Natural>>(&e))
        return {embed_to_rationals(n->value)};
    if (auto* z = std::get_if<Tagged<Integer>>(&e))
        return {embed_to_rationals(z->value)};
    throw unsupported_semiring(std::string(semiring_name(e)), "embeddable_in_rationals");
}

/// Applies `f` to a default-constructed tag of the semiring named `name`.
template <class F>
decltype(auto) dispatch_semiring(std::string_view name, F&& f) {
    if (name == Boolean::name)
        return f(Boolean{});
    if (name == Natural::name)
        return f(Natural{});
    if (name == Integer::name)
        return f(Integer{});
    if (name == Rational::name)
        return f(Rational{});
    if (name == Tropical::name)
        return f(Tropical{});
    throw schema_error("unknown semiring '" + std::string(name) +
                       "' (expected one of B, N, Z, Q, tropical)");
}

} // namespace wfa

#pragma once

// Stream coalgebras on free algebras for two unary operations u, v.
//
// TX = {u,v}* × X; a term is written w(x). A coalgebra for FX = N × X is
// fixed by its values on generators, x ↦ (n, w'(x')), and extends to all
// terms as an algebra morphism where both operations act as successor on
// the output: c(w(x)) = (n + |w|, w·w'(x')). Fixtures:
//
//   a: x ↦ (0, u(x))    streams 0,1,2,...; reachable states u^k(x)
//   b: y ↦ (0, v(y))    same stream; reachable states v^k(y)
//   p: z ↦ (0, u(z))    on the quotient u(z) = v(z), i.e. terms up to length
//
// a and b are both mapped onto p, yet every zig-zag of morphisms between free
// coalgebras preserves whether reachable states have a bounded number of
// u's, so x and y are never related by one.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wfa/errors.hpp"

namespace wfa::lab {

/// w(x): a word over {u, v} applied to a generator.
struct Term {
    std::string word;
    std::string generator;

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

inline bool is_unary_word(std::string_view w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return c == 'u' || c == 'v'; });
}

inline std::size_t u_count(std::string_view w) {
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), 'u'));
}

/// Renders "uv(x)"; a bare generator renders as "x".
inline std::string format_term(const Term& t) {
    return t.word.empty() ? t.generator : t.word + "(" + t.generator + ")";
}

/// Parses "x", "u(x)", "uv(x)" and the nested form "u(v(x))".
inline Term parse_term(std::string_view text) {
    auto malformed = [&] { return schema_error("malformed term '" + std::string(text) + "'"); };
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i)
        if (i == text.size() || text[i] == '(') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    const std::size_t opens = parts.size() - 1;
    std::string_view last = parts.back();
    if (last.size() < opens || last.substr(last.size() - opens) != std::string(opens, ')'))
        throw malformed();
    Term t;
    t.generator = std::string(last.substr(0, last.size() - opens));
    for (std::size_t i = 0; i < opens; ++i) {
        if (parts[i].empty() || !is_unary_word(parts[i]) || (opens > 1 && parts[i].size() != 1))
            throw malformed();
        t.word += parts[i];
    }
    if (t.generator.empty() || t.generator.find_first_of("()") != std::string::npos)
        throw malformed();
    return t;
}

struct Step {
    mpz_class out;
    std::string word;
    std::string to;

    friend bool operator==(const Step&, const Step&) = default;
};

/// Coalgebra on T(generators), optionally modulo u(t) = v(t) for all t.
struct TermCoalgebra {
    std::vector<std::string> generators;
    std::map<std::string, Step> structure;
    bool identify_uv = false;

    bool has_generator(const std::string& g) const {
        return std::find(generators.begin(), generators.end(), g) != generators.end();
    }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& g : generators)
            if (!seen.insert(g).second)
                throw schema_error("duplicate generator '" + g + "'");
        for (const auto& g : generators) {
            auto it = structure.find(g);
            if (it == structure.end())
                throw schema_error("structure.\"" + g + "\" is missing");
            if (it->second.out < 0)
                throw schema_error("structure.\"" + g + "\".out must be a natural number");
            if (!is_unary_word(it->second.word))
                throw schema_error("structure.\"" + g + "\".word must be over {u,v}");
            if (!has_generator(it->second.to))
                throw schema_error("structure.\"" + g + "\".to names unknown generator '" +
                                   it->second.to + "'");
        }
        for (const auto& [g, _] : structure)
            if (!has_generator(g))
                throw schema_error("structure names unknown generator '" + g + "'");
    }

    void require_term(const Term& t) const {
        if (!is_unary_word(t.word))
            throw schema_error("term '" + format_term(t) + "' uses letters outside {u,v}");
        if (!has_generator(t.generator))
            throw error("unknown generator '" + t.generator + "'");
    }

    /// c(w(x)) = (n + |w|, w·w'(x')).
    std::pair<mpz_class, Term> step(const Term& t) const {
        const Step& s = structure.at(t.generator);
        return {s.out + static_cast<unsigned long>(t.word.size()), Term{t.word + s.word, s.to}};
    }

    bool same_term(const Term& a, const Term& b) const {
        if (identify_uv)
            return a.generator == b.generator && a.word.size() == b.word.size();
        return a == b;
    }

    friend bool operator==(const TermCoalgebra&, const TermCoalgebra&) = default;
};

/// First `length` outputs of the stream of `t`.
inline std::vector<mpz_class> term_behavior(const TermCoalgebra& c, const Term& t,
                                            std::size_t length) {
    c.require_term(t);
    std::vector<mpz_class> out;
    out.reserve(length);
    Term state = t;
    for (std::size_t i = 0; i < length; ++i) {
        auto [o, next] = c.step(state);
        out.push_back(o);
        state = std::move(next);
    }
    return out;
}

namespace detail {

// Generator path from `start`: generators[i] is reached after i steps;
// cycle_start indexes the first generator that repeats.
struct Lasso {
    std::vector<std::string> generators;
    std::size_t cycle_start = 0;
};

inline Lasso lasso(const TermCoalgebra& c, const std::string& start) {
    Lasso l;
    std::map<std::string, std::size_t> position;
    std::string g = start;
    while (!position.count(g)) {
        position[g] = l.generators.size();
        l.generators.push_back(g);
        g = c.structure.at(g).to;
    }
    l.cycle_start = position[g];
    return l;
}

} // namespace detail

struct UBound {
    bool bounded = false;
    std::size_t bound = 0; // max |w|_u over reachable states w(x), when bounded

    friend bool operator==(const UBound&, const UBound&) = default;
};

inline std::string format_ubound(const UBound& b) {
    return b.bounded ? "bounded(" + std::to_string(b.bound) + ")" : "unbounded";
}

/// Whether the u-count of states reachable from t is bounded. Every
/// generator has exactly one successor, so the reachable generators form a
/// path followed by a cycle; u-counts only grow, and they grow without
/// bound iff the cycle's words contain a u.
inline UBound u_bounded(const TermCoalgebra& c, const Term& t) {
    c.require_term(t);
    if (c.identify_uv)
        throw precondition_error("u-count is not well defined modulo u = v");
    auto l = detail::lasso(c, t.generator);
    std::size_t total = u_count(t.word), cycle = 0;
    for (std::size_t i = 0; i < l.generators.size(); ++i) {
        const auto k = u_count(c.structure.at(l.generators[i]).word);
        total += k;
        if (i >= l.cycle_start)
            cycle += k;
    }
    if (cycle > 0)
        return {false, 0};
    return {true, total};
}

/// For the identity functor (outputs ignored): whether t reaches only
/// finitely many states. Words only grow, so this holds iff the reachable
/// cycle adds no letters.
inline bool reaches_finitely_many(const TermCoalgebra& c, const Term& t) {
    c.require_term(t);
    auto l = detail::lasso(c, t.generator);
    for (std::size_t i = l.cycle_start; i < l.generators.size(); ++i)
        if (!c.structure.at(l.generators[i]).word.empty())
            return false;
    return true;
}

/// Algebra morphism T(X) -> T(Y) given on generators.
using GeneratorMap = std::map<std::string, Term>;

/// f(w(x)) = w·f(x).
inline Term apply_map(const GeneratorMap& f, const Term& t) {
    auto it = f.find(t.generator);
    if (it == f.end())
        throw precondition_error("generator map undefined on '" + t.generator + "'");
    return Term{t.word + it->second.word, it->second.generator};
}

enum class Functor {
    stream,  // F X = N × X
    identity // F X = X, outputs ignored
};

/// Verifies d·f = Ff·c on every generator, which suffices because the
/// carrier is free. Returns the first violation, naming the generator.
inline std::optional<std::string> check_morphism_on_generators(const TermCoalgebra& c,
                                                               const TermCoalgebra& d,
                                                               const GeneratorMap& f,
                                                               Functor functor = Functor::stream) {
    for (const auto& x : c.generators) {
        auto it = f.find(x);
        if (it == f.end())
            throw precondition_error("generator map undefined on '" + x + "'");
        d.require_term(it->second);
    }
    if (c.identify_uv && !d.identify_uv)
        return "relation u(t) = v(t) of the source is not preserved in the free target";
    for (const auto& x : c.generators) {
        auto [out_c, next_c] = c.step(Term{"", x});
        auto [out_d, next_d] = d.step(f.at(x));
        if (functor == Functor::stream && out_c != out_d)
            return "generator " + x + ": output " + out_c.get_str() + " maps to " +
                   out_d.get_str();
        auto image = apply_map(f, next_c);
        if (!d.same_term(image, next_d))
            return "generator " + x + ": successor " + format_term(next_c) + " maps to " +
                   format_term(image) + " but the target steps to " + format_term(next_d);
    }
    return std::nullopt;
}

/// u-boundedness of t-reachable states agrees with that of f(t)-reachable
/// states. Requires f to be a coalgebra morphism.
inline std::optional<std::string> check_u_boundedness_invariance(const TermCoalgebra& c,
                                                                 const TermCoalgebra& d,
                                                                 const GeneratorMap& f,
                                                                 const Term& t) {
    if (auto violation = check_morphism_on_generators(c, d, f))
        throw precondition_error("not a coalgebra morphism: " + *violation);
    const auto src = u_bounded(c, t);
    const auto image = apply_map(f, t);
    const auto tgt = u_bounded(d, image);
    if (src.bounded != tgt.bounded)
        return format_term(t) + " is " + format_ubound(src) + " but " + format_term(image) +
               " is " + format_ubound(tgt);
    return std::nullopt;
}

// Fixtures.

inline TermCoalgebra single(std::string gen, long out, std::string word) {
    TermCoalgebra c;
    c.generators = {gen};
    c.structure[gen] = Step{out, std::move(word), gen};
    return c;
}

/// x ↦ (0, u(x))
inline TermCoalgebra fixture_a() { return single("x", 0, "u"); }
/// y ↦ (0, v(y))
inline TermCoalgebra fixture_b() { return single("y", 0, "v"); }
/// z ↦ (0, u(z)) modulo u = v
inline TermCoalgebra fixture_p() {
    auto p = single("z", 0, "u");
    p.identify_uv = true;
    return p;
}
/// Identity-functor fixtures: x ↦ x and y ↦ u(y).
inline TermCoalgebra fixture_identity_a() { return single("x", 0, ""); }
inline TermCoalgebra fixture_identity_b() { return single("y", 0, "u"); }

// Bounded search for zig-zags between free term coalgebras.

struct SearchBounds {
    std::size_t max_generators = 2;
    std::size_t max_word = 2;
    std::size_t max_chain = 2;
};

/// All words over {u,v} of length <= n, shortest first.
inline std::vector<std::string> unary_words(std::size_t n) {
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            out.push_back(out[i] + "u");
            out.push_back(out[i] + "v");
        }
        begin = end;
    }
    return out;
}

/// Every morphism c -> d whose generator images have words of length <= max_word.
inline std::vector<GeneratorMap> morphisms(const TermCoalgebra& c, const TermCoalgebra& d,
                                           std::size_t max_word) {
    std::vector<Term> targets;
    for (const auto& w : unary_words(max_word))
        for (const auto& y : d.generators)
            targets.push_back(Term{w, y});
    std::vector<GeneratorMap> out;
    GeneratorMap f;
    std::function<void(std::size_t)> extend = [&](std::size_t i) {
        if (i == c.generators.size()) {
            if (!check_morphism_on_generators(c, d, f))
                out.push_back(f);
            return;
        }
        for (const auto& t : targets) {
            f[c.generators[i]] = t;
            extend(i + 1);
        }
    };
    extend(0);
    return out;
}

/// A chain relating the two query terms: the coalgebras in order, the
/// morphisms between neighbours, and the related element in each.
struct Chain {
    struct Link {
        GeneratorMap map;
        bool forward; // true: coalgebras[i] -> coalgebras[i+1]
    };
    std::vector<TermCoalgebra> coalgebras;
    std::vector<Link> links;
    std::vector<Term> elements;
};

/// Re-checks a chain: every link is a morphism and carries the elements.
inline std::optional<std::string> verify_chain(const Chain& chain) {
    if (chain.coalgebras.size() != chain.elements.size() ||
        chain.links.size() + 1 != chain.coalgebras.size())
        return "chain has inconsistent lengths";
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
        const auto& link = chain.links[i];
        const std::size_t from = link.forward ? i : i + 1;
        const std::size_t to = link.forward ? i + 1 : i;
        if (auto v = check_morphism_on_generators(chain.coalgebras[from], chain.coalgebras[to],
                                                  link.map))
            return "link " + std::to_string(i) + ": " + *v;
        if (!chain.coalgebras[to].same_term(apply_map(link.map, chain.elements[from]),
                                            chain.elements[to]))
            return "link " + std::to_string(i) + " does not carry its element";
    }
    return std::nullopt;
}

/// Free coalgebras on generators g0..g(k-1), k <= max_generators, with words of
/// length <= max_word and outputs <= max_output.
inline std::vector<TermCoalgebra> coalgebra_universe(const SearchBounds& bounds,
                                                     std::size_t max_output) {
    const auto words = unary_words(bounds.max_word);
    std::vector<TermCoalgebra> out;
    for (std::size_t k = 1; k <= bounds.max_generators; ++k) {
        std::vector<std::string> gens;
        for (std::size_t i = 0; i < k; ++i)
            gens.push_back("g" + std::to_string(i));
        std::vector<Step> steps;
        for (std::size_t o = 0; o <= max_output; ++o)
            for (const auto& w : words)
                for (const auto& g : gens)
                    steps.push_back(Step{static_cast<unsigned long>(o), w, g});
        std::vector<std::size_t> choice(k, 0);
        while (true) {
            TermCoalgebra c;
            c.generators = gens;
            for (std::size_t i = 0; i < k; ++i)
                c.structure[gens[i]] = steps[choice[i]];
            out.push_back(std::move(c));
            std::size_t i = 0;
            while (i < k && ++choice[i] == steps.size())
                choice[i++] = 0;
            if (i == k)
                break;
        }
    }
    return out;
}

struct SearchResult {
    std::optional<Chain> chain;
    std::size_t coalgebras_examined = 0;
};

/// Looks for a chain of at most bounds.max_chain (<= 2) morphisms relating
/// s in c and t in d, with middle coalgebras drawn from coalgebra_universe and
/// all generator images of word length <= bounds.max_word. Outputs in the
/// universe range up to the endpoints' largest output plus max_word, which
/// covers every coalgebra admitting a morphism to or from an endpoint.
inline SearchResult find_zigzag(const TermCoalgebra& c, const Term& s, const TermCoalgebra& d,
                                const Term& t, const SearchBounds& bounds) {
    if (bounds.max_chain > 2)
        throw precondition_error("zig-zag search supports chains of at most 2 arrows");
    c.require_term(s);
    d.require_term(t);
    SearchResult result;
    auto done = [&](Chain chain) {
        if (auto v = verify_chain(chain))
            throw invariant_violation("search produced an invalid chain: " + *v);
        result.chain = std::move(chain);
        return result;
    };

    if (c == d && c.same_term(s, t))
        return done(Chain{{c}, {}, {s}});
    if (bounds.max_chain == 0)
        return result;

    for (const auto& f : morphisms(c, d, bounds.max_word))
        if (d.same_term(apply_map(f, s), t))
            return done(Chain{{c, d}, {{f, true}}, {s, t}});
    for (const auto& g : morphisms(d, c, bounds.max_word))
        if (c.same_term(apply_map(g, t), s))
            return done(Chain{{c, d}, {{g, false}}, {s, t}});
    if (bounds.max_chain == 1)
        return result;

    mpz_class max_out = 0;
    for (const auto* e : {&c, &d})
        for (const auto& [_, step] : e->structure)
            max_out = std::max(max_out, step.out);
    auto middles = coalgebra_universe(bounds, max_out.get_ui() + bounds.max_word);
    middles.push_back(c);
    middles.push_back(d);

    for (const auto& m : middles) {
        ++result.coalgebras_examined;
        const auto from_c = morphisms(c, m, bounds.max_word);
        const auto from_d = morphisms(d, m, bounds.max_word);
        const auto to_c = morphisms(m, c, bounds.max_word);
        const auto to_d = morphisms(m, d, bounds.max_word);
        // c -> m <- d
        for (const auto& f : from_c)
            for (const auto& g : from_d) {
                auto x = apply_map(f, s);
                if (m.same_term(x, apply_map(g, t)))
                    return done(Chain{{c, m, d}, {{f, true}, {g, false}}, {s, x, t}});
            }
        // c -> m -> d
        for (const auto& f : from_c)
            for (const auto& g : to_d) {
                auto x = apply_map(f, s);
                if (d.same_term(apply_map(g, x), t))
                    return done(Chain{{c, m, d}, {{f, true}, {g, true}}, {s, x, t}});
            }
        // c <- m -> d and c <- m <- d: look for r in m with f(r) = s.
        for (const auto& f : to_c)
            for (const auto& gen : m.generators)
                for (std::size_t cut = 0; cut <= s.word.size(); ++cut) {
                    Term r{s.word.substr(0, cut), gen};
                    if (!c.same_term(apply_map(f, r), s))
                        continue;
                    for (const auto& g : to_d)
                        if (d.same_term(apply_map(g, r), t))
                            return done(Chain{{c, m, d}, {{f, false}, {g, true}}, {s, r, t}});
                    for (const auto& g : from_d)
                        if (m.same_term(apply_map(g, t), r))
                            return done(Chain{{c, m, d}, {{f, false}, {g, false}}, {s, r, t}});
                }
    }
    return result;
}

/// A random morphism f: source -> target between free coalgebras, plus a
/// random source term. The target is random; the source is grown from
/// generator images, each generator's step chosen so that the morphism
/// square holds by construction, then relabeled.
struct GeneratedMorphism {
    TermCoalgebra source;
    TermCoalgebra target;
    GeneratorMap map;
    Term term;
};

inline GeneratedMorphism random_morphism(std::mt19937_64& rng) {
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    auto random_word = [&](std::size_t max_len) {
        std::string w;
        for (std::size_t i = uniform(0, max_len); i > 0; --i)
            w += uniform(0, 1) ? 'u' : 'v';
        return w;
    };

    GeneratedMorphism g;
    const std::size_t k = uniform(1, 3);
    for (std::size_t i = 0; i < k; ++i)
        g.target.generators.push_back("y" + std::to_string(i));
    for (const auto& y : g.target.generators)
        g.target.structure[y] = Step{static_cast<unsigned long>(uniform(0, 3)), random_word(2),
                                     g.target.generators[uniform(0, k - 1)]};

    // Source generators are created on demand, one per distinct image term.
    std::map<Term, std::string> by_image;
    std::vector<Term> images;
    auto intern = [&](const Term& image) {
        auto [it, fresh] = by_image.emplace(image, "x" + std::to_string(images.size()));
        if (fresh)
            images.push_back(image);
        return it->second;
    };
    intern(Term{random_word(2), g.target.generators[uniform(0, k - 1)]});
    for (std::size_t i = 0; i < images.size(); ++i) {
        const Term image = images[i];
        auto [out, next] = g.target.step(image);
        const std::size_t suffix = uniform(0, std::min<std::size_t>(2, next.word.size()));
        const std::string prefix = next.word.substr(0, next.word.size() - suffix);
        const std::string to = intern(Term{next.word.substr(prefix.size()), next.generator});
        g.source.structure["x" + std::to_string(i)] = Step{out, prefix, to};
    }
    for (std::size_t i = 0; i < images.size(); ++i)
        g.source.generators.push_back("x" + std::to_string(i));

    // Relabel source generators by a random permutation.
    std::vector<std::string> names = g.source.generators;
    std::shuffle(names.begin(), names.end(), rng);
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < names.size(); ++i)
        rename[g.source.generators[i]] = names[i];
    TermCoalgebra relabeled;
    relabeled.generators = g.source.generators;
    for (const auto& [x, step] : g.source.structure)
        relabeled.structure[rename[x]] = Step{step.out, step.word, rename[step.to]};
    for (std::size_t i = 0; i < images.size(); ++i)
        g.map[rename["x" + std::to_string(i)]] = images[i];
    g.source = std::move(relabeled);

    g.term = Term{random_word(2), g.source.generators[uniform(0, g.source.generators.size() - 1)]};
    return g;
}

} // namespace wfa::lab

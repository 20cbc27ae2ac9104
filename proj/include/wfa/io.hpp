#pragma once

// JSON encodings of automata, witnesses, verdicts and term coalgebras.
// Serialization is canonical: object keys sorted, matrices row-major,
// values normalized, two-space indentation and a trailing newline, so
// serialize(parse(x)) == x for canonical inputs.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wfa/automaton.hpp"
#include "wfa/equivalence.hpp"
#include "wfa/lab.hpp"
#include "wfa/semiring.hpp"
#include "wfa/zigzag.hpp"

namespace wfa::io {

using json = nlohmann::json;

using AnyAutomaton = std::variant<WeightedAutomaton<Boolean>, WeightedAutomaton<Natural>,
                                  WeightedAutomaton<Integer>, WeightedAutomaton<Rational>,
                                  WeightedAutomaton<Tropical>>;
using AnyNondet = std::variant<NondetAutomaton<Boolean>, NondetAutomaton<Natural>,
                               NondetAutomaton<Integer>, NondetAutomaton<Rational>,
                               NondetAutomaton<Tropical>>;

inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw schema_error("cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw schema_error(e.what());
    }
}

namespace detail {

inline std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
inline std::string at(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object())
        throw schema_error(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw schema_error(at(path, key) + ": missing field");
    return *it;
}

inline const json& array(const json& j, const std::string& path) {
    if (!j.is_array())
        throw schema_error(path + ": expected an array");
    return j;
}

inline std::size_t natural(const json& j, const std::string& path) {
    if (!j.is_number_unsigned())
        throw schema_error(path + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

inline std::string string(const json& j, const std::string& path) {
    if (!j.is_string())
        throw schema_error(path + ": expected a string");
    return j.get<std::string>();
}

template <Semiring S>
typename S::value_type element(const json& j, const std::string& path) {
    auto text = string(j, path);
    auto v = S::parse(text);
    if (!v)
        throw schema_error(path + ": '" + text + "' is not an element of " + std::string(S::name));
    return *v;
}

template <Semiring S>
StateVector<S> vector(const json& j, const std::string& path, std::size_t n) {
    array(j, path);
    if (j.size() != n)
        throw schema_error(path + ": expected " + std::to_string(n) + " entries, got " +
                           std::to_string(j.size()));
    StateVector<S> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(element<S>(j[i], at(path, i)));
    return v;
}

template <Semiring S>
SMatrix<S> matrix(const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
    array(j, path);
    if (j.size() != rows)
        throw schema_error(path + ": expected " + std::to_string(rows) + " rows, got " +
                           std::to_string(j.size()));
    auto m = zero_matrix<S>(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        auto row = vector<S>(j[i], at(path, i), cols);
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = row[k];
    }
    return m;
}

inline Alphabet alphabet(const json& j, const std::string& path) {
    array(j, path);
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < j.size(); ++i)
        symbols.push_back(string(j[i], at(path, i)));
    try {
        return Alphabet(std::move(symbols));
    } catch (const alphabet_error& e) {
        throw schema_error(path + ": " + e.what());
    }
}

} // namespace detail

template <Semiring S>
json to_json(const StateVector<S>& v) {
    json j = json::array();
    for (const auto& x : v)
        j.push_back(S::format(x));
    return j;
}

template <Semiring S>
json to_json(const SMatrix<S>& m) {
    json j = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        j.push_back(to_json<S>(m.row_vector(i)));
    return j;
}

template <Semiring S>
json to_json(const WeightedAutomaton<S>& aut) {
    json j;
    j["semiring"] = std::string(S::name);
    j["alphabet"] = aut.alphabet().symbols();
    j["states"] = aut.states();
    j["output"] = to_json<S>(aut.output());
    j["transitions"] = json::object();
    for (std::size_t a = 0; a < aut.alphabet().size(); ++a)
        j["transitions"][aut.alphabet().symbol(a)] = to_json<S>(aut.transition(a));
    if (aut.initial())
        j["initial"] = to_json<S>(*aut.initial());
    return j;
}

inline json to_json(const AnyAutomaton& aut) {
    return std::visit([](const auto& a) { return to_json(a); }, aut);
}

template <Semiring S>
WeightedAutomaton<S> automaton_from_json(const json& j, const std::string& path = "$") {
    using namespace detail;
    auto alpha = alphabet(field(j, path, "alphabet"), at(path, "alphabet"));
    const std::size_t n = natural(field(j, path, "states"), at(path, "states"));
    auto output = vector<S>(field(j, path, "output"), at(path, "output"), n);
    const auto& tj = field(j, path, "transitions");
    const auto tpath = at(path, "transitions");
    if (!tj.is_object())
        throw schema_error(tpath + ": expected an object keyed by symbol");
    for (const auto& [key, _] : tj.items())
        if (std::find(alpha.symbols().begin(), alpha.symbols().end(), key) == alpha.symbols().end())
            throw schema_error(at(tpath, key) + ": symbol not in the alphabet");
    std::vector<SMatrix<S>> ts;
    for (const auto& symbol : alpha.symbols()) {
        auto it = tj.find(symbol);
        if (it == tj.end())
            throw schema_error(at(tpath, symbol) + ": missing transition matrix");
        ts.push_back(matrix<S>(*it, at(tpath, symbol), n, n));
    }
    std::optional<StateVector<S>> initial;
    if (auto it = j.find("initial"); it != j.end() && !it->is_null())
        initial = vector<S>(*it, at(path, "initial"), n);
    return WeightedAutomaton<S>(std::move(alpha), std::move(output), std::move(ts),
                                std::move(initial));
}

inline AnyAutomaton any_automaton_from_json(const json& j, const std::string& path = "$") {
    auto name = detail::string(detail::field(j, path, "semiring"), detail::at(path, "semiring"));
    return dispatch_semiring(name, [&](auto tag) -> AnyAutomaton {
        return automaton_from_json<decltype(tag)>(j, path);
    });
}

inline AnyAutomaton parse_automaton(const std::string& file) {
    try {
        return any_automaton_from_json(read_json_file(file));
    } catch (const schema_error& e) {
        throw schema_error(file + ": " + e.what());
    }
}

template <Semiring S>
json to_json(const NondetAutomaton<S>& nd) {
    json j;
    j["semiring"] = std::string(S::name);
    j["alphabet"] = nd.alphabet.symbols();
    j["states"] = nd.states();
    j["output"] = to_json<S>(nd.output);
    j["transitions"] = json::object();
    for (std::size_t a = 0; a < nd.alphabet.size(); ++a) {
        json per_state = json::array();
        for (std::size_t x = 0; x < nd.states(); ++x) {
            json edges = json::array();
            if (x < nd.next.size() && a < nd.next[x].size())
                for (const auto& e : nd.next[x][a])
                    edges.push_back({{"to", e.to}, {"weight", S::format(e.weight)}});
            per_state.push_back(std::move(edges));
        }
        j["transitions"][nd.alphabet.symbol(a)] = std::move(per_state);
    }
    if (nd.initial)
        j["initial"] = to_json<S>(*nd.initial);
    return j;
}

/// {"semiring", "alphabet", "states", "output", "transitions": {symbol:
/// [per state: [{"to": k, "weight": "w"}, ...]]}, "initial"?}
template <Semiring S>
NondetAutomaton<S> nondet_from_json(const json& j, const std::string& path = "$") {
    using namespace detail;
    NondetAutomaton<S> nd;
    nd.alphabet = alphabet(field(j, path, "alphabet"), at(path, "alphabet"));
    const std::size_t n = natural(field(j, path, "states"), at(path, "states"));
    nd.output = vector<S>(field(j, path, "output"), at(path, "output"), n);
    nd.next.assign(n, std::vector<std::vector<WeightedEdge<S>>>(nd.alphabet.size()));
    const auto& tj = field(j, path, "transitions");
    const auto tpath = at(path, "transitions");
    if (!tj.is_object())
        throw schema_error(tpath + ": expected an object keyed by symbol");
    for (const auto& [key, lists] : tj.items()) {
        const auto kpath = at(tpath, key);
        if (std::find(nd.alphabet.symbols().begin(), nd.alphabet.symbols().end(), key) ==
            nd.alphabet.symbols().end())
            throw schema_error(kpath + ": symbol not in the alphabet");
        const std::size_t a = nd.alphabet.index(key);
        array(lists, kpath);
        if (lists.size() != n)
            throw schema_error(kpath + ": expected " + std::to_string(n) + " successor lists, got " +
                               std::to_string(lists.size()));
        for (std::size_t x = 0; x < n; ++x) {
            const auto xpath = at(kpath, x);
            array(lists[x], xpath);
            for (std::size_t e = 0; e < lists[x].size(); ++e) {
                const auto epath = at(xpath, e);
                const std::size_t to = natural(field(lists[x][e], epath, "to"), at(epath, "to"));
                if (to >= n)
                    throw schema_error(at(epath, "to") + ": state " + std::to_string(to) +
                                       " out of range");
                nd.next[x][a].push_back(
                    {to, element<S>(field(lists[x][e], epath, "weight"), at(epath, "weight"))});
            }
        }
    }
    if (auto it = j.find("initial"); it != j.end() && !it->is_null())
        nd.initial = vector<S>(*it, at(path, "initial"), n);
    return nd;
}

inline AnyNondet parse_nondet(const std::string& file) {
    try {
        auto j = read_json_file(file);
        auto name = detail::string(detail::field(j, "$", "semiring"), "$.semiring");
        return dispatch_semiring(
            name, [&](auto tag) -> AnyNondet { return nondet_from_json<decltype(tag)>(j); });
    } catch (const schema_error& e) {
        throw schema_error(file + ": " + e.what());
    }
}

template <Semiring S>
json to_json(const TruncatedSeries<S>& series, const Alphabet& alphabet) {
    json entries = json::array();
    const auto words = series.words();
    for (std::size_t i = 0; i < words.size(); ++i)
        entries.push_back({{"word", alphabet.format(words[i])}, {"value", S::format(series.values()[i])}});
    return {{"depth", series.depth()}, {"series", std::move(entries)}};
}

template <Semiring S>
json to_json(const EquivalenceVerdict<S>& v, const Alphabet& alphabet) {
    json j;
    j["verdict"] = to_string(v.verdict);
    j["basis_size"] = v.basis_size;
    if (v.counterexample) {
        j["counterexample"] = alphabet.format(*v.counterexample);
        j["lhs"] = S::format(*v.lhs);
        j["rhs"] = S::format(*v.rhs);
    }
    if (v.verdict == Verdict::unsupported)
        j["missing_capability"] = v.missing_capability;
    return j;
}

inline json to_json(const ZigZagWitness& w) {
    json j;
    j["automata"] = json::array();
    for (const auto& a : w.automata)
        j["automata"].push_back(to_json(a));
    j["arrows"] = json::array();
    for (const auto& arrow : w.arrows)
        j["arrows"].push_back(
            {{"from", arrow.from}, {"to", arrow.to}, {"matrix", to_json<Rational>(arrow.matrix)}});
    j["elements"] = json::array();
    for (const auto& e : w.elements)
        j["elements"].push_back(to_json<Rational>(e));
    return j;
}

/// Structural decoding only; mathematical validity is verify_zigzag's job.
inline ZigZagWitness witness_from_json(const json& j, const std::string& path = "$") {
    using namespace detail;
    ZigZagWitness w;
    const auto& automata = array(field(j, path, "automata"), at(path, "automata"));
    for (std::size_t i = 0; i < automata.size(); ++i) {
        const auto apath = at(at(path, "automata"), i);
        auto name = string(field(automata[i], apath, "semiring"), at(apath, "semiring"));
        if (name != Rational::name)
            throw schema_error(at(apath, "semiring") + ": witnesses are over Q");
        w.automata.push_back(automaton_from_json<Rational>(automata[i], apath));
    }
    const auto& arrows = array(field(j, path, "arrows"), at(path, "arrows"));
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const auto apath = at(at(path, "arrows"), i);
        const std::size_t from = natural(field(arrows[i], apath, "from"), at(apath, "from"));
        const std::size_t to = natural(field(arrows[i], apath, "to"), at(apath, "to"));
        if (from >= w.automata.size() || to >= w.automata.size())
            throw schema_error(apath + ": arrow endpoint out of range");
        w.arrows.push_back({from, to,
                            matrix<Rational>(field(arrows[i], apath, "matrix"), at(apath, "matrix"),
                                             w.automata[from].states(), w.automata[to].states())});
    }
    const auto& elements = array(field(j, path, "elements"), at(path, "elements"));
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const auto epath = at(at(path, "elements"), i);
        const std::size_t n = i < w.automata.size() ? w.automata[i].states() : elements[i].size();
        w.elements.push_back(vector<Rational>(elements[i], epath, n));
    }
    return w;
}

inline ZigZagWitness parse_witness(const std::string& file) {
    try {
        return witness_from_json(read_json_file(file));
    } catch (const schema_error& e) {
        throw schema_error(file + ": " + e.what());
    }
}

inline json to_json(const lab::TermCoalgebra& c) {
    json j;
    j["generators"] = c.generators;
    j["structure"] = json::object();
    for (const auto& [g, step] : c.structure) {
        json s{{"word", step.word}, {"to", step.to}};
        if (step.out.fits_ulong_p())
            s["out"] = step.out.get_ui();
        else
            s["out"] = step.out.get_str();
        j["structure"][g] = std::move(s);
    }
    if (c.identify_uv)
        j["identify_uv"] = true;
    return j;
}

/// {"generators": [...], "structure": {g: {"out": n, "word": "u", "to": g'}},
///  "identify_uv"?: bool}
inline lab::TermCoalgebra term_coalgebra_from_json(const json& j, const std::string& path = "$") {
    using namespace detail;
    lab::TermCoalgebra c;
    const auto& gens = array(field(j, path, "generators"), at(path, "generators"));
    for (std::size_t i = 0; i < gens.size(); ++i)
        c.generators.push_back(string(gens[i], at(at(path, "generators"), i)));
    const auto& structure = field(j, path, "structure");
    const auto spath = at(path, "structure");
    if (!structure.is_object())
        throw schema_error(spath + ": expected an object keyed by generator");
    for (const auto& [g, s] : structure.items()) {
        const auto gpath = at(spath, g);
        lab::Step step;
        const auto& out = field(s, gpath, "out");
        if (out.is_number_unsigned()) {
            step.out = static_cast<unsigned long>(out.get<std::uint64_t>());
        } else if (auto n = out.is_string() ? Natural::parse(out.get<std::string>()) : std::nullopt) {
            step.out = *n;
        } else {
            throw schema_error(at(gpath, "out") + ": expected a natural number");
        }
        step.word = string(field(s, gpath, "word"), at(gpath, "word"));
        step.to = string(field(s, gpath, "to"), at(gpath, "to"));
        c.structure[g] = std::move(step);
    }
    if (auto it = j.find("identify_uv"); it != j.end()) {
        if (!it->is_boolean())
            throw schema_error(at(path, "identify_uv") + ": expected a boolean");
        c.identify_uv = it->get<bool>();
    }
    try {
        c.validate();
    } catch (const schema_error& e) {
        throw schema_error(path + "." + e.what());
    }
    return c;
}

inline lab::TermCoalgebra parse_term_coalgebra(const std::string& file) {
    try {
        return term_coalgebra_from_json(read_json_file(file));
    } catch (const schema_error& e) {
        throw schema_error(file + ": " + e.what());
    }
}

template <Semiring S>
json to_json(const ExplicitDfa<S>& dfa) {
    json j;
    j["semiring"] = std::string(S::name);
    j["alphabet"] = dfa.alphabet.symbols();
    j["states"] = dfa.size();
    j["output"] = to_json<S>(dfa.output);
    j["vectors"] = json::array();
    for (const auto& v : dfa.states)
        j["vectors"].push_back(to_json<S>(v));
    j["transitions"] = json::object();
    for (std::size_t a = 0; a < dfa.alphabet.size(); ++a) {
        json column = json::array();
        for (std::size_t s = 0; s < dfa.size(); ++s)
            column.push_back(dfa.next[s][a]);
        j["transitions"][dfa.alphabet.symbol(a)] = std::move(column);
    }
    return j;
}

/// A bare matrix, or an object with a "matrix" field.
template <Semiring S>
SMatrix<S> matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                            const std::string& path = "$") {
    if (j.is_object())
        return detail::matrix<S>(detail::field(j, path, "matrix"), detail::at(path, "matrix"), rows,
                                 cols);
    return detail::matrix<S>(j, path, rows, cols);
}

/// "1/1,0/1" -> vector over S.
template <Semiring S>
StateVector<S> parse_vector(std::string_view text, std::size_t n) {
    StateVector<S> v;
    if (!text.empty()) {
        std::size_t start = 0;
        while (true) {
            auto comma = text.find(',', start);
            auto item = text.substr(start, comma - start);
            auto x = S::parse(item);
            if (!x)
                throw schema_error("start vector entry '" + std::string(item) +
                                   "' is not an element of " + std::string(S::name));
            v.push_back(*x);
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
    }
    if (v.size() != n)
        throw shape_error("start vector has " + std::to_string(v.size()) + " entries, expected " +
                          std::to_string(n));
    return v;
}

} // namespace wfa::io

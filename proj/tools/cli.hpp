#pragma once

// wfa command-line front end. run() is the whole program; main() only
// forwards argv, so tests drive it in-process.
//
// Exit codes: 0 success / pass / equivalent, 1 inequivalent / fail,
// 2 usage, parse and unsupported-semiring errors.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfa/automaton.hpp"
#include "wfa/bloom.hpp"
#include "wfa/equivalence.hpp"
#include "wfa/io.hpp"
#include "wfa/lab.hpp"
#include "wfa/zigzag.hpp"

namespace wfa::cli {

using io::json;

enum Exit : int { ok = 0, negative = 1, failure = 2 };

struct Options {
    std::string format = "json";
    std::size_t depth = 5;
    std::string word;
    std::string start, start2;
    std::optional<std::uint64_t> seed;
    std::size_t samples = 20;
    std::vector<std::string> inputs;
    // lab
    std::string fixture, against, against_fixture, term, term2;
    std::size_t max_generators = 2, max_word = 2, max_chain = 2;
};

namespace detail {

inline std::uint64_t seed(const Options& o) {
    if (o.seed)
        return *o.seed;
    if (const char* env = std::getenv("SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw schema_error(std::string("SEED='") + env + "' is not a non-negative integer");
        }
    }
    return 0;
}

template <Semiring S>
StateVector<S> start_vector(const WeightedAutomaton<S>& aut, const std::string& text,
                            const char* flag) {
    if (!text.empty())
        return io::parse_vector<S>(text, aut.states());
    if (aut.initial())
        return *aut.initial();
    throw schema_error(std::string("no start vector: pass ") + flag +
                       " or give the automaton an \"initial\" vector");
}

inline void need_inputs(const Options& o, std::size_t n, const char* usage) {
    if (o.inputs.size() != n)
        throw schema_error(std::string("expected ") + std::to_string(n) + " input file(s): " + usage);
}

/// Calls f(a1, a2) when both automata share a semiring.
template <class F>
int with_pair(const io::AnyAutomaton& x, const io::AnyAutomaton& y, F&& f) {
    return std::visit(
        [&](const auto& a1, const auto& a2) -> int {
            using A1 = std::decay_t<decltype(a1)>;
            using A2 = std::decay_t<decltype(a2)>;
            if constexpr (std::is_same_v<A1, A2>) {
                return f(a1, a2);
            } else {
                throw schema_error("automata are over different semirings");
            }
        },
        x, y);
}

template <Semiring S>
S semiring_of(const WeightedAutomaton<S>&) {
    return {};
}

inline lab::TermCoalgebra fixture(const std::string& name) {
    if (name == "a")
        return lab::fixture_a();
    if (name == "b")
        return lab::fixture_b();
    if (name == "p")
        return lab::fixture_p();
    if (name == "identity-a")
        return lab::fixture_identity_a();
    if (name == "identity-b")
        return lab::fixture_identity_b();
    throw schema_error("unknown fixture '" + name + "' (expected a, b, p, identity-a, identity-b)");
}

inline void print(std::ostream& out, const json& j) { out << io::canonical(j); }

inline std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? " " : "") + xs[i];
    return s;
}

} // namespace detail

inline int behavior_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 1, "behavior AUTOMATON --word W");
    return std::visit(
        [&](const auto& aut) {
            using S = decltype(detail::semiring_of(aut));
            auto v = detail::start_vector(aut, o.start, "--start");
            auto value = S::format(behavior(aut, v, aut.alphabet().parse(o.word)));
            if (o.format == "text")
                out << value << "\n";
            else
                detail::print(out, {{"word", o.word}, {"value", value}});
            return ok;
        },
        io::parse_automaton(o.inputs[0]));
}

inline int series_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 1, "series AUTOMATON --depth N");
    return std::visit(
        [&](const auto& aut) {
            using S = decltype(detail::semiring_of(aut));
            auto v = detail::start_vector(aut, o.start, "--start");
            auto series = truncated_behavior(aut, v, o.depth);
            if (o.format == "text") {
                for (const auto& w : series.words()) {
                    auto name = aut.alphabet().format(w);
                    out << (name.empty() ? "ε" : name) << " " << S::format(series.at(w)) << "\n";
                }
            } else {
                detail::print(out, io::to_json(series, aut.alphabet()));
            }
            return ok;
        },
        io::parse_automaton(o.inputs[0]));
}

inline int equiv_cmd(const Options& o, std::ostream& out, std::ostream& err) {
    detail::need_inputs(o, 2, "equiv AUTOMATON1 AUTOMATON2");
    return detail::with_pair(
        io::parse_automaton(o.inputs[0]), io::parse_automaton(o.inputs[1]),
        [&](const auto& a1, const auto& a2) -> int {
            using S = decltype(detail::semiring_of(a1));
            auto v1 = detail::start_vector(a1, o.start, "--start");
            auto v2 = detail::start_vector(a2, o.start2, "--start2");
            auto verdict = decide_equivalence(a1, v1, a2, v2);
            if (verdict.verdict == Verdict::unsupported) {
                err << "error: equivalence is not decidable over " << S::name
                    << ": semiring lacks capability " << verdict.missing_capability << "\n";
                return failure;
            }
            if (o.format == "text") {
                out << to_string(verdict.verdict);
                if (verdict.counterexample)
                    out << " on '" << a1.alphabet().format(*verdict.counterexample) << "' ("
                        << S::format(*verdict.lhs) << " vs " << S::format(*verdict.rhs) << ")";
                out << "\n";
            } else {
                detail::print(out, io::to_json(verdict, a1.alphabet()));
            }
            return verdict.verdict == Verdict::equivalent ? ok : negative;
        });
}

inline int witness_cmd(const Options& o, std::ostream& out, std::ostream& err) {
    detail::need_inputs(o, 2, "witness AUTOMATON1 AUTOMATON2");
    return detail::with_pair(
        io::parse_automaton(o.inputs[0]), io::parse_automaton(o.inputs[1]),
        [&](const auto& a1, const auto& a2) -> int {
            using S = decltype(detail::semiring_of(a1));
            if constexpr (!S::capabilities.supports_witness_construction) {
                throw unsupported_semiring(std::string(S::name), "supports_witness_construction");
            } else {
                auto v1 = detail::start_vector(a1, o.start, "--start");
                auto v2 = detail::start_vector(a2, o.start2, "--start2");
                auto verdict = decide_equivalence(a1, v1, a2, v2);
                if (verdict.verdict != Verdict::equivalent) {
                    err << "no witness: states differ on '"
                        << a1.alphabet().format(*verdict.counterexample) << "' ("
                        << S::format(*verdict.lhs) << " vs " << S::format(*verdict.rhs) << ")\n";
                    return negative;
                }
                detail::print(out, io::to_json(construct_zigzag(a1, v1, a2, v2)));
                return ok;
            }
        });
}

inline int verify_witness_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 1, "verify-witness WITNESS");
    auto w = io::parse_witness(o.inputs[0]);
    auto failure_reason = verify_zigzag(w);
    if (o.format == "text") {
        out << (failure_reason ? "fail: " + *failure_reason : std::string("pass")) << "\n";
    } else {
        json j{{"valid", !failure_reason}};
        if (failure_reason)
            j["reason"] = *failure_reason;
        detail::print(out, j);
    }
    return failure_reason ? negative : ok;
}

inline int simulate_check_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 3, "simulate-check SOURCE TARGET MATRIX");
    auto matrix_json = io::read_json_file(o.inputs[2]);
    return detail::with_pair(
        io::parse_automaton(o.inputs[0]), io::parse_automaton(o.inputs[1]),
        [&](const auto& src, const auto& tgt) -> int {
            using S = decltype(detail::semiring_of(src));
            SMatrix<S> h;
            try {
                h = io::matrix_from_json<S>(matrix_json, src.states(), tgt.states());
            } catch (const schema_error& e) {
                throw schema_error(o.inputs[2] + ": " + e.what());
            }
            auto report = check_simulation(src, tgt, h);
            if (o.format == "text") {
                if (report.empty())
                    out << "pass\n";
                for (const auto& v : report)
                    out << "fail: " << v.describe() << "\n";
            } else {
                json violations = json::array();
                for (const auto& v : report)
                    violations.push_back(v.describe());
                detail::print(out, {{"simulation", report.empty()}, {"violations", violations}});
            }
            return report.empty() ? ok : negative;
        });
}

inline int determinize_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 1, "determinize NONDET");
    return std::visit(
        [&](const auto& nd) {
            detail::print(out, io::to_json(determinize(nd)));
            return ok;
        },
        io::parse_nondet(o.inputs[0]));
}

inline int concretize_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 1, "concretize AUTOMATON");
    return std::visit(
        [&](const auto& aut) {
            auto v = detail::start_vector(aut, o.start, "--start");
            detail::print(out, io::to_json(concretize_locally_finite(aut, v)));
            return ok;
        },
        io::parse_automaton(o.inputs[0]));
}

inline int coproduct_cmd(const Options& o, std::ostream& out) {
    detail::need_inputs(o, 2, "coproduct AUTOMATON1 AUTOMATON2");
    return detail::with_pair(io::parse_automaton(o.inputs[0]), io::parse_automaton(o.inputs[1]),
                             [&](const auto& a1, const auto& a2) {
                                 detail::print(out, io::to_json(coproduct(a1, a2).automaton));
                                 return ok;
                             });
}

/// Solution axiom on the automaton; functoriality along its identity and
/// both coproduct injections into A + A; with a second automaton over an
/// embeddable semiring, initial factorization through the witness.
inline int bloom_check_cmd(const Options& o, std::ostream& out) {
    if (o.inputs.empty() || o.inputs.size() > 2)
        throw schema_error("expected 1 or 2 input files: bloom-check AUTOMATON [AUTOMATON2]");
    const auto seed = detail::seed(o);
    auto run_checks = [&](const auto& aut) -> std::vector<BloomReport> {
        using S = decltype(detail::semiring_of(aut));
        SeriesInstance<S> inst;
        std::vector<BloomReport> reports;
        reports.push_back(check_solution_axiom(inst, aut, o.depth, o.samples, seed));
        reports.push_back(
            check_functoriality_axiom(inst, identity_simulation(aut), o.depth, o.samples, seed));
        auto sum = coproduct(aut, aut);
        reports.push_back(check_functoriality_axiom(inst, sum.left, o.depth, o.samples, seed));
        reports.push_back(check_functoriality_axiom(inst, sum.right, o.depth, o.samples, seed));
        return reports;
    };
    std::vector<BloomReport> reports;
    if (o.inputs.size() == 1) {
        reports = std::visit(run_checks, io::parse_automaton(o.inputs[0]));
    } else {
        detail::with_pair(
            io::parse_automaton(o.inputs[0]), io::parse_automaton(o.inputs[1]),
            [&](const auto& a1, const auto& a2) -> int {
                using S = decltype(detail::semiring_of(a1));
                reports = run_checks(a1);
                if constexpr (!S::capabilities.supports_witness_construction) {
                    throw unsupported_semiring(std::string(S::name),
                                               "supports_witness_construction");
                } else {
                    reports.push_back(check_initial_factorization(
                        SeriesInstance<Rational>{}, a1,
                        detail::start_vector(a1, o.start, "--start"), a2,
                        detail::start_vector(a2, o.start2, "--start2"), o.depth));
                }
                return ok;
            });
    }
    bool pass = true;
    for (const auto& r : reports) {
        for (const auto& line : r.lines)
            out << line << "\n";
        if (r.skipped)
            out << "skipped: " << r.note << "\n";
        pass = pass && r.ok();
    }
    out << (pass ? "pass" : "fail") << " seed=" << seed << "\n";
    return pass ? ok : negative;
}

inline int lab_cmd(const Options& o, std::ostream& out) {
    if (o.inputs.size() > 1 || (o.inputs.size() == 1) == !o.fixture.empty())
        throw schema_error("lab needs exactly one of COALGEBRA or --fixture NAME");
    auto c = o.inputs.empty() ? detail::fixture(o.fixture) : io::parse_term_coalgebra(o.inputs[0]);
    auto t = o.term.empty() ? lab::Term{"", c.generators.at(0)} : lab::parse_term(o.term);

    json j;
    j["term"] = lab::format_term(t);
    json stream = json::array();
    for (const auto& x : lab::term_behavior(c, t, o.depth))
        stream.push_back(x.get_str());
    j["stream"] = stream;
    if (!c.identify_uv)
        j["u_bounded"] = lab::format_ubound(lab::u_bounded(c, t));
    j["reaches_finitely_many"] = lab::reaches_finitely_many(c, t);

    const bool search = !o.against.empty() || !o.against_fixture.empty();
    if (search) {
        if (!o.against.empty() && !o.against_fixture.empty())
            throw schema_error("give at most one of --against and --against-fixture");
        auto d = o.against.empty() ? detail::fixture(o.against_fixture)
                                   : io::parse_term_coalgebra(o.against);
        auto s = o.term2.empty() ? lab::Term{"", d.generators.at(0)} : lab::parse_term(o.term2);
        lab::SearchBounds bounds{o.max_generators, o.max_word, o.max_chain};
        auto result = lab::find_zigzag(c, t, d, s, bounds);
        json sj;
        sj["bounds"] = {{"max_generators", bounds.max_generators},
                        {"max_word", bounds.max_word},
                        {"max_chain", bounds.max_chain}};
        sj["other"] = lab::format_term(s);
        sj["coalgebras_examined"] = result.coalgebras_examined;
        sj["found"] = result.chain.has_value();
        if (result.chain) {
            json elements = json::array();
            for (const auto& e : result.chain->elements)
                elements.push_back(lab::format_term(e));
            sj["chain"] = elements;
        }
        j["search"] = sj;
    }

    if (o.format == "text") {
        std::vector<std::string> values;
        for (const auto& x : j["stream"])
            values.push_back(x.get<std::string>());
        out << "stream " << j["term"].get<std::string>() << ": " << detail::join(values) << " ...\n";
        if (j.contains("u_bounded"))
            out << "u-count: " << j["u_bounded"].get<std::string>() << "\n";
        out << "reaches finitely many states: "
            << (j["reaches_finitely_many"].get<bool>() ? "yes" : "no") << "\n";
        if (search) {
            const auto& sj = j["search"];
            out << "zig-zag search (generators <= " << o.max_generators << ", words <= "
                << o.max_word << ", chain <= " << o.max_chain << ", "
                << sj["coalgebras_examined"].get<std::size_t>() << " coalgebras): "
                << (sj["found"].get<bool>() ? "found" : "none found") << "\n";
            if (!sj["found"].get<bool>())
                out << "(bounded search: evidence within these bounds, not a proof of nonexistence)\n";
        }
    } else {
        detail::print(out, j);
    }
    return ok;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted automata: behavior, equivalence, simulation witnesses", "wfa"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", o.seed, "Random seed (default: $SEED, else 0)");
    };
    auto add_start = [&](CLI::App* sub, bool two) {
        sub->add_option("--start", o.start, "Start vector, e.g. \"1/1,0/1\"");
        if (two)
            sub->add_option("--start2", o.start2, "Start vector for the second automaton");
    };

    auto* behavior = app.add_subcommand("behavior", "Weight of one word");
    behavior->add_option("automaton", o.inputs)->required()->expected(1);
    behavior->add_option("--word", o.word, "Word (\"\" for the empty word)");
    add_start(behavior, false);
    add_common(behavior);

    auto* series = app.add_subcommand("series", "Behavior on all words up to a depth");
    series->add_option("automaton", o.inputs)->required()->expected(1);
    add_start(series, false);
    add_common(series);

    auto* equiv = app.add_subcommand("equiv", "Decide language equivalence");
    equiv->add_option("automata", o.inputs)->required()->expected(2);
    add_start(equiv, true);
    add_common(equiv);

    auto* witness = app.add_subcommand("witness", "Build a zig-zag witness of equivalence");
    witness->add_option("automata", o.inputs)->required()->expected(2);
    add_start(witness, true);
    add_common(witness);

    auto* verify = app.add_subcommand("verify-witness", "Check a zig-zag witness file");
    verify->add_option("witness", o.inputs)->required()->expected(1);
    add_common(verify);

    auto* simulate = app.add_subcommand("simulate-check", "Check that a matrix is a simulation");
    simulate->add_option("files", o.inputs, "SOURCE TARGET MATRIX")->required()->expected(3);
    add_common(simulate);

    auto* determinize = app.add_subcommand("determinize", "Nondeterministic -> matrix automaton");
    determinize->add_option("nondet", o.inputs)->required()->expected(1);
    add_common(determinize);

    auto* concretize = app.add_subcommand("concretize", "Explicit DFA over a locally finite semiring");
    concretize->add_option("automaton", o.inputs)->required()->expected(1);
    add_start(concretize, false);
    add_common(concretize);

    auto* coproduct = app.add_subcommand("coproduct", "Disjoint sum of two automata");
    coproduct->add_option("automata", o.inputs)->required()->expected(2);
    add_common(coproduct);

    auto* bloom = app.add_subcommand("bloom-check", "Check the solution and functoriality axioms");
    bloom->add_option("automata", o.inputs)->required()->expected(1, 2);
    bloom->add_option("--samples", o.samples, "Random vectors per check")->capture_default_str();
    add_start(bloom, true);
    add_common(bloom);

    auto* lab = app.add_subcommand("lab", "Term coalgebras over two unary operations");
    lab->add_option("coalgebra", o.inputs)->expected(0, 1);
    lab->add_option("--fixture", o.fixture, "Built-in coalgebra: a, b, p, identity-a, identity-b");
    lab->add_option("--term", o.term, "Term, e.g. u(x) (default: first generator)");
    lab->add_option("--against", o.against, "Second coalgebra for the zig-zag search");
    lab->add_option("--against-fixture", o.against_fixture, "Built-in second coalgebra");
    lab->add_option("--term2", o.term2, "Term in the second coalgebra");
    lab->add_option("--max-generators", o.max_generators)->capture_default_str();
    lab->add_option("--max-word", o.max_word)->capture_default_str();
    lab->add_option("--max-chain", o.max_chain)->capture_default_str();
    add_common(lab);

    // Depth defaults differ per command, so read it after parsing.
    std::optional<std::size_t> depth;
    for (auto* sub : {series, bloom, lab})
        sub->add_option("--depth", depth, "Depth / prefix length (series 5, bloom-check 8, lab 5)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return failure;
    }
    o.depth = depth.value_or(bloom->parsed() ? 8 : 5);

    try {
        if (behavior->parsed())
            return behavior_cmd(o, out);
        if (series->parsed())
            return series_cmd(o, out);
        if (equiv->parsed())
            return equiv_cmd(o, out, err);
        if (witness->parsed())
            return witness_cmd(o, out, err);
        if (verify->parsed())
            return verify_witness_cmd(o, out);
        if (simulate->parsed())
            return simulate_check_cmd(o, out);
        if (determinize->parsed())
            return determinize_cmd(o, out);
        if (concretize->parsed())
            return concretize_cmd(o, out);
        if (coproduct->parsed())
            return coproduct_cmd(o, out);
        if (bloom->parsed())
            return bloom_check_cmd(o, out);
        if (lab->parsed())
            return lab_cmd(o, out);
    } catch (const unsupported_semiring& e) {
        err << "unsupported: " << e.what() << "\n";
        return failure;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    }
    err << "usage error: no subcommand\n";
    return failure;
}

} // namespace wfa::cli

#pragma once

// The scoh command line. Every report has a human section, a "---" line, and
// a machine section of key=value lines with stable keys and no timestamps.
//
// Exit codes: 0 success, 1 bound violation / example mismatch, 2 usage or
// input error, 3 classification Unknown.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scoh/classify.hpp"
#include "scoh/descriptor_io.hpp"
#include "scoh/finabel.hpp"
#include "scoh/oracle.hpp"
#include "scoh/reference.hpp"
#include "scoh/spgroup.hpp"

namespace scoh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnknown = 3;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline GroupDescriptor load_descriptor(const std::string& path) {
    auto text = read_file(path);
    try {
        return parse_descriptor(text);
    } catch (const ParseError& e) {
        throw Error(path + ":" + e.what());
    }
}

inline void print_verdict_tree(std::ostream& out, const Verdict& v, int depth) {
    std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
    if (v.answer == Answer::Unknown) {
        out << pad << "Unknown: " << v.reason << "\n";
        return;
    }
    for (const auto& app : v.certificate) {
        for (const auto& p : app.premises) print_verdict_tree(out, p, depth + 1);
        out << pad << app.rule << " -> " << to_string(app.conclusion);
        if (!app.facts.empty()) {
            out << " (";
            for (std::size_t i = 0; i < app.facts.size(); ++i) {
                out << (i ? ", " : "") << app.facts[i].first << "=" << app.facts[i].second;
            }
            out << ")";
        }
        out << "\n";
    }
}

struct Classification {
    Verdict group;
    Verdict torsion;
    Verdict quotient;
    Verdict uniform;
    std::string bound;

    Answer get(const std::string& key) const {
        if (key == "group") return group.answer;
        if (key == "torsion") return torsion.answer;
        if (key == "quotient") return quotient.answer;
        return uniform.answer;
    }
};

inline Classification classify_all(const GroupDescriptor& d) {
    Classification c{group_is_scoh(d), torsion_verdict(d), quotient_verdict(d), is_uniformly_scoh_desc(d), "n/a"};
    if (c.uniform.answer == Answer::Yes) {
        auto b = scoh_bound(d);
        c.bound = b ? std::to_string(*b) : "none";
    }
    return c;
}

inline void print_classification(std::ostream& out, const Classification& c) {
    out << "  group      " << to_string(c.group.answer) << "\n"
        << "  torsion    " << to_string(c.torsion.answer) << "\n"
        << "  quotient   " << to_string(c.quotient.answer) << "\n"
        << "  uniform    " << to_string(c.uniform.answer) << "\n"
        << "  bound      " << c.bound << "\n"
        << "certificate:\n";
    print_verdict_tree(out, c.group, 0);
}

inline void print_machine(std::ostream& out, const Classification& c) {
    out << "verdict.group=" << to_string(c.group.answer) << "\n"
        << "verdict.torsion=" << to_string(c.torsion.answer) << "\n"
        << "verdict.quotient=" << to_string(c.quotient.answer) << "\n"
        << "verdict.uniform=" << to_string(c.uniform.answer) << "\n"
        << "bound=" << c.bound << "\n";
    if (c.group.answer == Answer::Unknown) out << "reason=" << c.group.reason << "\n";
    std::vector<std::string> rules;
    flatten_rules(c.group, rules);
    for (std::size_t i = 0; i < rules.size(); ++i) out << "rule." << i + 1 << "=" << rules[i] << "\n";
}

inline int cmd_classify(const std::string& file, std::ostream& out) {
    auto d = load_descriptor(file);
    auto c = classify_all(d);
    out << "classify: " << print_descriptor(d) << "\n";
    print_classification(out, c);
    out << "---\n";
    print_machine(out, c);
    return c.group.answer == Answer::Unknown ? kExitUnknown : kExitOk;
}

inline int cmd_chain(const std::string& file, const std::string& matrix, std::ostream& out) {
    auto d = load_descriptor(file);
    auto t = d.as<TorsionShape>();
    if (!t || !t->t.is_finite()) throw Error(file + ": chain needs a finite torsion descriptor (tail=zero)");
    auto g = t->t.as_finite_group();
    IntMatrix m;
    try {
        m = parse_matrix(matrix);
    } catch (const ParseError& e) {
        throw Error("--matrix: " + std::string(e.what()));
    }
    auto f = validate_hom(m, g, g);
    auto chain = image_chain(f);
    std::string cards;
    for (std::size_t i = 0; i < chain.size(); ++i) cards += (i ? "," : "") + chain[i].cardinality().str();
    const std::size_t stab = chain.size() - 2;
    out << "group: " << g.to_string() << "\n"
        << "map:   " << f.to_string() << "\n"
        << "image cardinalities, n = 0.." << chain.size() - 1 << ": " << cards << "\n"
        << "stabilization index: " << stab << "\n"
        << "---\n"
        << "group=" << g.to_string() << "\n"
        << "chain=" << cards << "\n"
        << "stab=" << stab << "\n";
    return kExitOk;
}

inline int cmd_spstab(const std::string& file, const std::string& alpha_text, std::ostream& out) {
    auto d = load_descriptor(file);
    auto e = d.as<ERingShape>();
    if (!e) throw Error(file + ": spstab needs a spring descriptor");
    SpElement alpha;
    try {
        alpha = parse_sp_element(alpha_text, e->spec);
    } catch (const ParseError& err) {
        throw Error("--alpha: " + std::string(err.what()));
    }
    auto r = stab_index_mul(alpha, e->spec);
    auto val = [](const Valuation& v) { return v ? std::to_string(*v) : std::string("inf"); };
    out << "group: " << print_descriptor(d) << "\n"
        << "alpha: " << to_string(alpha) << "\n"
        << "case:  " << to_string(r.case_tag) << "\n";
    for (const auto& [i, s] : r.per_prime) {
        out << "  i=" << i << " p=" << e->spec.prime(i) << " e=" << e->spec.exponent(i) << " v=" << val(s.valuation)
            << " step=" << s.step << "\n";
    }
    out << "  other components: step " << (r.case_tag == StabReport::Case::TorsionImage ? 1 : 0) << "\n"
        << "stabilization index: " << r.index << "\n"
        << "---\n"
        << "case=" << to_string(r.case_tag) << "\n"
        << "index=" << r.index << "\n";
    for (const auto& [i, s] : r.per_prime) {
        out << "component." << i << "=p:" << e->spec.prime(i) << ",e:" << e->spec.exponent(i) << ",v:" << val(s.valuation)
            << ",step:" << s.step << "\n";
    }
    return kExitOk;
}

inline int cmd_oracle(std::uint64_t max_card, const std::vector<std::uint64_t>& primes, unsigned workers,
                      std::uint64_t cap, std::ostream& out) {
    std::vector<FinAbGroup> groups;
    for (auto p : primes) {
        auto gs = p_groups_up_to(p, max_card);
        groups.insert(groups.end(), gs.begin(), gs.end());
    }
    auto s = sweep(groups, cap, workers);
    out << format_report(s) << "---\n"
        << "groups=" << s.results.size() << "\n"
        << "failures=" << s.failures.size() << "\n"
        << "violations=" << s.violations << "\n"
        << "max_ratio=" << s.max_ratio.str() << "\n";
    return s.ok() ? kExitOk : kExitViolation;
}

inline int cmd_example(const std::string& id_text, std::ostream& out, std::ostream& err) {
    auto id = parse_example_id(id_text);
    if (!id) {
        err << "unknown example '" << id_text << "' (expected ex0, ex1 or ex3)\n";
        return kExitUsage;
    }
    auto d = build_example(*id);
    auto c = classify_all(d);
    bool all = true;
    std::ostringstream table, machine;
    for (const auto& ex : expected_verdicts(*id)) {
        Answer got = c.get(ex.key);
        bool ok = got == ex.answer;
        all = all && ok;
        table << "  " << ex.key << std::string(11 - ex.key.size(), ' ') << to_string(ex.answer)
              << std::string(10 - to_string(ex.answer).size(), ' ') << to_string(got)
              << std::string(10 - to_string(got).size(), ' ') << (ok ? "yes" : "NO") << "\n";
        machine << "expected." << ex.key << "=" << to_string(ex.answer) << "\n";
    }
    out << "example " << to_string(*id) << ": " << print_descriptor(d) << "\n"
        << "  verdict    expected  computed  match\n"
        << table.str() << "all verdicts:\n";
    print_classification(out, c);
    out << "---\n";
    print_machine(out, c);
    out << machine.str() << "match=" << (all ? "all" : "mismatch") << "\n";
    return all ? kExitOk : kExitViolation;
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Strong co-Hopficity toolkit", "scoh"};
    app.require_subcommand(1);

    std::string file, matrix, alpha, example_id;
    std::uint64_t max_card = 32;
    std::vector<std::uint64_t> primes{2};
    unsigned workers = 1;
    std::uint64_t cap = kDefaultEndomorphismCap;

    auto* classify = app.add_subcommand("classify", "classify a group descriptor");
    classify->add_option("file", file, "descriptor file")->required();

    auto* chain = app.add_subcommand("chain", "image chain of an endomorphism of a finite group");
    chain->add_option("file", file, "finite torsion descriptor")->required();
    chain->add_option("--matrix", matrix, "matrix such as [[2,1],[0,0]]")->required();

    auto* spstab = app.add_subcommand("spstab", "stabilization index of a multiplication on a spring group");
    spstab->add_option("file", file, "spring descriptor")->required();
    spstab->add_option("--alpha", alpha, "element such as 'q=1/3 @2=1'")->required();

    auto* oracle = app.add_subcommand("oracle", "exhaustive exponent-bound sweep over p-groups");
    oracle->add_option("--max-card", max_card, "largest group order")->required()->check(CLI::PositiveNumber);
    oracle->add_option("--primes", primes, "comma-separated primes")->required()->delimiter(',');
    oracle->add_option("--workers", workers, "threads per group")->check(CLI::Range(1U, 256U));
    oracle->add_option("--cap", cap, "largest endomorphism count to enumerate")->check(CLI::PositiveNumber);

    auto* example = app.add_subcommand("example", "classify a worked example and compare verdicts");
    example->add_option("id", example_id, "ex0, ex1 or ex3")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*classify) return detail::cmd_classify(file, out);
        if (*chain) return detail::cmd_chain(file, matrix, out);
        if (*spstab) return detail::cmd_spstab(file, alpha, out);
        if (*oracle) {
            for (auto p : primes) {
                if (!is_prime(p)) {
                    err << "--primes: " << p << " is not prime\n";
                    return kExitUsage;
                }
            }
            return detail::cmd_oracle(max_card, primes, workers, cap, out);
        }
        if (*example) return detail::cmd_example(example_id, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace scoh::cli

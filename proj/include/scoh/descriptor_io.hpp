#pragma once

// Text form of group descriptors, plus the small value syntaxes the command
// line accepts (matrices, sp-group elements).
//
//   torsion [primes=SEL] (p=P exps=E1,E2,...)* tail=(zero|const:CxR|linear)
//   product-sp  (same as torsion)
//   divisible r0=(N|inf) rp=(const:N|unbounded)
//   torsionfree divisible=(true|false) rank=(N|inf)
//   spring primes=SEL exps=(const:C|linear)
//   sum { STANZA } { STANZA }
//
// Any stanza may end with flags=f1,f2 (reduced, cotorsion, adjusted-cotorsion,
// alg-compact). SEL is all, odd-positions or even-positions. '#' starts a
// comment.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoh/classify.hpp"
#include "scoh/error.hpp"
#include "scoh/finabel.hpp"
#include "scoh/spgroup.hpp"

namespace scoh {

namespace detail {

struct Token {
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(text[i]);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(c);
            continue;
        }
        Token t{{}, line, col};
        if (c == '{' || c == '}') {
            t.text = std::string(1, c);
            advance(c);
        } else {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '{' &&
                   text[i] != '}' && text[i] != '#') {
                t.text += text[i];
                advance(text[i]);
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

inline std::optional<std::uint64_t> parse_nat(std::string_view s) {
    std::uint64_t v = 0;
    if (s.empty()) return std::nullopt;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

class DescriptorParser {
public:
    DescriptorParser(std::string_view text) : tokens_(tokenize(text)), end_line_(1), end_col_(1) {
        for (char c : text) {
            if (c == '\n') {
                ++end_line_;
                end_col_ = 1;
            } else {
                ++end_col_;
            }
        }
    }

    GroupDescriptor parse_file() {
        if (tokens_.empty()) fail_at_end("empty descriptor");
        auto d = stanza();
        if (pos_ != tokens_.size()) fail(tokens_[pos_], "unexpected '" + tokens_[pos_].text + "' after the stanza");
        return d;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }
    [[noreturn]] void fail_at_end(const std::string& msg) const { throw ParseError(end_line_, end_col_, msg); }

    const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

    const Token& next(const std::string& expected) {
        if (pos_ >= tokens_.size()) fail_at_end("expected " + expected);
        return tokens_[pos_++];
    }

    void expect(const std::string& text) {
        const auto& t = next("'" + text + "'");
        if (t.text != text) fail(t, "expected '" + text + "', got '" + t.text + "'");
    }

    bool peek_key(std::string_view key) const {
        auto t = peek();
        return t && t->text.size() > key.size() && t->text.compare(0, key.size(), key) == 0 &&
               t->text[key.size()] == '=';
    }

    // Value of a required key=value token.
    std::pair<const Token*, std::string> key(std::string_view name) {
        const auto& t = next("'" + std::string(name) + "='");
        std::string prefix = std::string(name) + "=";
        if (t.text.compare(0, prefix.size(), prefix) != 0) fail(t, "expected '" + prefix + "...', got '" + t.text + "'");
        std::string v = t.text.substr(prefix.size());
        if (v.empty()) fail(t, "empty value for '" + std::string(name) + "'");
        return {&t, v};
    }

    std::uint64_t nat(const Token& t, std::string_view s) {
        auto v = parse_nat(s);
        if (!v) fail(t, "'" + std::string(s) + "' is not a natural number");
        return *v;
    }

    Rank rank(const Token& t, std::string_view s, std::string_view infinite_word) {
        if (s == infinite_word) return kInfinite;
        return nat(t, s);
    }

    PrimeSelection selection(const Token& t, std::string_view s) {
        if (s == "all") return PrimeSelection::All;
        if (s == "odd-positions") return PrimeSelection::OddPositions;
        if (s == "even-positions") return PrimeSelection::EvenPositions;
        fail(t, "unknown prime selection '" + std::string(s) + "'");
    }

    TailRule tail(const Token& t, std::string_view s) {
        if (s == "zero") return TailRule::zero();
        if (s == "linear") return TailRule::linear();
        if (s.starts_with("const:")) {
            auto body = s.substr(6);
            auto x = body.find('x');
            if (x == std::string_view::npos) fail(t, "const tail needs the form const:CxR");
            auto c = nat(t, body.substr(0, x));
            auto r = nat(t, body.substr(x + 1));
            try {
                return TailRule::constant(c, r);
            } catch (const ValidationError& e) {
                fail(t, e.what());
            }
        }
        fail(t, "unknown tail '" + std::string(s) + "'");
    }

    TorsionDescriptor torsion_spec(const Token& start) {
        PrimeSelection sel = PrimeSelection::All;
        if (peek_key("primes")) {
            auto [t, v] = key("primes");
            sel = selection(*t, v);
        }
        std::map<std::uint64_t, FinAbGroup> parts;
        while (peek_key("p")) {
            auto [pt, pv] = key("p");
            auto p = nat(*pt, pv);
            if (!is_prime(p)) fail(*pt, std::to_string(p) + " is not prime");
            if (parts.count(p)) fail(*pt, "prime " + std::to_string(p) + " listed twice");
            auto [et, ev] = key("exps");
            std::vector<PrimePower> factors;
            std::size_t from = 0;
            while (true) {
                auto comma = ev.find(',', from);
                auto e = nat(*et, std::string_view(ev).substr(from, comma - from));
                if (e < 1) fail(*et, "exponents must be >= 1");
                factors.push_back({p, e});
                if (comma == std::string::npos) break;
                from = comma + 1;
            }
            parts.emplace(p, make_group(std::move(factors)));
        }
        auto [tt, tv] = key("tail");
        auto rule = tail(*tt, tv);
        try {
            return TorsionDescriptor(std::move(parts), rule, sel);
        } catch (const ValidationError& e) {
            fail(start, e.what());
        }
    }

    FlagSet flags() {
        FlagSet f;
        if (!peek_key("flags")) return f;
        auto [t, v] = key("flags");
        std::size_t from = 0;
        while (true) {
            auto comma = v.find(',', from);
            auto name = v.substr(from, comma - from);
            if (name == "reduced") {
                f.reduced = true;
            } else if (name == "cotorsion") {
                f.cotorsion = true;
            } else if (name == "adjusted-cotorsion") {
                f.adjusted_cotorsion = true;
            } else if (name == "alg-compact") {
                f.alg_compact = true;
            } else {
                fail(*t, "unknown flag '" + name + "'");
            }
            if (comma == std::string::npos) break;
            from = comma + 1;
        }
        return f;
    }

    GroupDescriptor stanza() {
        const Token& head = next("a stanza");
        try {
            if (head.text == "torsion" || head.text == "product-sp") {
                auto t = torsion_spec(head);
                auto f = flags();
                return head.text == "torsion" ? GroupDescriptor::torsion(std::move(t), f)
                                              : GroupDescriptor::product(std::move(t), f);
            }
            if (head.text == "divisible") {
                auto [r0t, r0v] = key("r0");
                Rank r0 = rank(*r0t, r0v, "inf");
                auto [rpt, rpv] = key("rp");
                Rank rp;
                if (rpv == "unbounded") {
                    rp = kInfinite;
                } else if (rpv.starts_with("const:")) {
                    rp = nat(*rpt, std::string_view(rpv).substr(6));
                } else {
                    fail(*rpt, "rp must be const:N or unbounded");
                }
                return GroupDescriptor::divisible({r0, rp}, flags());
            }
            if (head.text == "torsionfree") {
                auto [dt, dv] = key("divisible");
                if (dv != "true" && dv != "false") fail(*dt, "divisible must be true or false");
                auto [rt, rv] = key("rank");
                Rank r = rank(*rt, rv, "inf");
                return GroupDescriptor::torsion_free(dv == "true", r, flags());
            }
            if (head.text == "spring") {
                auto [pt, pv] = key("primes");
                auto sel = selection(*pt, pv);
                auto [et, ev] = key("exps");
                TailRule rule;
                if (ev == "linear") {
                    rule = TailRule::linear();
                } else if (ev.starts_with("const:")) {
                    auto c = nat(*et, std::string_view(ev).substr(6));
                    if (c < 1) fail(*et, "exponent must be >= 1");
                    rule = TailRule::constant(c);
                } else {
                    fail(*et, "exps must be const:C or linear");
                }
                return GroupDescriptor::ering(SpGroupSpec(sel, rule), flags());
            }
            if (head.text == "sum") {
                expect("{");
                auto left = stanza();
                expect("}");
                expect("{");
                auto right = stanza();
                expect("}");
                return GroupDescriptor::sum(std::move(left), std::move(right), flags());
            }
        } catch (const ValidationError& e) {
            fail(head, e.what());
        }
        fail(head, "unknown stanza '" + head.text + "'");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t end_line_;
    std::size_t end_col_;
};

inline std::string print_tail(const TailRule& t) {
    switch (t.kind()) {
        case TailRule::Kind::Zero: return "zero";
        case TailRule::Kind::ConstExp:
            return "const:" + std::to_string(t.exponent()) + "x" + std::to_string(t.multiplicity());
        case TailRule::Kind::LinearExp: return "linear";
    }
    return "?";
}

inline std::string print_torsion(const TorsionDescriptor& t) {
    std::string s;
    if (t.primes() != PrimeSelection::All) s += " primes=" + std::string(to_string(t.primes()));
    for (const auto& [p, g] : t.explicit_parts()) {
        s += " p=" + std::to_string(p) + " exps=";
        bool first = true;
        for (const auto& f : g.factors()) {
            if (!first) s += ",";
            s += std::to_string(f.e);
            first = false;
        }
    }
    return s + " tail=" + print_tail(t.tail());
}

inline std::string print_flags(const FlagSet& f) {
    std::vector<std::string> names;
    if (f.reduced) names.push_back("reduced");
    if (f.cotorsion) names.push_back("cotorsion");
    if (f.adjusted_cotorsion) names.push_back("adjusted-cotorsion");
    if (f.alg_compact) names.push_back("alg-compact");
    if (names.empty()) return "";
    std::string s = " flags=";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
    return s;
}

}  // namespace detail

/// Parses one stanza. Syntax and semantic errors are ParseErrors carrying the
/// 1-based line and column of the offending token.
inline GroupDescriptor parse_descriptor(std::string_view text) { return detail::DescriptorParser(text).parse_file(); }

/// Canonical single-line form; parse_descriptor(print_descriptor(d)) == d.
inline std::string print_descriptor(const GroupDescriptor& d) {
    std::string s;
    if (auto x = d.as<TorsionShape>()) s = "torsion" + detail::print_torsion(x->t);
    if (auto x = d.as<ProductShape>()) s = "product-sp" + detail::print_torsion(x->t);
    if (auto x = d.as<DivisibleShape>()) {
        s = "divisible r0=" + to_string(x->d.r0) + " rp=" + (x->d.rp ? "const:" + std::to_string(*x->d.rp) : "unbounded");
    }
    if (auto x = d.as<TorsionFreeShape>()) {
        s = std::string("torsionfree divisible=") + (x->divisible ? "true" : "false") + " rank=" + to_string(x->rank);
    }
    if (auto x = d.as<ERingShape>()) {
        const auto& e = x->spec.exps();
        s = "spring primes=" + std::string(to_string(x->spec.primes())) +
            " exps=" + (e.bounded() ? "const:" + std::to_string(e.exponent()) : std::string("linear"));
    }
    if (auto x = d.as<SumShape>()) s = "sum { " + print_descriptor(*x->left) + " } { " + print_descriptor(*x->right) + " }";
    return s + detail::print_flags(d.flags());
}

namespace detail {

inline Integer parse_integer(std::string_view s, const std::string& what) {
    std::string_view digits = s;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(1, 1, what + ": '" + std::string(s) + "' is not an integer");
    }
    return Integer(std::string(s));
}

}  // namespace detail

/// "[[2,1],[0,0]]": rows of a matrix, whitespace ignored.
inline IntMatrix parse_matrix(std::string_view text) {
    std::string s;
    std::vector<std::size_t> col_of;  // original column of each kept char
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            s += text[i];
            col_of.push_back(i + 1);
        }
    }
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(1, i < col_of.size() ? col_of[i] : text.size() + 1, msg);
    };
    auto expect = [&](char c) {
        if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
        ++i;
    };
    IntMatrix m;
    expect('[');
    if (i < s.size() && s[i] == ']') {
        ++i;
    } else {
        while (true) {
            expect('[');
            std::vector<Integer> row;
            while (true) {
                std::size_t start = i;
                while (i < s.size() && s[i] != ',' && s[i] != ']') ++i;
                if (i == start) fail("expected an integer");
                std::string_view num(s.data() + start, i - start);
                try {
                    row.push_back(detail::parse_integer(num, "matrix entry"));
                } catch (const ParseError& e) {
                    throw ParseError(1, col_of[start], e.what());
                }
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                break;
            }
            expect(']');
            if (!m.empty() && row.size() != m.front().size()) fail("rows have different lengths");
            m.push_back(std::move(row));
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        expect(']');
    }
    if (i != s.size()) fail("trailing characters after the matrix");
    return m;
}

inline std::string print_matrix(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + m[i][j].str();
        s += "]";
    }
    return s + "]";
}

/// "q=A[/B] @I=R ...": the rational part and explicit components.
inline SpElement parse_sp_element(std::string_view text, const SpGroupSpec& spec) {
    auto tokens = detail::tokenize(text);
    if (tokens.empty()) throw ParseError(1, 1, "expected q=A[/B]");
    const auto& head = tokens.front();
    if (!head.text.starts_with("q=")) throw ParseError(head.line, head.column, "expected q=A[/B]");
    std::string_view qs = std::string_view(head.text).substr(2);
    Rational q;
    try {
        auto slash = qs.find('/');
        Integer a = detail::parse_integer(qs.substr(0, slash), "rational part");
        Integer b = 1;
        if (slash != std::string_view::npos) b = detail::parse_integer(qs.substr(slash + 1), "rational part");
        if (b == 0) throw ParseError(1, 1, "zero denominator");
        q = Rational(a, b);
    } catch (const ParseError& e) {
        throw ParseError(head.line, head.column, e.what());
    }
    std::map<std::size_t, Integer> corr;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
        const auto& t = tokens[k];
        auto eq = t.text.find('=');
        if (!t.text.starts_with("@") || eq == std::string::npos) {
            throw ParseError(t.line, t.column, "expected @I=R, got '" + t.text + "'");
        }
        auto idx = detail::parse_nat(std::string_view(t.text).substr(1, eq - 1));
        if (!idx || *idx == 0) throw ParseError(t.line, t.column, "component index must be >= 1");
        if (corr.count(*idx)) throw ParseError(t.line, t.column, "component " + std::to_string(*idx) + " given twice");
        try {
            corr.emplace(*idx, detail::parse_integer(std::string_view(t.text).substr(eq + 1), "component"));
        } catch (const ParseError& e) {
            throw ParseError(t.line, t.column, e.what());
        }
    }
    try {
        return make_sp_element(spec, q, std::move(corr));
    } catch (const ValidationError& e) {
        throw ParseError(head.line, head.column, e.what());
    }
}

}  // namespace scoh

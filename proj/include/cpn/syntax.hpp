// ============================================================================
// cpn/syntax.hpp — concrete syntax: parser and minimal-parentheses printer
// ============================================================================
//
// Grammar (whitespace insignificant):
//
//   formula := iff ;
//   iff     := imp { "<->" imp } ;            left-associative
//   imp     := or [ "->" imp ] ;              right-associative
//   or      := and { "|" and } ;              left-associative
//   and     := unary { "&" unary } ;          left-associative
//   unary   := "~" [ chainlit ] unary | primary ;
//   primary := atom | "bot" [ chainlit ] | "top" | "(" formula ")" ;
//   chainlit:= "{" [ int { "," int } ] "}" ;
//   atom    := letter { letter | digit | "_" } ;
//
// Bare `~` is the strong negation ¬_(n); `~{}` the identity wrapper ¬_ε.
// Bare `bot` is ⊥_(n); `bot{}` and `top` both denote ⊤_(n) (printed "top").
//
// ============================================================================

#ifndef CPN_SYNTAX_HPP
#define CPN_SYNTAX_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "cpn/formula.hpp"

namespace cpn {

namespace detail {

class Parser {
public:
    Parser(Store& store, std::string_view text, int n) : store_(store), text_(text), n_(n) {
        check_alphabet_size(n);
    }

    FormulaId run() {
        skip_ws();
        FormulaId f = parse_iff();
        skip_ws();
        if (pos_ != text_.size())
            fail(Errc::syntax_error, "trailing input after formula", here(1));
        return f;
    }

private:
    FormulaId parse_iff() {
        FormulaId f = parse_imp();
        while (eat("<->")) f = store_.make_iff(f, parse_imp(), n_);
        return f;
    }

    FormulaId parse_imp() {
        FormulaId f = parse_or();
        if (eat("->")) f = store_.make_imp(f, parse_imp());
        return f;
    }

    FormulaId parse_or() {
        FormulaId f = parse_and();
        while (eat("|")) f = store_.make_or(f, parse_and(), n_);
        return f;
    }

    FormulaId parse_and() {
        FormulaId f = parse_unary();
        while (eat("&")) f = store_.make_and(f, parse_unary(), n_);
        return f;
    }

    FormulaId parse_unary() {
        skip_ws();
        if (peek() == '~') {
            ++pos_;
            Chain c = peek_after_ws() == '{' ? parse_chainlit() : Chain::full(n_);
            return store_.make_neg(c, parse_unary());
        }
        return parse_primary();
    }

    FormulaId parse_primary() {
        skip_ws();
        std::size_t start = pos_;
        char c = peek();
        if (c == '(') {
            ++pos_;
            FormulaId f = parse_iff();
            skip_ws();
            if (peek() != ')') fail(Errc::syntax_error, "expected ')'", here(1));
            ++pos_;
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word = lex_ident();
            if (word == "bot") {
                Chain ch = peek_after_ws() == '{' ? parse_chainlit() : Chain::full(n_);
                return store_.make_bottom(ch);
            }
            if (word == "top") return store_.make_bottom(Chain::empty(n_));
            return store_.make_atom(word);
        }
        fail(Errc::syntax_error,
             c == '\0' ? std::string("unexpected end of input") : "unexpected character '" + std::string(1, c) + "'",
             SourceSpan{start, start + (c == '\0' ? 0 : 1)});
    }

    Chain parse_chainlit() {
        skip_ws();
        std::size_t start = pos_;
        ++pos_;  // '{'
        std::vector<int> symbols;
        skip_ws();
        if (peek() != '}') {
            symbols.push_back(lex_int());
            skip_ws();
            while (peek() == ',') {
                ++pos_;
                symbols.push_back(lex_int());
                skip_ws();
            }
        }
        if (peek() != '}') fail(Errc::syntax_error, "expected '}' in chain", here(1));
        ++pos_;
        try {
            return Chain::canonical(symbols, n_);
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), SourceSpan{start, pos_});
        }
    }

    int lex_int() {
        skip_ws();
        std::size_t start = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail(Errc::syntax_error, "expected a world index", here(1));
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000) fail(Errc::out_of_alphabet, "world index too large", here(pos_ - start));
            ++pos_;
        }
        return static_cast<int>(v);
    }

    std::string lex_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char peek_after_ws() {
        skip_ws();
        return peek();
    }

    bool looking_at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    bool eat(std::string_view s) {
        skip_ws();
        if (!looking_at(s)) return false;
        pos_ += s.size();
        return true;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    SourceSpan here(std::size_t len) const { return SourceSpan{pos_, pos_ + len}; }

    Store& store_;
    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

// Binding tightness, loosest first.
enum Prec : int { kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kUnary = 5, kPrimary = 6 };

inline int precedence(Kind k) {
    switch (k) {
        case Kind::Iff: return kIff;
        case Kind::Imp: return kImp;
        case Kind::Or:  return kOr;
        case Kind::And: return kAnd;
        case Kind::Neg: return kUnary;
        default:        return kPrimary;
    }
}

inline void print_rec(const Store& store, FormulaId id, int required, std::string& out) {
    const Node& nd = store.node(id);
    int level = precedence(nd.kind);
    if (level < required) {
        out += '(';
        print_rec(store, id, kIff, out);
        out += ')';
        return;
    }
    switch (nd.kind) {
        case Kind::Atom:
            out += store.atom_name(id);
            return;
        case Kind::Bottom: {
            Chain c = store.chain_of(id);
            if (c.is_empty())
                out += "top";
            else if (c.is_full())
                out += "bot";
            else
                out += "bot" + c.to_string();
            return;
        }
        case Kind::Neg: {
            Chain c = store.chain_of(id);
            out += c.is_full() ? "~" : "~" + c.to_string();
            out += ' ';
            print_rec(store, nd.a, kUnary, out);
            return;
        }
        case Kind::Imp:
            print_rec(store, nd.a, kOr, out);
            out += " -> ";
            print_rec(store, nd.b, kImp, out);
            return;
        case Kind::Or:
            print_rec(store, nd.a, kOr, out);
            out += " | ";
            print_rec(store, nd.b, kAnd, out);
            return;
        case Kind::And:
            print_rec(store, nd.a, kAnd, out);
            out += " & ";
            print_rec(store, nd.b, kUnary, out);
            return;
        case Kind::Iff:
            print_rec(store, nd.a, kIff, out);
            out += " <-> ";
            print_rec(store, nd.b, kImp, out);
            return;
    }
}

}  // namespace detail

// Parses `text` over the alphabet [n].
inline FormulaId parse(Store& store, std::string_view text, int n) {
    return detail::Parser(store, text, n).run();
}

// Minimal-parentheses rendering; parse(print(f), n) == f for matching n.
inline std::string print(const Store& store, FormulaId id) {
    std::string out;
    detail::print_rec(store, id, detail::kIff, out);
    return out;
}

}  // namespace cpn

#endif  // CPN_SYNTAX_HPP

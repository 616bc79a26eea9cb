// Copyright 2026 The aspdbg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <aspdbg/parser.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

namespace aspdbg {

ParseError::ParseError(std::string file, std::uint32_t line, std::uint32_t column, std::string message)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      file_(std::move(file)), line_(line), column_(column), message_(std::move(message)) {}

namespace {

enum class Tok {
    Ident,
    Variable,
    Integer,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    If,
    Bar,
    Rel,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    std::size_t offset = 0;
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    Relation relation = Relation::Eq;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    Token next() {
        skip_blank();
        Token tok;
        tok.offset = pos_;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) {
            tok.kind = Tok::End;
            return tok;
        }
        char c = text_[pos_];
        auto single = [&](Tok kind) {
            tok.kind = kind;
            tok.text = text_.substr(pos_, 1);
            advance(1);
            return tok;
        };
        auto rel = [&](Relation r, std::size_t len) {
            tok.kind = Tok::Rel;
            tok.relation = r;
            tok.text = text_.substr(pos_, len);
            advance(len);
            return tok;
        };
        if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = scan_word(pos_ + 1);
            tok.kind = Tok::Ident;
            tok.text = text_.substr(pos_, end - pos_);
            if (c == '_' && tok.text.size() == 1) {
                throw error(tok, "anonymous variables are not supported");
            }
            advance(end - pos_);
            return tok;
        }
        if (std::isupper(static_cast<unsigned char>(c))) {
            std::size_t end = scan_word(pos_ + 1);
            tok.kind = Tok::Variable;
            tok.text = text_.substr(pos_, end - pos_);
            advance(end - pos_);
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::size_t end = pos_ + 1;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
                ++end;
            }
            tok.kind = Tok::Integer;
            tok.text = text_.substr(pos_, end - pos_);
            advance(end - pos_);
            return tok;
        }
        auto peek = [&](std::size_t k) { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; };
        switch (c) {
        case '(': return single(Tok::LParen);
        case ')': return single(Tok::RParen);
        case '{': return single(Tok::LBrace);
        case '}': return single(Tok::RBrace);
        case ',': return single(Tok::Comma);
        case '.': return single(Tok::Dot);
        case '|': return single(Tok::Bar);
        case ':':
            if (peek(1) == '-') {
                tok.kind = Tok::If;
                tok.text = text_.substr(pos_, 2);
                advance(2);
                return tok;
            }
            break;
        case '=': return peek(1) == '=' ? rel(Relation::Eq, 2) : rel(Relation::Eq, 1);
        case '!':
            if (peek(1) == '=') {
                return rel(Relation::Ne, 2);
            }
            break;
        case '<':
            if (peek(1) == '=') {
                return rel(Relation::Le, 2);
            }
            if (peek(1) == '>') {
                return rel(Relation::Ne, 2);
            }
            return rel(Relation::Lt, 1);
        case '>': return peek(1) == '=' ? rel(Relation::Ge, 2) : rel(Relation::Gt, 1);
        default: break;
        }
        throw error(tok, "unexpected character '" + std::string(1, c) + "'");
    }

    [[nodiscard]] ParseError error(const Token& at, std::string message) const {
        return ParseError(file_, at.line, at.column, std::move(message));
    }

    [[nodiscard]] const std::string& file() const noexcept { return file_; }

private:
    std::size_t scan_word(std::size_t from) const {
        while (from < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[from])) || text_[from] == '_')) {
            ++from;
        }
        return from;
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
        }
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance(1);
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t column_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, std::string file) : lexer_(text, std::move(file)) { shift(); }

    [[nodiscard]] bool at_end() const noexcept { return tok_.kind == Tok::End; }
    [[nodiscard]] const Token& current() const noexcept { return tok_; }

    Token expect(Tok kind, std::string_view what) {
        if (tok_.kind != kind) {
            throw unexpected(what);
        }
        Token t = tok_;
        shift();
        return t;
    }

    [[nodiscard]] ParseError unexpected(std::string_view what) const {
        std::string found = tok_.kind == Tok::End ? "end of input" : "'" + std::string(tok_.text) + "'";
        return lexer_.error(tok_, "expected " + std::string(what) + ", found " + found);
    }

    [[nodiscard]] ParseError error_at(const Token& at, std::string message) const {
        return lexer_.error(at, std::move(message));
    }

    Term parse_term() {
        Token t = tok_;
        switch (t.kind) {
        case Tok::Variable: shift(); return Term::variable(std::string(t.text));
        case Tok::Ident: shift(); return Term::symbol(std::string(t.text));
        case Tok::Integer: {
            shift();
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc{}) {
                throw error_at(t, "integer out of range");
            }
            return Term::integer(value);
        }
        default: throw unexpected("term");
        }
    }

    Atom parse_atom() {
        Token name = expect(Tok::Ident, "atom");
        if (name.text == "not") {
            throw error_at(name, "'not' cannot be used as a predicate name");
        }
        if (name.text.starts_with('_')) {
            throw error_at(name, "predicate '" + std::string(name.text) + "' uses a reserved namespace");
        }
        Atom atom{std::string(name.text), {}};
        if (tok_.kind == Tok::LParen) {
            shift();
            atom.args.push_back(parse_term());
            while (tok_.kind == Tok::Comma) {
                shift();
                atom.args.push_back(parse_term());
            }
            expect(Tok::RParen, "')'");
        }
        check_arity(atom, name);
        return atom;
    }

    // One body element: a literal or a comparison.
    void parse_body_element(Rule& rule) {
        if (tok_.kind == Tok::Ident && tok_.text == "not") {
            shift();
            rule.body.push_back(Literal{parse_atom(), true});
            return;
        }
        if (tok_.kind == Tok::Ident) {
            // An identifier followed by a relation is a constant on the left
            // of a comparison; otherwise it starts an atom.
            Lexer probe = lexer_;
            if (probe.next().kind != Tok::Rel) {
                rule.body.push_back(Literal{parse_atom(), false});
                return;
            }
        }
        Comparison cmp;
        cmp.left = parse_term();
        if (tok_.kind != Tok::Rel) {
            throw unexpected("comparison operator");
        }
        cmp.relation = tok_.relation;
        shift();
        cmp.right = parse_term();
        rule.comparisons.push_back(std::move(cmp));
    }

    void parse_body(Rule& rule) {
        parse_body_element(rule);
        while (tok_.kind == Tok::Comma) {
            shift();
            parse_body_element(rule);
        }
    }

    /// Returns false at end of input.
    bool parse_rule(Program& program, FreshAtoms& fresh) {
        if (at_end()) {
            return false;
        }
        Token start = tok_;
        Rule rule;
        if (tok_.kind == Tok::LBrace) {
            shift();
            Token atom_tok = tok_;
            Atom atom = parse_atom();
            expect(Tok::RBrace, "'}'");
            if (tok_.kind == Tok::If) {
                throw error_at(tok_, "choice rules must not have a body");
            }
            if (!atom.is_ground()) {
                throw error_at(atom_tok, "choice over non-ground atom");
            }
            rule = desugar_choice(atom, fresh);
        } else {
            if (tok_.kind != Tok::If) {
                rule.head.push_back(parse_atom());
                while (tok_.kind == Tok::Bar) {
                    shift();
                    rule.head.push_back(parse_atom());
                }
            }
            if (tok_.kind == Tok::If) {
                shift();
                parse_body(rule);
            } else if (rule.head.empty()) {
                throw unexpected("rule");
            }
        }
        Token dot = expect(Tok::Dot, "'.'");
        rule.id = program.next_rule_id();
        rule.span = SourceSpan{lexer_.file(), start.line, start.column, start.offset, dot.offset + 1};
        if (auto violation = check_safety(rule)) {
            throw error_at(start, "unsafe variable '" + violation->variable + "' in rule " + std::to_string(rule.id));
        }
        program.rules.push_back(std::move(rule));
        return true;
    }

    void check_arity(const Atom& atom, const Token& at) {
        auto [it, inserted] = arities_->emplace(atom.predicate, atom.arity());
        if (!inserted && it->second != atom.arity()) {
            throw error_at(at, "predicate '" + atom.predicate + "' used with arity " + std::to_string(atom.arity()) +
                                   " and " + std::to_string(it->second));
        }
    }

    void share_arities(std::map<std::string, std::size_t>& arities) noexcept { arities_ = &arities; }

private:
    void shift() { tok_ = lexer_.next(); }

    Lexer lexer_;
    Token tok_;
    std::map<std::string, std::size_t> own_arities_;
    std::map<std::string, std::size_t>* arities_ = &own_arities_;
};

} // namespace

Program parse_program(std::string_view text, std::string_view file_name) {
    SourceText file{std::string(file_name), std::string(text)};
    return parse_program(std::span<const SourceText>(&file, 1));
}

Program parse_program(std::span<const SourceText> files) {
    Program program;
    FreshAtoms fresh;
    std::map<std::string, std::size_t> arities;
    for (const SourceText& file : files) {
        Parser parser(file.text, file.name);
        parser.share_arities(arities);
        while (parser.parse_rule(program, fresh)) {
        }
    }
    program.fresh_atoms = fresh.count();
    return program;
}

TestCase parse_test_case(std::string_view text, std::string_view file_name) {
    TestCase test;
    test.source = std::string(file_name);
    Parser parser(text, std::string(file_name));
    while (!parser.at_end()) {
        Token stmt = parser.expect(Tok::Ident, "assertTrue or assertFalse");
        bool negated = false;
        if (stmt.text == "assertFalse") {
            negated = true;
        } else if (stmt.text != "assertTrue") {
            throw parser.error_at(stmt, "expected assertTrue or assertFalse, found '" + std::string(stmt.text) + "'");
        }
        parser.expect(Tok::LParen, "'('");
        Token atom_tok = parser.current();
        Atom atom = parser.parse_atom();
        parser.expect(Tok::RParen, "')'");
        parser.expect(Tok::Dot, "'.'");
        if (!atom.is_ground()) {
            throw parser.error_at(atom_tok, "asserted atom '" + to_string(atom) + "' is not ground");
        }
        Literal lit{std::move(atom), negated};
        if (std::find(test.asserted.begin(), test.asserted.end(), complement(lit)) != test.asserted.end()) {
            throw parser.error_at(stmt, "contradictory assertions for '" + to_string(lit.atom) + "'");
        }
        if (std::find(test.asserted.begin(), test.asserted.end(), lit) == test.asserted.end()) {
            test.asserted.push_back(std::move(lit));
        }
    }
    return test;
}

} // namespace aspdbg

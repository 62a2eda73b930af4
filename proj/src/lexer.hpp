#pragma once

// Tokenizer shared by the instance, program, and priority file parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dbcause/errors.hpp"
#include "dbcause/relational.hpp"

namespace dbcause::detail {

enum class TokenKind {
    identifier,  // [A-Za-z_][A-Za-z0-9_]*
    number,      // -?[0-9]+
    string,      // "..." (text holds the unescaped content)
    directive,   // @name (text holds name)
    lparen,
    rparen,
    comma,
    period,
    semicolon,
    implies,     // :-
    not_equal,   // !=
    equal,       // =
    greater,     // >
    end,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view source);

const char* describe(TokenKind kind);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(TokenKind k) const { return peek().kind == k; }
    bool accept(TokenKind k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }
    const Token& expect(TokenKind k, const char* context);

    [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
    [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
        throw ParseError(message, t.line, t.column);
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

bool is_variable_name(std::string_view name);

/// Converts a constant-position token (lowercase identifier, number, string,
/// or the `null` keyword) into a Constant; throws ParseError otherwise.
Constant constant_from_token(const Token& t);

/// Parses `Pred(args).` or `Pred(id; args).`; the period is consumed only if
/// `require_period` is true.
Fact parse_fact_tokens(TokenStream& ts, Tag tag, bool require_period);

}  // namespace dbcause::detail

#include "lexer.hpp"

#include <cctype>

namespace dbcause::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

const char* describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::number: return "number";
        case TokenKind::string: return "string";
        case TokenKind::directive: return "directive";
        case TokenKind::lparen: return "'('";
        case TokenKind::rparen: return "')'";
        case TokenKind::comma: return "','";
        case TokenKind::period: return "'.'";
        case TokenKind::semicolon: return "';'";
        case TokenKind::implies: return "':-'";
        case TokenKind::not_equal: return "'!='";
        case TokenKind::equal: return "'='";
        case TokenKind::greater: return "'>'";
        case TokenKind::end: return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance();
            continue;
        }
        std::size_t tl = line, tc = col;
        auto punct = [&](TokenKind k, std::size_t len) {
            out.push_back({k, std::string(src.substr(i, len)), tl, tc});
            advance(len);
        };
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            out.push_back({TokenKind::identifier, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
        } else if (digit(c) || (c == '-' && i + 1 < src.size() && digit(src[i + 1]))) {
            std::size_t j = i + 1;
            while (j < src.size() && digit(src[j])) ++j;
            out.push_back({TokenKind::number, std::string(src.substr(i, j - i)), tl, tc});
            advance(j - i);
        } else if (c == '"') {
            std::string text;
            advance();
            bool closed = false;
            while (i < src.size()) {
                char d = src[i];
                if (d == '"') {
                    advance();
                    closed = true;
                    break;
                }
                if (d == '\\' && i + 1 < src.size()) {
                    text.push_back(src[i + 1]);
                    advance(2);
                    continue;
                }
                if (d == '\n') break;
                text.push_back(d);
                advance();
            }
            if (!closed) throw ParseError("unterminated string", tl, tc);
            out.push_back({TokenKind::string, std::move(text), tl, tc});
        } else if (c == '@') {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j])) ++j;
            if (j == i + 1) throw ParseError("expected directive name after '@'", tl, tc);
            out.push_back({TokenKind::directive, std::string(src.substr(i + 1, j - i - 1)), tl, tc});
            advance(j - i);
        } else if (c == '(') {
            punct(TokenKind::lparen, 1);
        } else if (c == ')') {
            punct(TokenKind::rparen, 1);
        } else if (c == ',') {
            punct(TokenKind::comma, 1);
        } else if (c == '.') {
            punct(TokenKind::period, 1);
        } else if (c == ';') {
            punct(TokenKind::semicolon, 1);
        } else if (c == '>') {
            punct(TokenKind::greater, 1);
        } else if (c == '=') {
            punct(TokenKind::equal, 1);
        } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '-') {
            punct(TokenKind::implies, 2);
        } else if (c == '!' && i + 1 < src.size() && src[i + 1] == '=') {
            punct(TokenKind::not_equal, 2);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
        }
    }
    out.push_back({TokenKind::end, "", line, col});
    return out;
}

const Token& TokenStream::expect(TokenKind k, const char* context) {
    if (!at(k)) {
        const Token& t = peek();
        std::string got = t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
        fail_at(t, std::string("expected ") + describe(k) + " " + context + ", got " + got);
    }
    return next();
}

bool is_variable_name(std::string_view name) {
    return !name.empty() && (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_');
}

Constant constant_from_token(const Token& t) {
    switch (t.kind) {
        case TokenKind::number:
        case TokenKind::string:
            return Constant{t.text, false};
        case TokenKind::identifier:
            if (is_variable_name(t.text))
                TokenStream::fail_at(t, "'" + t.text + "' is not a constant (constants start lowercase)");
            if (t.text == "null") return Constant::null();
            return Constant{t.text, false};
        default:
            TokenStream::fail_at(t, std::string("expected a constant, got ") + describe(t.kind));
    }
}

Fact parse_fact_tokens(TokenStream& ts, Tag tag, bool require_period) {
    const Token& name = ts.expect(TokenKind::identifier, "as predicate name");
    std::string pred = name.text;
    ts.expect(TokenKind::lparen, "after predicate name");
    std::optional<std::uint64_t> id;
    std::vector<Constant> args;
    if (ts.at(TokenKind::number) && ts.peek(1).kind == TokenKind::semicolon) {
        const Token& idt = ts.next();
        if (idt.text[0] == '-' || idt.text.size() > 18 || std::stoull(idt.text) == 0)
            TokenStream::fail_at(idt, "tuple id must be a positive integer");
        id = std::stoull(idt.text);
        ts.next();  // ';'
    }
    if (!ts.at(TokenKind::rparen)) {
        while (true) {
            args.push_back(constant_from_token(ts.next()));
            if (ts.accept(TokenKind::comma)) continue;
            break;
        }
    }
    ts.expect(TokenKind::rparen, "to close argument list");
    if (require_period) ts.expect(TokenKind::period, "after fact");
    return Fact(std::move(pred), std::move(args), tag, id);
}

}  // namespace dbcause::detail

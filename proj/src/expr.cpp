#include "hhtwist/expr.hpp"

#include <cctype>

namespace hht {

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::number;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) t.text += text[i++];
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::ident;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) t.text += text[i++];
        } else if (std::string_view("+-*/^()[],|").find(c) != std::string_view::npos) {
            t.kind = Token::op;
            t.text = c;
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "' at " + std::to_string(i));
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = text.size();
    out.push_back(end);
    return out;
}

bool ScalarParser::accept(const char* op) {
    if (peek().kind == Token::op && peek().text == op) {
        ++pos_;
        return true;
    }
    return false;
}

void ScalarParser::expect(const char* op) {
    if (!accept(op)) fail(std::string("expected '") + op + "'");
}

void ScalarParser::fail(const std::string& what) const {
    const Token& t = toks_[pos_];
    throw ParseError(what + " at position " + std::to_string(t.pos) + (t.kind == Token::end ? " (end of input)" : " near '" + t.text + "'"));
}

Scalar ScalarParser::sum() {
    Scalar acc = prod();
    for (;;) {
        if (accept("+"))
            acc = acc + prod();
        else if (accept("-"))
            acc = acc - prod();
        else
            return acc;
    }
}

Scalar ScalarParser::prod() {
    Scalar acc = unary();
    for (;;) {
        if (accept("*")) {
            acc = acc * unary();
        } else if (accept("/")) {
            Scalar d = unary();
            if (d.is_zero()) fail("division by zero");
            acc = acc / d;
        } else {
            return acc;
        }
    }
}

Scalar ScalarParser::unary() {
    if (accept("-")) return -unary();
    return power();
}

Scalar ScalarParser::power() {
    Scalar base = atom();
    if (!accept("^")) return base;
    bool negative = accept("-");
    if (peek().kind != Token::number) fail("expected integer exponent");
    long e = std::stol(next().text);
    if (negative) {
        if (base.is_zero()) fail("zero to a negative power");
        e = -e;
    }
    return base.pow(e);
}

Scalar ScalarParser::atom() {
    const Token& t = peek();
    if (t.kind == Token::number) {
        ++pos_;
        mpz_class v(t.text);
        return field_.from_rational(mpq_class(v));
    }
    if (t.kind == Token::ident && t.text == "q") {
        ++pos_;
        if (!field_.has_q()) fail("field " + field_.describe() + " has no value for q");
        return field_.q();
    }
    if (accept("(")) {
        Scalar v = sum();
        expect(")");
        return v;
    }
    fail("expected a number, q, or '('");
}

Scalar parse_scalar(const Field& field, std::string_view text) {
    auto toks = tokenize(text);
    ScalarParser p(field, toks);
    Scalar v = p.sum();
    if (p.peek().kind != Token::end) p.fail("unexpected trailing input");
    return v;
}

namespace {

struct IndexParser {
    const std::vector<Token>& toks;
    std::optional<long> r;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " in index expression at position " + std::to_string(toks[pos].pos));
    }
    bool accept(char op) {
        if (toks[pos].kind == Token::op && toks[pos].text[0] == op) {
            ++pos;
            return true;
        }
        return false;
    }
    long sum() {
        long acc = prod();
        for (;;) {
            if (accept('+'))
                acc += prod();
            else if (accept('-'))
                acc -= prod();
            else
                return acc;
        }
    }
    long prod() {
        long acc = unary();
        // juxtaposition such as 2r multiplies
        for (;;) {
            if (accept('*'))
                acc *= unary();
            else if (toks[pos].kind == Token::ident || (toks[pos].kind == Token::op && toks[pos].text == "("))
                acc *= unary();
            else
                return acc;
        }
    }
    long unary() {
        if (accept('-')) return -unary();
        return atom();
    }
    long atom() {
        const Token& t = toks[pos];
        if (t.kind == Token::number) {
            ++pos;
            return std::stol(t.text);
        }
        if (t.kind == Token::ident) {
            if (t.text != "r") fail("unknown symbol '" + t.text + "'");
            if (!r) fail("symbol r is undefined for this field");
            ++pos;
            return *r;
        }
        if (accept('(')) {
            long v = sum();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        fail("expected an integer, r, or '('");
    }
};

}  // namespace

long parse_index(std::string_view text, std::optional<long> r) {
    auto toks = tokenize(text);
    IndexParser p{toks, r};
    long v = p.sum();
    if (toks[p.pos].kind != Token::end) p.fail("unexpected trailing input");
    return v;
}

}  // namespace hht

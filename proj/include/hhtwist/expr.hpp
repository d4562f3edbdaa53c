#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hhtwist/scalar.hpp"

namespace hht {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Token {
    enum Kind { number, ident, op, end } kind = end;
    std::string text;
    std::size_t pos = 0;
};

/// Splits an expression into numbers, identifiers and single-character
/// operators. Identifiers may contain letters, digits and underscores.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token list with the scalar grammar
///   sum   := prod (('+'|'-') prod)*
///   prod  := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' ['-'] integer)?
///   atom  := integer | 'q' | '(' sum ')'
class ScalarParser {
public:
    ScalarParser(const Field& field, const std::vector<Token>& tokens, std::size_t pos = 0)
        : field_(field), toks_(tokens), pos_(pos) {}

    Scalar sum();
    Scalar prod();
    Scalar unary();
    Scalar power();
    Scalar atom();

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool accept(const char* op);
    void expect(const char* op);
    std::size_t position() const { return pos_; }
    [[noreturn]] void fail(const std::string& what) const;

private:
    const Field& field_;
    const std::vector<Token>& toks_;
    std::size_t pos_;
};

/// Parses a complete scalar literal in the given field.
Scalar parse_scalar(const Field& field, std::string_view text);

/// Integer expression with + - * ( ) and the optional symbol r, as used in
/// generator indices such as e(2r,0).
long parse_index(std::string_view text, std::optional<long> r);

}  // namespace hht

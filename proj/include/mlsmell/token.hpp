#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mlsmell/span.hpp"

namespace mlsmell {

enum class TokType : std::uint8_t {
    Name,
    Keyword,
    Number,
    String,
    Op,
    Newline, // end of a logical line
    Indent,
    Dedent,
    EndMarker,
};

enum class OpKind : std::uint8_t {
    LParen, RParen, LBracket, RBracket, LBrace, RBrace,
    Comma, Colon, Semicolon, Dot, Ellipsis, Arrow, At, Tilde,
    Assign, ColonAssign,
    Plus, Minus, Star, DoubleStar, Slash, DoubleSlash, Percent,
    Amp, Pipe, Caret, LShift, RShift,
    Lt, Gt, Le, Ge, EqEq, NotEq,
    PlusAssign, MinusAssign, StarAssign, DoubleStarAssign, SlashAssign,
    DoubleSlashAssign, PercentAssign, AtAssign, AmpAssign, PipeAssign,
    CaretAssign, LShiftAssign, RShiftAssign,
    Invalid,
};

// Flags describing a string literal's prefix.
struct StrFlags {
    bool raw = false;
    bool bytes = false;
    bool fstring = false;
};

struct Token {
    TokType type = TokType::EndMarker;
    OpKind op = OpKind::Invalid;
    std::string_view text;  // raw slice of the source
    std::string value;      // decoded contents for strings (escape-processed)
    StrFlags str;
    Span span;

    bool is_op(OpKind k) const { return type == TokType::Op && op == k; }
    bool is_keyword(std::string_view kw) const {
        return type == TokType::Keyword && text == kw;
    }
    bool is_name(std::string_view n) const {
        return type == TokType::Name && text == n;
    }
};

// Raised by the lexer and parser on the first syntax problem encountered.
struct SyntaxError {
    std::string message;
    int line = 1;
    int col = 0;
};

} // namespace mlsmell

#include "mlsmell/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

namespace mlsmell {

namespace {

const char* const kKeywords[] = {
    "False", "None",   "True",  "and",      "as",     "assert", "async",
    "await", "break",  "class", "continue", "def",    "del",    "elif",
    "else",  "except", "finally", "for",    "from",   "global", "if",
    "import", "in",    "is",    "lambda",   "nonlocal", "not",  "or",
    "pass",  "raise",  "return", "try",     "while",  "with",   "yield",
};

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool is_ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
}
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

int hex_val(unsigned char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        validate_utf8();
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") { // UTF-8 BOM
            i_ = 3;
        }
        for (;;) {
            if (at_line_start_ && paren_depth_ == 0) {
                if (!handle_line_start()) break; // EOF
            }
            scan_logical_line();
            if (i_ >= src_.size()) break;
        }
        finish_eof();
        return std::move(out_);
    }

private:
    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 0;
    int paren_depth_ = 0;
    bool at_line_start_ = true;
    bool line_had_tokens_ = false;
    // Indentation levels measured two ways (tab = 8 and tab = 1) so that
    // ambiguous tab/space mixes are rejected like CPython's tokenizer does.
    std::vector<std::pair<int, int>> indents_{{0, 0}};
    std::vector<Token> out_;

    [[noreturn]] void fail(std::string msg) const {
        throw SyntaxError{std::move(msg), line_, col_};
    }
    [[noreturn]] void fail_at(std::string msg, int l, int c) const {
        throw SyntaxError{std::move(msg), l, c};
    }

    char peek(std::size_t ahead = 0) const {
        return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
    }
    bool eof() const { return i_ >= src_.size(); }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 0;
        } else {
            ++col_;
        }
        ++i_;
    }

    void validate_utf8() const {
        const auto* p = reinterpret_cast<const unsigned char*>(src_.data());
        std::size_t n = src_.size();
        int line = 1, col = 0;
        std::size_t i = 0;
        auto bad = [&](const char* what) {
            throw SyntaxError{std::string("cannot decode source: ") + what, line, col};
        };
        while (i < n) {
            unsigned char c = p[i];
            if (c == 0) bad("NUL byte in source");
            std::size_t len;
            if (c < 0x80) len = 1;
            else if ((c & 0xE0) == 0xC0) len = 2;
            else if ((c & 0xF0) == 0xE0) len = 3;
            else if ((c & 0xF8) == 0xF0) len = 4;
            else bad("invalid UTF-8 start byte");
            if (i + len > n) bad("truncated UTF-8 sequence");
            for (std::size_t k = 1; k < len; ++k) {
                if ((p[i + k] & 0xC0) != 0x80) bad("invalid UTF-8 continuation byte");
            }
            if (c == '\n') {
                ++line;
                col = 0;
            } else {
                col += static_cast<int>(len);
            }
            i += len;
        }
    }

    void emit(TokType type, std::size_t start, int sl, int sc) {
        Token t;
        t.type = type;
        t.text = src_.substr(start, i_ - start);
        t.span = {sl, sc, line_, col_};
        out_.push_back(std::move(t));
    }

    // --- line starts -----------------------------------------------------

    // Measures indentation and emits Indent/Dedent. Skips blank and
    // comment-only lines entirely. Returns false at EOF.
    bool handle_line_start() {
        for (;;) {
            if (eof()) return false;
            int w8 = 0, w1 = 0;
            while (!eof()) {
                char c = peek();
                if (c == ' ') {
                    ++w8;
                    ++w1;
                    advance();
                } else if (c == '\t') {
                    w8 = (w8 / 8 + 1) * 8;
                    ++w1;
                    advance();
                } else if (c == '\f') {
                    w8 = 0;
                    w1 = 0;
                    advance();
                } else {
                    break;
                }
            }
            if (eof()) return false;
            char c = peek();
            if (c == '\n' || c == '\r') {
                consume_newline_char();
                continue; // blank line
            }
            if (c == '#') {
                skip_comment();
                if (!eof()) consume_newline_char();
                continue;
            }
            apply_indent(w8, w1);
            at_line_start_ = false;
            line_had_tokens_ = false;
            return true;
        }
    }

    void apply_indent(int w8, int w1) {
        auto [t8, t1] = indents_.back();
        if (w8 == t8) {
            if (w1 != t1) fail("inconsistent use of tabs and spaces in indentation");
            return;
        }
        if (w8 > t8) {
            if (w1 <= t1) fail("inconsistent use of tabs and spaces in indentation");
            indents_.emplace_back(w8, w1);
            emit(TokType::Indent, i_, line_, 0);
            return;
        }
        while (indents_.back().first > w8) {
            indents_.pop_back();
            emit(TokType::Dedent, i_, line_, col_);
        }
        if (indents_.back().first != w8 || indents_.back().second != w1) {
            fail("unindent does not match any outer indentation level");
        }
    }

    void consume_newline_char() {
        if (peek() == '\r') {
            advance();
            if (peek() == '\n') advance();
            else { ++line_; col_ = 0; } // lone \r acts as a newline
        } else {
            advance();
        }
    }

    void skip_comment() {
        while (!eof() && peek() != '\n' && peek() != '\r') advance();
    }

    void finish_eof() {
        if (line_had_tokens_) {
            emit(TokType::Newline, i_, line_, col_);
        }
        while (indents_.size() > 1) {
            indents_.pop_back();
            emit(TokType::Dedent, i_, line_, col_);
        }
        emit(TokType::EndMarker, i_, line_, col_);
    }

    // --- token scanning --------------------------------------------------

    void scan_logical_line() {
        while (!eof()) {
            char c = peek();
            if (c == '\n' || c == '\r') {
                if (paren_depth_ > 0) {
                    consume_newline_char();
                    continue;
                }
                int sl = line_, sc = col_;
                std::size_t start = i_;
                consume_newline_char();
                if (line_had_tokens_) {
                    Token t;
                    t.type = TokType::Newline;
                    t.text = src_.substr(start, i_ - start);
                    t.span = {sl, sc, sl, sc + 1};
                    out_.push_back(std::move(t));
                    line_had_tokens_ = false;
                }
                at_line_start_ = true;
                return;
            }
            if (c == ' ' || c == '\t' || c == '\f') {
                advance();
                continue;
            }
            if (c == '#') {
                skip_comment();
                continue;
            }
            if (c == '\\') {
                if (peek(1) == '\n' || peek(1) == '\r') {
                    advance();
                    consume_newline_char();
                    continue;
                }
                fail("unexpected character after line continuation character");
            }
            if (is_ident_start(static_cast<unsigned char>(c))) {
                lex_name_or_prefixed_string();
                continue;
            }
            if (is_digit(static_cast<unsigned char>(c)) ||
                (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
                lex_number();
                continue;
            }
            if (c == '\'' || c == '"') {
                lex_string(StrFlags{}, i_, line_, col_);
                continue;
            }
            lex_operator();
        }
    }

    void lex_name_or_prefixed_string() {
        std::size_t start = i_;
        int sl = line_, sc = col_;
        while (!eof() && is_ident_cont(static_cast<unsigned char>(peek()))) advance();
        std::string_view word = src_.substr(start, i_ - start);
        // A short run of prefix letters directly followed by a quote starts
        // a string literal.
        if (word.size() <= 2 && !eof() && (peek() == '\'' || peek() == '"')) {
            StrFlags flags;
            bool ok = true;
            for (char pc : word) {
                switch (pc) {
                case 'r': case 'R': flags.raw = true; break;
                case 'b': case 'B': flags.bytes = true; break;
                case 'f': case 'F': flags.fstring = true; break;
                case 'u': case 'U': break;
                default: ok = false;
                }
            }
            if (flags.bytes && flags.fstring) ok = false;
            if (ok) {
                lex_string(flags, start, sl, sc);
                return;
            }
            fail("invalid string prefix");
        }
        Token t;
        t.type = is_python_keyword(word) ? TokType::Keyword : TokType::Name;
        t.text = word;
        t.span = {sl, sc, line_, col_};
        out_.push_back(std::move(t));
        line_had_tokens_ = true;
    }

    void lex_number() {
        std::size_t start = i_;
        int sl = line_, sc = col_;
        auto digits = [&](auto pred) {
            bool any = false;
            while (!eof() && (pred(static_cast<unsigned char>(peek())) || peek() == '_')) {
                any = any || peek() != '_';
                advance();
            }
            return any;
        };
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            advance(); advance();
            if (!digits([](unsigned char c) { return hex_val(c) >= 0; }))
                fail("invalid hexadecimal literal");
        } else if (peek() == '0' && (peek(1) == 'o' || peek(1) == 'O')) {
            advance(); advance();
            if (!digits([](unsigned char c) { return c >= '0' && c <= '7'; }))
                fail("invalid octal literal");
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            advance(); advance();
            if (!digits([](unsigned char c) { return c == '0' || c == '1'; }))
                fail("invalid binary literal");
        } else {
            digits(is_digit);
            if (peek() == '.' ) {
                advance();
                digits(is_digit);
            }
            if (peek() == 'e' || peek() == 'E') {
                std::size_t mark = i_;
                int ml = line_, mc = col_;
                advance();
                if (peek() == '+' || peek() == '-') advance();
                if (!digits(is_digit)) {
                    i_ = mark; // not an exponent after all (e.g. "1e" in "1else")
                    line_ = ml;
                    col_ = mc;
                }
            }
            if (peek() == 'j' || peek() == 'J') advance();
        }
        emit(TokType::Number, start, sl, sc);
        line_had_tokens_ = true;
    }

    // start/sl/sc refer to the first prefix character when a prefix exists.
    void lex_string(StrFlags flags, std::size_t start, int sl, int sc) {
        char quote = peek();
        advance();
        bool triple = false;
        if (peek() == quote && peek(1) == quote) {
            triple = true;
            advance();
            advance();
        } else if (peek() == quote) { // empty string
            advance();
            push_string_token(flags, start, sl, sc, "");
            return;
        }
        std::size_t body_start = i_;
        if (flags.fstring) {
            scan_fstring_body(quote, triple, sl, sc);
            push_string_token(flags, start, sl, sc, "");
            return;
        }
        for (;;) {
            if (eof()) {
                fail_at(triple ? "unterminated triple-quoted string literal"
                               : "unterminated string literal",
                        sl, sc);
            }
            char c = peek();
            if ((c == '\n' || c == '\r') && !triple) {
                fail_at("unterminated string literal", sl, sc);
            }
            if (c == '\\') {
                advance();
                if (eof()) fail_at("unterminated string literal", sl, sc);
                if (peek() == '\r') { consume_newline_char(); continue; }
                advance();
                continue;
            }
            if (c == quote) {
                if (!triple) break;
                if (peek(1) == quote && peek(2) == quote) break;
            }
            advance();
        }
        std::string_view body = src_.substr(body_start, i_ - body_start);
        advance(); // closing quote
        if (triple) {
            advance();
            advance();
        }
        std::string value = flags.raw ? std::string(body) : decode_escapes(body);
        push_string_token(flags, start, sl, sc, std::move(value));
    }

    void push_string_token(StrFlags flags, std::size_t start, int sl, int sc,
                           std::string value) {
        Token t;
        t.type = TokType::String;
        t.text = src_.substr(start, i_ - start);
        t.value = std::move(value);
        t.str = flags;
        t.span = {sl, sc, line_, col_};
        out_.push_back(std::move(t));
        line_had_tokens_ = true;
    }

    // Consumes characters up to and including the closing quote(s).
    void scan_fstring_body(char quote, bool triple, int sl, int sc) {
        for (;;) {
            if (eof()) {
                fail_at("unterminated f-string literal", sl, sc);
            }
            char c = peek();
            if ((c == '\n' || c == '\r') && !triple) {
                fail_at("unterminated f-string literal", sl, sc);
            }
            if (c == quote && (!triple || (peek(1) == quote && peek(2) == quote))) {
                advance();
                if (triple) {
                    advance();
                    advance();
                }
                return;
            }
            if (c == '\\') {
                // Backslashes never hide braces: rf"\{x}" is a literal
                // backslash followed by a replacement field.
                advance();
                if (!eof() && peek() != '{' && peek() != '}') advance();
                continue;
            }
            if (c == '{') {
                if (peek(1) == '{') {
                    advance();
                    advance();
                    continue;
                }
                advance();
                scan_fstring_expr(sl, sc);
                continue;
            }
            if (c == '}') {
                if (peek(1) == '}') {
                    advance();
                    advance();
                    continue;
                }
                fail("f-string: single '}' is not allowed");
            }
            advance();
        }
    }

    // Scans one replacement field up to and including its closing '}'.
    // Bracket nesting plus full skipping of nested string literals is enough
    // to find the matching brace; format specs fall out of the same rule.
    void scan_fstring_expr(int sl, int sc) {
        int nesting = 0;
        for (;;) {
            if (eof()) fail_at("unterminated f-string expression", sl, sc);
            char c = peek();
            if (c == '\'' || c == '"') {
                skip_nested_string();
                continue;
            }
            if (c == '(' || c == '[' || c == '{') {
                ++nesting;
                advance();
                continue;
            }
            if (c == ')' || c == ']') {
                --nesting;
                advance();
                continue;
            }
            if (c == '}') {
                if (nesting == 0) {
                    advance();
                    return;
                }
                --nesting;
                advance();
                continue;
            }
            if (c == '\\') {
                advance();
                if (!eof()) advance();
                continue;
            }
            advance();
        }
    }

    // Skips a complete string literal inside an f-string replacement field.
    void skip_nested_string() {
        char quote = peek();
        int sl = line_, sc = col_;
        advance();
        bool triple = false;
        if (peek() == quote && peek(1) == quote) {
            triple = true;
            advance();
            advance();
        }
        for (;;) {
            if (eof()) fail_at("unterminated string literal", sl, sc);
            char c = peek();
            if ((c == '\n' || c == '\r') && !triple) {
                fail_at("unterminated string literal", sl, sc);
            }
            if (c == '\\') {
                advance();
                if (!eof()) advance();
                continue;
            }
            if (c == quote && (!triple || (peek(1) == quote && peek(2) == quote))) {
                advance();
                if (triple) {
                    advance();
                    advance();
                }
                return;
            }
            advance();
        }
    }

    static std::string decode_escapes(std::string_view body) {
        std::string out;
        out.reserve(body.size());
        std::size_t i = 0;
        auto emit_codepoint = [&](unsigned long cp) {
            if (cp < 0x80) {
                out.push_back(static_cast<char>(cp));
            } else if (cp < 0x800) {
                out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
            } else if (cp < 0x10000) {
                out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
                out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
            } else {
                out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
                out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
                out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
            }
        };
        while (i < body.size()) {
            char c = body[i];
            if (c != '\\') {
                out.push_back(c);
                ++i;
                continue;
            }
            ++i;
            if (i >= body.size()) {
                out.push_back('\\');
                break;
            }
            char e = body[i++];
            switch (e) {
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case 'r': out.push_back('\r'); break;
            case 'a': out.push_back('\a'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case 'v': out.push_back('\v'); break;
            case '\\': out.push_back('\\'); break;
            case '\'': out.push_back('\''); break;
            case '"': out.push_back('"'); break;
            case '\n': break; // line continuation
            case '\r':
                if (i < body.size() && body[i] == '\n') ++i;
                break;
            case 'x': {
                int h1 = i < body.size() ? hex_val(body[i]) : -1;
                int h2 = i + 1 < body.size() ? hex_val(body[i + 1]) : -1;
                if (h1 >= 0 && h2 >= 0) {
                    out.push_back(static_cast<char>(h1 * 16 + h2));
                    i += 2;
                } else {
                    out += "\\x";
                }
                break;
            }
            case 'u':
            case 'U': {
                int want = e == 'u' ? 4 : 8;
                unsigned long cp = 0;
                bool ok = true;
                for (int k = 0; k < want; ++k) {
                    int h = i + k < body.size() ? hex_val(body[i + k]) : -1;
                    if (h < 0) {
                        ok = false;
                        break;
                    }
                    cp = cp * 16 + static_cast<unsigned long>(h);
                }
                if (ok && cp <= 0x10FFFF) {
                    emit_codepoint(cp);
                    i += static_cast<std::size_t>(want);
                } else {
                    out.push_back('\\');
                    out.push_back(e);
                }
                break;
            }
            default:
                if (e >= '0' && e <= '7') {
                    int v = e - '0';
                    for (int k = 0; k < 2 && i < body.size() && body[i] >= '0' &&
                                    body[i] <= '7';
                         ++k) {
                        v = v * 8 + (body[i] - '0');
                        ++i;
                    }
                    out.push_back(static_cast<char>(v));
                } else {
                    // Unrecognized escapes keep the backslash, like Python.
                    out.push_back('\\');
                    out.push_back(e);
                }
            }
        }
        return out;
    }

    void lex_operator() {
        std::size_t start = i_;
        int sl = line_, sc = col_;
        char a = peek(), b = peek(1), c = peek(2);
        OpKind op = OpKind::Invalid;
        int len = 1;
        auto three = [&](char x, char y, char z, OpKind k) {
            if (a == x && b == y && c == z) {
                op = k;
                len = 3;
                return true;
            }
            return false;
        };
        auto two = [&](char x, char y, OpKind k) {
            if (op == OpKind::Invalid && a == x && b == y) {
                op = k;
                len = 2;
                return true;
            }
            return false;
        };
        three('*', '*', '=', OpKind::DoubleStarAssign) ||
            three('/', '/', '=', OpKind::DoubleSlashAssign) ||
            three('<', '<', '=', OpKind::LShiftAssign) ||
            three('>', '>', '=', OpKind::RShiftAssign) ||
            three('.', '.', '.', OpKind::Ellipsis);
        if (op == OpKind::Invalid) {
            two('*', '*', OpKind::DoubleStar) || two('/', '/', OpKind::DoubleSlash) ||
                two('<', '<', OpKind::LShift) || two('>', '>', OpKind::RShift) ||
                two('<', '=', OpKind::Le) || two('>', '=', OpKind::Ge) ||
                two('=', '=', OpKind::EqEq) || two('!', '=', OpKind::NotEq) ||
                two('+', '=', OpKind::PlusAssign) || two('-', '=', OpKind::MinusAssign) ||
                two('*', '=', OpKind::StarAssign) || two('/', '=', OpKind::SlashAssign) ||
                two('%', '=', OpKind::PercentAssign) || two('@', '=', OpKind::AtAssign) ||
                two('&', '=', OpKind::AmpAssign) || two('|', '=', OpKind::PipeAssign) ||
                two('^', '=', OpKind::CaretAssign) || two('-', '>', OpKind::Arrow) ||
                two(':', '=', OpKind::ColonAssign);
        }
        if (op == OpKind::Invalid) {
            len = 1;
            switch (a) {
            case '(': op = OpKind::LParen; ++paren_depth_; break;
            case ')': op = OpKind::RParen; --paren_depth_; break;
            case '[': op = OpKind::LBracket; ++paren_depth_; break;
            case ']': op = OpKind::RBracket; --paren_depth_; break;
            case '{': op = OpKind::LBrace; ++paren_depth_; break;
            case '}': op = OpKind::RBrace; --paren_depth_; break;
            case ',': op = OpKind::Comma; break;
            case ':': op = OpKind::Colon; break;
            case ';': op = OpKind::Semicolon; break;
            case '.': op = OpKind::Dot; break;
            case '@': op = OpKind::At; break;
            case '~': op = OpKind::Tilde; break;
            case '=': op = OpKind::Assign; break;
            case '+': op = OpKind::Plus; break;
            case '-': op = OpKind::Minus; break;
            case '*': op = OpKind::Star; break;
            case '/': op = OpKind::Slash; break;
            case '%': op = OpKind::Percent; break;
            case '&': op = OpKind::Amp; break;
            case '|': op = OpKind::Pipe; break;
            case '^': op = OpKind::Caret; break;
            case '<': op = OpKind::Lt; break;
            case '>': op = OpKind::Gt; break;
            default:
                fail(std::string("invalid character '") + a + "'");
            }
        }
        if (paren_depth_ < 0) fail("unmatched closing bracket");
        for (int k = 0; k < len; ++k) advance();
        Token t;
        t.type = TokType::Op;
        t.op = op;
        t.text = src_.substr(start, i_ - start);
        t.span = {sl, sc, line_, col_};
        out_.push_back(std::move(t));
        line_had_tokens_ = true;
    }
};

} // namespace

bool is_python_keyword(std::string_view word) {
    for (const char* kw : kKeywords) {
        if (word == kw) return true;
    }
    return false;
}

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

} // namespace mlsmell

#include "mlsmell/parser.hpp"

#include <cerrno>
#include <cstdlib>
#include <utility>

#include "mlsmell/lexer.hpp"

namespace mlsmell {

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    AstNode parse_module() {
        AstNode mod;
        mod.kind = NodeKind::Module;
        mod.payload = std::monostate{};
        while (!at(TokType::EndMarker)) {
            if (accept(TokType::Newline)) continue;
            parse_statement_into(mod.children);
        }
        Span end = mod.children.empty() ? Span{1, 0, 1, 0} : mod.children.back().span;
        mod.span = {1, 0, end.end_line, end.end_col};
        return mod;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    static constexpr int kMaxDepth = 400;
    // Inside match-case patterns 'as' captures may appear at any nesting
    // level of sequence/mapping/class patterns.
    bool in_pattern_ = false;

    // Caps combined statement/expression nesting so crafted inputs cannot
    // blow the stack.
    struct DepthGuard {
        Parser& parser;
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++p.depth_ > kMaxDepth) {
                p.fail("too deeply nested");
            }
        }
        ~DepthGuard() { --parser.depth_; }
    };

    struct PatternScope {
        Parser& parser;
        bool previous;
        explicit PatternScope(Parser& p, bool on)
            : parser(p), previous(p.in_pattern_) {
            p.in_pattern_ = on;
        }
        ~PatternScope() { parser.in_pattern_ = previous; }
    };

    AstNode maybe_as_pattern(AstNode pat) {
        if (in_pattern_ && at_kw("as")) {
            next();
            Span s = pat.span;
            AstNode wrap = make_other("match_as", s);
            std::get<OtherPayload>(wrap.payload).text = expect_name();
            wrap.children.push_back(std::move(pat));
            close(wrap, s);
            return wrap;
        }
        return pat;
    }

    // --- token helpers -----------------------------------------------------

    const Token& cur() const { return toks_[pos_]; }
    const Token& la(std::size_t n) const {
        std::size_t i = pos_ + n;
        return toks_[i < toks_.size() ? i : toks_.size() - 1];
    }
    void next() {
        if (pos_ + 1 < toks_.size()) ++pos_;
    }
    bool at(TokType t) const { return cur().type == t; }
    bool at_op(OpKind k) const { return cur().is_op(k); }
    bool at_kw(std::string_view kw) const { return cur().is_keyword(kw); }

    bool accept(TokType t) {
        if (at(t)) {
            next();
            return true;
        }
        return false;
    }
    bool accept_op(OpKind k) {
        if (at_op(k)) {
            next();
            return true;
        }
        return false;
    }
    bool accept_kw(std::string_view kw) {
        if (at_kw(kw)) {
            next();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::string msg) const {
        throw SyntaxError{std::move(msg), cur().span.line, cur().span.col};
    }
    [[noreturn]] void fail_at(std::string msg, const Span& s) const {
        throw SyntaxError{std::move(msg), s.line, s.col};
    }

    void expect_op(OpKind k, const char* what) {
        if (!accept_op(k)) fail(std::string("expected '") + what + "'");
    }
    std::string expect_name() {
        if (!at(TokType::Name)) fail("expected an identifier");
        std::string id(cur().text);
        next();
        return id;
    }
    void expect_newline() {
        if (at(TokType::EndMarker)) return;
        if (!accept(TokType::Newline)) fail("invalid syntax");
    }

    Span start_span() const { return cur().span; }
    Span prev_end() const { return toks_[pos_ > 0 ? pos_ - 1 : 0].span; }
    void close(AstNode& n, const Span& start) {
        n.span = {start.line, start.col, prev_end().end_line, prev_end().end_col};
    }

    AstNode make(NodeKind kind, Payload payload, const Span& start) {
        AstNode n;
        n.kind = kind;
        n.payload = std::move(payload);
        close(n, start);
        return n;
    }
    AstNode make_other(std::string tag, const Span& start) {
        return make(NodeKind::Other, OtherPayload{std::move(tag), "", false, false},
                    start);
    }

    bool can_start_expr() const {
        const Token& t = cur();
        switch (t.type) {
        case TokType::Name:
        case TokType::Number:
        case TokType::String:
            return true;
        case TokType::Keyword:
            return t.text == "lambda" || t.text == "not" || t.text == "None" ||
                   t.text == "True" || t.text == "False" || t.text == "await" ||
                   t.text == "yield";
        case TokType::Op:
            switch (t.op) {
            case OpKind::LParen:
            case OpKind::LBracket:
            case OpKind::LBrace:
            case OpKind::Plus:
            case OpKind::Minus:
            case OpKind::Tilde:
            case OpKind::Star:
            case OpKind::Ellipsis:
                return true;
            default:
                return false;
            }
        default:
            return false;
        }
    }

    // --- statements --------------------------------------------------------

    void parse_statement_into(std::vector<AstNode>& out) {
        if (at(TokType::Keyword)) {
            std::string_view kw = cur().text;
            if (kw == "if") { out.push_back(parse_if()); return; }
            if (kw == "while") { out.push_back(parse_while()); return; }
            if (kw == "for") { out.push_back(parse_for(false, cur().span)); return; }
            if (kw == "try") { out.push_back(parse_try()); return; }
            if (kw == "with") { out.push_back(parse_with(false, cur().span)); return; }
            if (kw == "def") { out.push_back(parse_funcdef(false, {}, cur().span)); return; }
            if (kw == "class") { out.push_back(parse_classdef({}, cur().span)); return; }
            if (kw == "async") { out.push_back(parse_async()); return; }
        }
        if (at_op(OpKind::At)) {
            out.push_back(parse_decorated());
            return;
        }
        if (cur().is_name("match")) {
            AstNode m;
            if (try_parse_match(m)) {
                out.push_back(std::move(m));
                return;
            }
        }
        parse_simple_line(out);
    }

    void parse_simple_line(std::vector<AstNode>& out) {
        for (;;) {
            out.push_back(parse_small_stmt());
            if (accept_op(OpKind::Semicolon)) {
                if (at(TokType::Newline) || at(TokType::EndMarker)) break;
                continue;
            }
            break;
        }
        expect_newline();
    }

    // Suite after a ':' header. Returns the statements.
    std::vector<AstNode> parse_block() {
        DepthGuard guard(*this);
        expect_op(OpKind::Colon, ":");
        std::vector<AstNode> body;
        if (accept(TokType::Newline)) {
            if (!accept(TokType::Indent)) fail("expected an indented block");
            while (!at(TokType::Dedent) && !at(TokType::EndMarker)) {
                parse_statement_into(body);
            }
            accept(TokType::Dedent);
        } else {
            parse_simple_line(body);
        }
        if (body.empty()) fail("expected an indented block");
        return body;
    }

    AstNode parse_small_stmt() {
        Span s = start_span();
        if (at(TokType::Keyword)) {
            std::string_view kw = cur().text;
            if (kw == "pass" || kw == "break" || kw == "continue") {
                next();
                return make_other(std::string(kw), s);
            }
            if (kw == "return") {
                next();
                AstNode n;
                n.kind = NodeKind::Return;
                ReturnPayload p;
                if (can_start_expr()) {
                    n.children.push_back(parse_testlist_star());
                    p.has_value = true;
                }
                n.payload = p;
                close(n, s);
                return n;
            }
            if (kw == "del") {
                next();
                AstNode n = make_other("del", s);
                n.children.push_back(parse_testlist_star());
                close(n, s);
                return n;
            }
            if (kw == "import") return parse_import(s);
            if (kw == "from") return parse_import_from(s);
            if (kw == "global" || kw == "nonlocal") {
                std::string tag(kw);
                next();
                std::string names = expect_name();
                while (accept_op(OpKind::Comma)) names += " " + expect_name();
                AstNode n = make_other(tag, s);
                std::get<OtherPayload>(n.payload).text = std::move(names);
                close(n, s);
                return n;
            }
            if (kw == "assert") {
                next();
                AstNode n = make_other("assert", s);
                n.children.push_back(parse_test());
                if (accept_op(OpKind::Comma)) n.children.push_back(parse_test());
                close(n, s);
                return n;
            }
            if (kw == "raise") {
                next();
                AstNode n = make_other("raise", s);
                if (can_start_expr()) {
                    n.children.push_back(parse_test());
                    if (accept_kw("from")) n.children.push_back(parse_test());
                }
                close(n, s);
                return n;
            }
        }
        // PEP 695 "type X = ..." (soft keyword)
        if (cur().is_name("type") && la(1).type == TokType::Name &&
            (la(2).is_op(OpKind::Assign) || la(2).is_op(OpKind::LBracket))) {
            next();
            std::string alias = expect_name();
            AstNode n = make_other("typealias", s);
            std::get<OtherPayload>(n.payload).text = std::move(alias);
            if (at_op(OpKind::LBracket)) skip_type_params(n);
            expect_op(OpKind::Assign, "=");
            n.children.push_back(parse_test());
            close(n, s);
            return n;
        }
        return parse_expr_stmt(s);
    }

    AstNode parse_expr_stmt(const Span& s) {
        AstNode first = parse_testlist_star();
        if (at_op(OpKind::Colon)) { // annotated assignment
            next();
            check_target(first, false);
            AstNode n = make_other("annassign", s);
            n.children.push_back(std::move(first));
            n.children.push_back(parse_test());
            if (accept_op(OpKind::Assign)) {
                std::get<OtherPayload>(n.payload).flag_a = true;
                n.children.push_back(parse_assign_value());
            }
            close(n, s);
            return n;
        }
        if (auto op = aug_op()) {
            next();
            check_target(first, false);
            AstNode n;
            n.kind = NodeKind::AugAssign;
            n.payload = AugAssignPayload{*op};
            n.children.push_back(std::move(first));
            n.children.push_back(parse_assign_value());
            close(n, s);
            return n;
        }
        if (at_op(OpKind::Assign)) {
            AstNode n;
            n.kind = NodeKind::Assign;
            n.children.push_back(std::move(first));
            while (accept_op(OpKind::Assign)) {
                n.children.push_back(parse_assign_value());
            }
            // all but the last are targets
            auto n_targets = static_cast<std::uint32_t>(n.children.size() - 1);
            for (std::uint32_t i = 0; i < n_targets; ++i) {
                check_target(n.children[i], true);
            }
            n.payload = AssignPayload{n_targets};
            close(n, s);
            return n;
        }
        AstNode n;
        n.kind = NodeKind::ExprStmt;
        n.payload = std::monostate{};
        n.children.push_back(std::move(first));
        close(n, s);
        return n;
    }

    AstNode parse_assign_value() {
        if (at_kw("yield")) return parse_yield();
        return parse_testlist_star();
    }

    std::optional<BinOpKind> aug_op() const {
        if (!at(TokType::Op)) return std::nullopt;
        switch (cur().op) {
        case OpKind::PlusAssign: return BinOpKind::Add;
        case OpKind::MinusAssign: return BinOpKind::Sub;
        case OpKind::StarAssign: return BinOpKind::Mult;
        case OpKind::AtAssign: return BinOpKind::MatMult;
        case OpKind::SlashAssign: return BinOpKind::Div;
        case OpKind::PercentAssign: return BinOpKind::Mod;
        case OpKind::DoubleStarAssign: return BinOpKind::Pow;
        case OpKind::DoubleSlashAssign: return BinOpKind::FloorDiv;
        case OpKind::AmpAssign: return BinOpKind::BitAnd;
        case OpKind::PipeAssign: return BinOpKind::BitOr;
        case OpKind::CaretAssign: return BinOpKind::BitXor;
        case OpKind::LShiftAssign: return BinOpKind::LShift;
        case OpKind::RShiftAssign: return BinOpKind::RShift;
        default: return std::nullopt;
        }
    }

    // Valid assignment target shapes; mirrors CPython's checks closely
    // enough to reject plainly broken files.
    void check_target(const AstNode& n, bool allow_starred) {
        switch (n.kind) {
        case NodeKind::Name:
        case NodeKind::Attribute:
        case NodeKind::Subscript:
            return;
        case NodeKind::Other: {
            const auto& o = n.as<OtherPayload>();
            if (o.tag == "tuple" || o.tag == "list") {
                for (const auto& c : n.children) check_target(c, true);
                return;
            }
            if (o.tag == "starred" && allow_starred) {
                check_target(n.children.front(), false);
                return;
            }
            break;
        }
        default:
            break;
        }
        fail_at("cannot assign to this expression", n.span);
    }

    AstNode parse_import(const Span& s) {
        next(); // import
        ImportPayload p;
        for (;;) {
            ImportAlias a;
            a.name = parse_dotted_name();
            if (accept_kw("as")) a.asname = expect_name();
            p.names.push_back(std::move(a));
            if (!accept_op(OpKind::Comma)) break;
        }
        return make(NodeKind::Import, std::move(p), s);
    }

    AstNode parse_import_from(const Span& s) {
        next(); // from
        ImportFromPayload p;
        while (at_op(OpKind::Dot) || at_op(OpKind::Ellipsis)) {
            p.level += at_op(OpKind::Ellipsis) ? 3 : 1;
            next();
        }
        if (at(TokType::Name)) p.module = parse_dotted_name();
        else if (p.level == 0) fail("expected a module name");
        if (!accept_kw("import")) fail("expected 'import'");
        if (accept_op(OpKind::Star)) {
            p.star = true;
            return make(NodeKind::ImportFrom, std::move(p), s);
        }
        bool parens = accept_op(OpKind::LParen);
        for (;;) {
            ImportAlias a;
            a.name = expect_name();
            if (accept_kw("as")) a.asname = expect_name();
            p.names.push_back(std::move(a));
            if (!accept_op(OpKind::Comma)) break;
            if (parens && at_op(OpKind::RParen)) break; // trailing comma
        }
        if (parens) expect_op(OpKind::RParen, ")");
        return make(NodeKind::ImportFrom, std::move(p), s);
    }

    std::string parse_dotted_name() {
        std::string name = expect_name();
        while (at_op(OpKind::Dot) && la(1).type == TokType::Name) {
            next();
            name += "." + expect_name();
        }
        return name;
    }

    AstNode parse_if() {
        Span s = start_span();
        next(); // if / elif
        AstNode n;
        n.kind = NodeKind::If;
        n.children.push_back(parse_namedexpr());
        auto body = parse_block();
        IfPayload p;
        p.n_body = static_cast<std::uint32_t>(body.size());
        for (auto& st : body) n.children.push_back(std::move(st));
        if (at_kw("elif")) {
            n.children.push_back(parse_if()); // nested If in orelse
        } else if (accept_kw("else")) {
            for (auto& st : parse_block()) n.children.push_back(std::move(st));
        }
        n.payload = p;
        close(n, s);
        return n;
    }

    AstNode parse_while() {
        Span s = start_span();
        next();
        AstNode n;
        n.kind = NodeKind::While;
        n.children.push_back(parse_namedexpr());
        auto body = parse_block();
        WhilePayload p;
        p.n_body = static_cast<std::uint32_t>(body.size());
        for (auto& st : body) n.children.push_back(std::move(st));
        if (accept_kw("else")) {
            for (auto& st : parse_block()) n.children.push_back(std::move(st));
        }
        n.payload = p;
        close(n, s);
        return n;
    }

    AstNode parse_for(bool is_async, const Span& s) {
        next(); // for
        AstNode n;
        n.kind = NodeKind::For;
        AstNode target = parse_target_list();
        check_target(target, true);
        n.children.push_back(std::move(target));
        if (!accept_kw("in")) fail("expected 'in'");
        n.children.push_back(parse_testlist_star());
        auto body = parse_block();
        ForPayload p;
        p.is_async = is_async;
        p.n_body = static_cast<std::uint32_t>(body.size());
        for (auto& st : body) n.children.push_back(std::move(st));
        if (accept_kw("else")) {
            for (auto& st : parse_block()) n.children.push_back(std::move(st));
        }
        n.payload = p;
        close(n, s);
        return n;
    }

    // Comma-separated target list (no 'in' keyword consumption).
    AstNode parse_target_list() {
        Span s = start_span();
        std::vector<AstNode> elems;
        elems.push_back(parse_star_or(&Parser::parse_primary_expr));
        bool tuple = false;
        while (at_op(OpKind::Comma)) {
            next();
            tuple = true;
            if (!can_start_expr()) break;
            elems.push_back(parse_star_or(&Parser::parse_primary_expr));
        }
        if (!tuple) return std::move(elems.front());
        AstNode n = make_other("tuple", s);
        n.children = std::move(elems);
        close(n, s);
        return n;
    }

    AstNode parse_try() {
        Span s = start_span();
        next();
        AstNode n = make_other("try", s);
        for (auto& st : parse_block()) n.children.push_back(std::move(st));
        bool any_handler = false;
        while (at_kw("except")) {
            Span hs = start_span();
            next();
            AstNode h = make_other("excepthandler", hs);
            auto& hp = std::get<OtherPayload>(h.payload);
            if (accept_op(OpKind::Star)) hp.flag_b = true; // except*
            if (!at_op(OpKind::Colon)) {
                hp.flag_a = true;
                h.children.push_back(parse_test());
                if (accept_kw("as")) hp.text = expect_name();
            }
            for (auto& st : parse_block()) h.children.push_back(std::move(st));
            close(h, hs);
            n.children.push_back(std::move(h));
            any_handler = true;
        }
        if (accept_kw("else")) {
            if (!any_handler) fail("'else' without 'except'");
            for (auto& st : parse_block()) n.children.push_back(std::move(st));
        }
        if (accept_kw("finally")) {
            for (auto& st : parse_block()) n.children.push_back(std::move(st));
        } else if (!any_handler) {
            fail("expected 'except' or 'finally'");
        }
        close(n, s);
        return n;
    }

    AstNode parse_with(bool is_async, const Span& s) {
        next(); // with
        AstNode n;
        n.kind = NodeKind::With;
        std::vector<AstNode> items;
        if (at_op(OpKind::LParen)) {
            // Could be parenthesized with-items (3.9+) or an ordinary
            // parenthesized expression; try items first and roll back.
            std::size_t mark = pos_;
            try {
                next();
                for (;;) {
                    items.push_back(parse_with_item());
                    if (!accept_op(OpKind::Comma)) break;
                    if (at_op(OpKind::RParen)) break;
                }
                expect_op(OpKind::RParen, ")");
                if (!at_op(OpKind::Colon)) fail("not parenthesized with-items");
            } catch (const SyntaxError&) {
                pos_ = mark;
                items.clear();
            }
        }
        if (items.empty()) {
            for (;;) {
                items.push_back(parse_with_item());
                if (!accept_op(OpKind::Comma)) break;
            }
        }
        WithPayload p;
        p.is_async = is_async;
        p.n_items = static_cast<std::uint32_t>(items.size());
        for (auto& it : items) n.children.push_back(std::move(it));
        for (auto& st : parse_block()) n.children.push_back(std::move(st));
        n.payload = p;
        close(n, s);
        return n;
    }

    AstNode parse_with_item() {
        Span s = start_span();
        AstNode item = make_other("with_item", s);
        item.children.push_back(parse_test());
        if (accept_kw("as")) {
            std::get<OtherPayload>(item.payload).flag_a = true;
            AstNode tgt = parse_primary_expr();
            check_target(tgt, false);
            item.children.push_back(std::move(tgt));
        }
        close(item, s);
        return item;
    }

    AstNode parse_async() {
        Span s = start_span();
        next(); // async
        if (at_kw("def")) return parse_funcdef(true, {}, s);
        if (at_kw("for")) return parse_for(true, s);
        if (at_kw("with")) return parse_with(true, s);
        fail("expected 'def', 'for' or 'with' after 'async'");
    }

    AstNode parse_decorated() {
        Span s = start_span();
        std::vector<AstNode> decorators;
        while (accept_op(OpKind::At)) {
            decorators.push_back(parse_namedexpr());
            expect_newline();
        }
        if (at_kw("def")) return parse_funcdef(false, std::move(decorators), s);
        if (at_kw("class")) return parse_classdef(std::move(decorators), s);
        if (at_kw("async")) {
            next();
            if (at_kw("def")) return parse_funcdef(true, std::move(decorators), s);
        }
        fail("expected a function or class definition after decorators");
    }

    void skip_type_params(AstNode& owner) {
        // PEP 695 [T, *Ts, **P] lists; recorded generically.
        Span s = start_span();
        next(); // '['
        AstNode tp = make_other("typeparams", s);
        while (!at_op(OpKind::RBracket)) {
            if (at(TokType::EndMarker)) fail("expected ']'");
            accept_op(OpKind::Star) || accept_op(OpKind::DoubleStar);
            expect_name();
            if (accept_op(OpKind::Colon)) tp.children.push_back(parse_test());
            if (accept_op(OpKind::Assign)) tp.children.push_back(parse_test());
            if (!accept_op(OpKind::Comma)) break;
        }
        expect_op(OpKind::RBracket, "]");
        close(tp, s);
        owner.children.push_back(std::move(tp));
    }

    AstNode parse_funcdef(bool is_async, std::vector<AstNode> decorators,
                          const Span& s) {
        next(); // def
        AstNode n;
        n.kind = NodeKind::FunctionDef;
        FunctionDefPayload p;
        p.is_async = is_async;
        p.n_decorators = static_cast<std::uint32_t>(decorators.size());
        for (auto& d : decorators) n.children.push_back(std::move(d));
        p.name = expect_name();
        if (at_op(OpKind::LBracket)) skip_type_params(n);
        expect_op(OpKind::LParen, "(");
        p.n_params = parse_params_into(n.children, /*lambda_form=*/false);
        expect_op(OpKind::RParen, ")");
        if (accept_op(OpKind::Arrow)) {
            p.has_returns = true;
            n.children.push_back(parse_test());
        }
        p.body_start = static_cast<std::uint32_t>(n.children.size());
        for (auto& st : parse_block()) n.children.push_back(std::move(st));
        n.payload = std::move(p);
        close(n, s);
        return n;
    }

    // Parses a parameter list; returns the number of param nodes appended.
    std::uint32_t parse_params_into(std::vector<AstNode>& out, bool lambda_form) {
        std::uint32_t count = 0;
        auto stop = [&] {
            return lambda_form ? at_op(OpKind::Colon) : at_op(OpKind::RParen);
        };
        while (!stop()) {
            if (at(TokType::EndMarker)) fail("unexpected end of parameter list");
            Span ps = start_span();
            std::string tag = "param";
            if (accept_op(OpKind::Slash)) { // positional-only marker
                if (!accept_op(OpKind::Comma) && !stop()) fail("expected ','");
                continue;
            }
            if (accept_op(OpKind::Star)) {
                if (stop() || at_op(OpKind::Comma)) { // bare '*'
                    if (!accept_op(OpKind::Comma) && !stop()) fail("expected ','");
                    continue;
                }
                tag = "param_star";
            } else if (accept_op(OpKind::DoubleStar)) {
                tag = "param_dstar";
            }
            AstNode param = make_other(tag, ps);
            auto& pp = std::get<OtherPayload>(param.payload);
            pp.text = expect_name();
            if (!lambda_form && accept_op(OpKind::Colon)) {
                pp.flag_a = true;
                param.children.push_back(parse_test());
            }
            if (accept_op(OpKind::Assign)) {
                pp.flag_b = true;
                param.children.push_back(parse_test());
            }
            close(param, ps);
            out.push_back(std::move(param));
            ++count;
            if (!accept_op(OpKind::Comma) && !stop()) fail("expected ','");
        }
        return count;
    }

    AstNode parse_classdef(std::vector<AstNode> decorators, const Span& s) {
        next(); // class
        AstNode n;
        n.kind = NodeKind::ClassDef;
        ClassDefPayload p;
        p.n_decorators = static_cast<std::uint32_t>(decorators.size());
        for (auto& d : decorators) n.children.push_back(std::move(d));
        p.name = expect_name();
        if (at_op(OpKind::LBracket)) skip_type_params(n);
        if (accept_op(OpKind::LParen)) {
            parse_call_arguments(n, nullptr);
            expect_op(OpKind::RParen, ")");
        }
        p.body_start = static_cast<std::uint32_t>(n.children.size());
        for (auto& st : parse_block()) n.children.push_back(std::move(st));
        n.payload = std::move(p);
        close(n, s);
        return n;
    }

    // --- match statements (soft keyword, speculative) -----------------------

    bool try_parse_match(AstNode& out) {
        std::size_t mark = pos_;
        try {
            Span s = start_span();
            next(); // match
            AstNode subject = parse_testlist_star();
            if (!at_op(OpKind::Colon)) fail("not a match statement");
            next();
            if (!accept(TokType::Newline)) fail("not a match statement");
            if (!accept(TokType::Indent)) fail("not a match statement");
            if (!cur().is_name("case")) fail("not a match statement");
            AstNode n = make_other("match", s);
            n.children.push_back(std::move(subject));
            while (cur().is_name("case")) {
                n.children.push_back(parse_case_block());
            }
            if (!accept(TokType::Dedent) && !at(TokType::EndMarker)) {
                fail("expected 'case'");
            }
            close(n, s);
            out = std::move(n);
            return true;
        } catch (const SyntaxError&) {
            pos_ = mark;
            return false;
        }
    }

    AstNode parse_case_block() {
        Span s = start_span();
        next(); // case
        AstNode c = make_other("match_case", s);
        // Patterns reuse the expression grammar: '|' or-patterns arrive as
        // BinOp, class patterns as Call, sequences/mappings as list/dict.
        {
            PatternScope scope(*this, true);
            for (;;) {
                AstNode pat =
                    maybe_as_pattern(parse_star_or(&Parser::parse_bitor));
                c.children.push_back(std::move(pat));
                if (!accept_op(OpKind::Comma)) break;
                if (at_op(OpKind::Colon) || at_kw("if")) break;
            }
        }
        if (accept_kw("if")) c.children.push_back(parse_namedexpr());
        for (auto& st : parse_block()) c.children.push_back(std::move(st));
        close(c, s);
        return c;
    }

    // --- expressions --------------------------------------------------------

    template <typename Fn>
    AstNode parse_star_or(Fn fn) {
        if (at_op(OpKind::Star)) {
            Span s = start_span();
            next();
            AstNode n = make_other("starred", s);
            n.children.push_back((this->*fn)());
            close(n, s);
            return n;
        }
        return (this->*fn)();
    }

    // testlist_star_expr: element (',' element)* [','] with tuple folding.
    AstNode parse_testlist_star() {
        Span s = start_span();
        std::vector<AstNode> elems;
        elems.push_back(parse_star_or(&Parser::parse_test));
        bool tuple = false;
        while (at_op(OpKind::Comma)) {
            next();
            tuple = true;
            if (!can_start_expr()) break;
            elems.push_back(parse_star_or(&Parser::parse_test));
        }
        if (!tuple) return std::move(elems.front());
        AstNode n = make_other("tuple", s);
        n.children = std::move(elems);
        close(n, s);
        return n;
    }

    AstNode parse_namedexpr() {
        Span s = start_span();
        AstNode t = parse_test();
        if (at_op(OpKind::ColonAssign)) {
            next();
            AstNode n = make_other("namedexpr", s);
            n.children.push_back(std::move(t));
            n.children.push_back(parse_test());
            close(n, s);
            return n;
        }
        return t;
    }

    AstNode parse_test() {
        DepthGuard guard(*this);
        if (at_kw("lambda")) return parse_lambda();
        Span s = start_span();
        AstNode body = parse_or_test();
        if (at_kw("if")) {
            next();
            AstNode n = make_other("ifexp", s);
            n.children.push_back(std::move(body));
            n.children.push_back(parse_or_test());
            if (!accept_kw("else")) fail("expected 'else'");
            n.children.push_back(parse_test());
            close(n, s);
            return n;
        }
        return body;
    }

    AstNode parse_lambda() {
        Span s = start_span();
        next(); // lambda
        AstNode n = make_other("lambda", s);
        parse_params_into(n.children, /*lambda_form=*/true);
        expect_op(OpKind::Colon, ":");
        n.children.push_back(parse_test());
        close(n, s);
        return n;
    }

    AstNode parse_bool_chain(const char* kw, AstNode (Parser::*sub)()) {
        Span s = start_span();
        AstNode first = (this->*sub)();
        if (!at_kw(kw)) return first;
        AstNode n = make_other("boolop", s);
        std::get<OtherPayload>(n.payload).text = kw;
        n.children.push_back(std::move(first));
        while (accept_kw(kw)) n.children.push_back((this->*sub)());
        close(n, s);
        return n;
    }

    AstNode parse_or_test() { return parse_bool_chain("or", &Parser::parse_and_test); }
    AstNode parse_and_test() { return parse_bool_chain("and", &Parser::parse_not_test); }

    AstNode parse_not_test() {
        DepthGuard guard(*this);
        if (at_kw("not")) {
            Span s = start_span();
            next();
            AstNode n = make_other("unaryop", s);
            std::get<OtherPayload>(n.payload).text = "not";
            n.children.push_back(parse_not_test());
            close(n, s);
            return n;
        }
        return parse_comparison();
    }

    AstNode parse_comparison() {
        Span s = start_span();
        AstNode left = parse_bitor();
        ComparePayload p;
        std::vector<AstNode> comps;
        for (;;) {
            std::optional<CmpOp> op;
            if (at_op(OpKind::Lt)) op = CmpOp::Lt;
            else if (at_op(OpKind::Gt)) op = CmpOp::Gt;
            else if (at_op(OpKind::Le)) op = CmpOp::LtE;
            else if (at_op(OpKind::Ge)) op = CmpOp::GtE;
            else if (at_op(OpKind::EqEq)) op = CmpOp::Eq;
            else if (at_op(OpKind::NotEq)) op = CmpOp::NotEq;
            if (op) {
                next();
            } else if (at_kw("in")) {
                next();
                op = CmpOp::In;
            } else if (at_kw("not") && la(1).is_keyword("in")) {
                next();
                next();
                op = CmpOp::NotIn;
            } else if (at_kw("is")) {
                next();
                if (accept_kw("not")) op = CmpOp::IsNot;
                else op = CmpOp::Is;
            } else {
                break;
            }
            p.ops.push_back(*op);
            comps.push_back(parse_bitor());
        }
        if (p.ops.empty()) return left;
        AstNode n;
        n.kind = NodeKind::Compare;
        n.children.push_back(std::move(left));
        for (auto& c : comps) n.children.push_back(std::move(c));
        n.payload = std::move(p);
        close(n, s);
        return n;
    }

    AstNode parse_binop_chain(AstNode (Parser::*sub)(),
                              std::optional<BinOpKind> (Parser::*match)()) {
        Span s = start_span();
        AstNode left = (this->*sub)();
        while (auto op = (this->*match)()) {
            next();
            AstNode n;
            n.kind = NodeKind::BinOp;
            n.payload = BinOpPayload{*op};
            n.children.push_back(std::move(left));
            n.children.push_back((this->*sub)());
            close(n, s);
            left = std::move(n);
        }
        return left;
    }

    std::optional<BinOpKind> match_bitor() {
        if (at_op(OpKind::Pipe)) return BinOpKind::BitOr;
        return std::nullopt;
    }
    std::optional<BinOpKind> match_bitxor() {
        if (at_op(OpKind::Caret)) return BinOpKind::BitXor;
        return std::nullopt;
    }
    std::optional<BinOpKind> match_bitand() {
        if (at_op(OpKind::Amp)) return BinOpKind::BitAnd;
        return std::nullopt;
    }
    std::optional<BinOpKind> match_shift() {
        if (at_op(OpKind::LShift)) return BinOpKind::LShift;
        if (at_op(OpKind::RShift)) return BinOpKind::RShift;
        return std::nullopt;
    }
    std::optional<BinOpKind> match_arith() {
        if (at_op(OpKind::Plus)) return BinOpKind::Add;
        if (at_op(OpKind::Minus)) return BinOpKind::Sub;
        return std::nullopt;
    }
    std::optional<BinOpKind> match_term() {
        if (at_op(OpKind::Star)) return BinOpKind::Mult;
        if (at_op(OpKind::Slash)) return BinOpKind::Div;
        if (at_op(OpKind::DoubleSlash)) return BinOpKind::FloorDiv;
        if (at_op(OpKind::Percent)) return BinOpKind::Mod;
        if (at_op(OpKind::At)) return BinOpKind::MatMult;
        return std::nullopt;
    }

    AstNode parse_bitor() {
        return parse_binop_chain(&Parser::parse_bitxor, &Parser::match_bitor);
    }
    AstNode parse_bitxor() {
        return parse_binop_chain(&Parser::parse_bitand, &Parser::match_bitxor);
    }
    AstNode parse_bitand() {
        return parse_binop_chain(&Parser::parse_shift, &Parser::match_bitand);
    }
    AstNode parse_shift() {
        return parse_binop_chain(&Parser::parse_arith, &Parser::match_shift);
    }
    AstNode parse_arith() {
        return parse_binop_chain(&Parser::parse_term, &Parser::match_arith);
    }
    AstNode parse_term() {
        return parse_binop_chain(&Parser::parse_factor, &Parser::match_term);
    }

    AstNode parse_factor() {
        DepthGuard guard(*this);
        if (at_op(OpKind::Plus) || at_op(OpKind::Minus) || at_op(OpKind::Tilde)) {
            Span s = start_span();
            std::string optext(cur().text);
            next();
            AstNode n = make_other("unaryop", s);
            std::get<OtherPayload>(n.payload).text = std::move(optext);
            n.children.push_back(parse_factor());
            close(n, s);
            return n;
        }
        return parse_power();
    }

    AstNode parse_power() {
        Span s = start_span();
        AstNode base = parse_await_primary();
        if (at_op(OpKind::DoubleStar)) {
            next();
            AstNode n;
            n.kind = NodeKind::BinOp;
            n.payload = BinOpPayload{BinOpKind::Pow};
            n.children.push_back(std::move(base));
            n.children.push_back(parse_factor());
            close(n, s);
            return n;
        }
        return base;
    }

    AstNode parse_await_primary() {
        if (at_kw("await")) {
            Span s = start_span();
            next();
            AstNode n = make_other("await", s);
            n.children.push_back(parse_primary_expr());
            close(n, s);
            return n;
        }
        return parse_primary_expr();
    }

    AstNode parse_primary_expr() {
        Span s = start_span();
        AstNode node = parse_atom();
        for (;;) {
            if (at_op(OpKind::LParen)) {
                next();
                AstNode call;
                call.kind = NodeKind::Call;
                call.children.push_back(std::move(node));
                CallPayload p;
                p.n_args = parse_call_arguments(call, &p);
                expect_op(OpKind::RParen, ")");
                call.payload = p;
                close(call, s);
                node = std::move(call);
            } else if (at_op(OpKind::LBracket)) {
                next();
                AstNode sub;
                sub.kind = NodeKind::Subscript;
                sub.payload = std::monostate{};
                sub.children.push_back(std::move(node));
                sub.children.push_back(parse_subscript_list());
                expect_op(OpKind::RBracket, "]");
                close(sub, s);
                node = std::move(sub);
            } else if (at_op(OpKind::Dot)) {
                next();
                AstNode attr;
                attr.kind = NodeKind::Attribute;
                attr.payload = AttributePayload{expect_name()};
                attr.children.push_back(std::move(node));
                close(attr, s);
                node = std::move(attr);
            } else {
                break;
            }
        }
        return node;
    }

    // Appends argument children to `call` in source order. Returns the
    // positional-argument count.
    std::uint32_t parse_call_arguments(AstNode& call, CallPayload*) {
        std::uint32_t n_pos = 0;
        bool saw_keyword = false;
        std::vector<std::string> seen_names;
        while (!at_op(OpKind::RParen)) {
            if (at(TokType::EndMarker)) fail("expected ')'");
            Span as = start_span();
            if (accept_op(OpKind::DoubleStar)) {
                AstNode kw;
                kw.kind = NodeKind::Keyword;
                kw.payload = KeywordPayload{std::nullopt};
                kw.children.push_back(parse_test());
                close(kw, as);
                call.children.push_back(std::move(kw));
                saw_keyword = true;
            } else if (accept_op(OpKind::Star)) {
                AstNode star = make_other("starred", as);
                star.children.push_back(parse_test());
                close(star, as);
                call.children.push_back(std::move(star));
                ++n_pos;
            } else if (at(TokType::Name) && la(1).is_op(OpKind::Assign)) {
                std::string name(cur().text);
                for (const auto& prev : seen_names) {
                    if (prev == name) {
                        fail("keyword argument repeated: '" + name + "'");
                    }
                }
                seen_names.push_back(name);
                next();
                next();
                AstNode kw;
                kw.kind = NodeKind::Keyword;
                kw.payload = KeywordPayload{std::move(name)};
                kw.children.push_back(maybe_as_pattern(parse_test()));
                close(kw, as);
                call.children.push_back(std::move(kw));
                saw_keyword = true;
            } else {
                AstNode arg = parse_namedexpr();
                if (at_kw("for") || (at_kw("async") && la(1).is_keyword("for"))) {
                    arg = parse_comprehension_tail("genexp", std::move(arg), as);
                } else if (saw_keyword) {
                    fail_at("positional argument follows keyword argument", as);
                }
                call.children.push_back(maybe_as_pattern(std::move(arg)));
                ++n_pos;
            }
            if (!accept_op(OpKind::Comma)) break;
        }
        return n_pos;
    }

    AstNode parse_subscript_list() {
        Span s = start_span();
        std::vector<AstNode> elems;
        elems.push_back(parse_subscript_item());
        bool tuple = false;
        while (at_op(OpKind::Comma)) {
            next();
            tuple = true;
            if (at_op(OpKind::RBracket)) break;
            elems.push_back(parse_subscript_item());
        }
        if (!tuple) return std::move(elems.front());
        AstNode n = make_other("tuple", s);
        n.children = std::move(elems);
        close(n, s);
        return n;
    }

    AstNode parse_subscript_item() {
        Span s = start_span();
        AstNode lower;
        bool has_lower = false;
        if (!at_op(OpKind::Colon)) {
            if (at_op(OpKind::Star)) return parse_star_or(&Parser::parse_test);
            lower = parse_namedexpr();
            has_lower = true;
            if (!at_op(OpKind::Colon)) return lower;
        }
        // slice
        expect_op(OpKind::Colon, ":");
        AstNode n = make_other("slice", s);
        if (has_lower) n.children.push_back(std::move(lower));
        if (!at_op(OpKind::Colon) && !at_op(OpKind::Comma) &&
            !at_op(OpKind::RBracket)) {
            n.children.push_back(parse_test());
        }
        if (accept_op(OpKind::Colon)) {
            if (!at_op(OpKind::Comma) && !at_op(OpKind::RBracket)) {
                n.children.push_back(parse_test());
            }
        }
        close(n, s);
        return n;
    }

    AstNode parse_yield() {
        Span s = start_span();
        next(); // yield
        if (accept_kw("from")) {
            AstNode n = make_other("yieldfrom", s);
            n.children.push_back(parse_test());
            close(n, s);
            return n;
        }
        AstNode n = make_other("yield", s);
        if (can_start_expr()) n.children.push_back(parse_testlist_star());
        close(n, s);
        return n;
    }

    // 'for' ... ('if' ...)* clauses plus optional further 'for' clauses.
    AstNode parse_comprehension_tail(const char* tag, AstNode elt, const Span& s) {
        AstNode n = make_other(tag, s);
        n.children.push_back(std::move(elt));
        append_comprehension_clauses(n);
        close(n, s);
        return n;
    }

    AstNode parse_or_test_namedexpr() {
        Span s = start_span();
        AstNode t = parse_or_test();
        if (at_op(OpKind::ColonAssign)) {
            next();
            AstNode n = make_other("namedexpr", s);
            n.children.push_back(std::move(t));
            n.children.push_back(parse_test());
            close(n, s);
            return n;
        }
        return t;
    }

    AstNode parse_atom() {
        Span s = start_span();
        const Token& t = cur();
        switch (t.type) {
        case TokType::Name: {
            NamePayload p{std::string(t.text)};
            next();
            return make(NodeKind::Name, std::move(p), s);
        }
        case TokType::Number: {
            ConstantPayload p = number_payload(t.text);
            next();
            return make(NodeKind::Constant, std::move(p), s);
        }
        case TokType::String:
            return parse_string_concat();
        case TokType::Keyword: {
            if (t.text == "None") {
                next();
                ConstantPayload p;
                p.type = ConstantPayload::Type::None;
                return make(NodeKind::Constant, std::move(p), s);
            }
            if (t.text == "True" || t.text == "False") {
                ConstantPayload p;
                p.type = ConstantPayload::Type::Bool;
                p.bool_value = t.text == "True";
                next();
                return make(NodeKind::Constant, std::move(p), s);
            }
            if (t.text == "lambda") return parse_lambda();
            if (t.text == "yield") return parse_yield();
            if (t.text == "not" || t.text == "await") {
                // reachable via parse_primary_expr callers that skip levels
                return t.text == "not" ? parse_not_test() : parse_await_primary();
            }
            break;
        }
        case TokType::Op:
            if (t.op == OpKind::Ellipsis) {
                next();
                ConstantPayload p;
                p.type = ConstantPayload::Type::Ellipsis;
                return make(NodeKind::Constant, std::move(p), s);
            }
            if (t.op == OpKind::LParen) return parse_paren_atom(s);
            if (t.op == OpKind::LBracket) return parse_list_atom(s);
            if (t.op == OpKind::LBrace) return parse_brace_atom(s);
            break;
        default:
            break;
        }
        fail("invalid syntax");
    }

    AstNode parse_paren_atom(const Span& s) {
        next(); // (
        if (at_op(OpKind::RParen)) {
            next();
            return make_other("tuple", s); // empty tuple
        }
        if (at_kw("yield")) {
            AstNode y = parse_yield();
            expect_op(OpKind::RParen, ")");
            return y;
        }
        AstNode first = parse_star_or(&Parser::parse_namedexpr);
        if (at_kw("for") || (at_kw("async") && la(1).is_keyword("for"))) {
            AstNode gen = parse_comprehension_tail("genexp", std::move(first), s);
            expect_op(OpKind::RParen, ")");
            close(gen, s);
            return gen;
        }
        first = maybe_as_pattern(std::move(first));
        if (at_op(OpKind::Comma)) {
            AstNode tup = make_other("tuple", s);
            tup.children.push_back(std::move(first));
            while (accept_op(OpKind::Comma)) {
                if (at_op(OpKind::RParen)) break;
                tup.children.push_back(
                    maybe_as_pattern(parse_star_or(&Parser::parse_namedexpr)));
            }
            expect_op(OpKind::RParen, ")");
            close(tup, s);
            return tup;
        }
        expect_op(OpKind::RParen, ")");
        return first; // plain parenthesized expression
    }

    AstNode parse_list_atom(const Span& s) {
        next(); // [
        if (at_op(OpKind::RBracket)) {
            next();
            return make_other("list", s);
        }
        AstNode first = parse_star_or(&Parser::parse_namedexpr);
        if (at_kw("for") || (at_kw("async") && la(1).is_keyword("for"))) {
            AstNode comp = parse_comprehension_tail("listcomp", std::move(first), s);
            expect_op(OpKind::RBracket, "]");
            close(comp, s);
            return comp;
        }
        AstNode lst = make_other("list", s);
        lst.children.push_back(maybe_as_pattern(std::move(first)));
        while (accept_op(OpKind::Comma)) {
            if (at_op(OpKind::RBracket)) break;
            lst.children.push_back(
                maybe_as_pattern(parse_star_or(&Parser::parse_namedexpr)));
        }
        expect_op(OpKind::RBracket, "]");
        close(lst, s);
        return lst;
    }

    AstNode parse_brace_atom(const Span& s) {
        next(); // {
        if (at_op(OpKind::RBrace)) {
            next();
            return make_other("dict", s);
        }
        if (accept_op(OpKind::DoubleStar)) {
            AstNode d = make_other("dict", s);
            AstNode unpack = make_other("dictunpack", s);
            unpack.children.push_back(parse_bitor());
            close(unpack, s);
            d.children.push_back(std::move(unpack));
            while (accept_op(OpKind::Comma)) {
                if (at_op(OpKind::RBrace)) break;
                parse_dict_entry_into(d);
            }
            expect_op(OpKind::RBrace, "}");
            close(d, s);
            return d;
        }
        AstNode first = parse_star_or(&Parser::parse_namedexpr);
        if (at_op(OpKind::Colon)) { // dict
            next();
            AstNode value = maybe_as_pattern(parse_test());
            if (at_kw("for") || (at_kw("async") && la(1).is_keyword("for"))) {
                AstNode comp = make_other("dictcomp", s);
                comp.children.push_back(std::move(first));
                comp.children.push_back(std::move(value));
                append_comprehension_clauses(comp);
                expect_op(OpKind::RBrace, "}");
                close(comp, s);
                return comp;
            }
            AstNode d = make_other("dict", s);
            d.children.push_back(std::move(first));
            d.children.push_back(std::move(value));
            while (accept_op(OpKind::Comma)) {
                if (at_op(OpKind::RBrace)) break;
                parse_dict_entry_into(d);
            }
            expect_op(OpKind::RBrace, "}");
            close(d, s);
            return d;
        }
        if (at_kw("for") || (at_kw("async") && la(1).is_keyword("for"))) {
            AstNode comp = parse_comprehension_tail("setcomp", std::move(first), s);
            expect_op(OpKind::RBrace, "}");
            close(comp, s);
            return comp;
        }
        AstNode set = make_other("set", s);
        set.children.push_back(std::move(first));
        while (accept_op(OpKind::Comma)) {
            if (at_op(OpKind::RBrace)) break;
            set.children.push_back(parse_star_or(&Parser::parse_namedexpr));
        }
        expect_op(OpKind::RBrace, "}");
        close(set, s);
        return set;
    }

    void parse_dict_entry_into(AstNode& d) {
        Span s = start_span();
        if (accept_op(OpKind::DoubleStar)) {
            AstNode unpack = make_other("dictunpack", s);
            unpack.children.push_back(parse_bitor());
            close(unpack, s);
            d.children.push_back(std::move(unpack));
            return;
        }
        d.children.push_back(parse_test());
        expect_op(OpKind::Colon, ":");
        d.children.push_back(maybe_as_pattern(parse_test()));
    }

    void append_comprehension_clauses(AstNode& comp) {
        for (;;) {
            Span cs = start_span();
            bool is_async = false;
            if (at_kw("async") && la(1).is_keyword("for")) {
                next();
                is_async = true;
            }
            if (!accept_kw("for")) break;
            AstNode clause = make_other("comprehension", cs);
            std::get<OtherPayload>(clause.payload).flag_a = is_async;
            AstNode target = parse_target_list();
            check_target(target, true);
            clause.children.push_back(std::move(target));
            if (!accept_kw("in")) fail("expected 'in'");
            clause.children.push_back(parse_or_test());
            while (at_kw("if")) {
                next();
                clause.children.push_back(parse_or_test_namedexpr());
            }
            close(clause, cs);
            comp.children.push_back(std::move(clause));
        }
    }

    // Adjacent string literals concatenate into one Constant.
    AstNode parse_string_concat() {
        Span s = start_span();
        ConstantPayload p;
        bool any_f = false, any_b = false;
        std::string value;
        while (at(TokType::String)) {
            any_f = any_f || cur().str.fstring;
            any_b = any_b || cur().str.bytes;
            value += cur().value;
            next();
        }
        if (any_f) {
            p.type = ConstantPayload::Type::FString;
        } else if (any_b) {
            p.type = ConstantPayload::Type::Bytes;
            p.str_value = std::move(value);
        } else {
            p.type = ConstantPayload::Type::Str;
            p.str_value = std::move(value);
        }
        return make(NodeKind::Constant, std::move(p), s);
    }

    static ConstantPayload number_payload(std::string_view text) {
        std::string clean;
        clean.reserve(text.size());
        for (char c : text) {
            if (c != '_') clean.push_back(c);
        }
        ConstantPayload p;
        bool imag = !clean.empty() && (clean.back() == 'j' || clean.back() == 'J');
        if (imag) clean.pop_back();
        bool is_float = false;
        if (clean.size() > 1 && clean[0] == '0' &&
            (clean[1] == 'x' || clean[1] == 'X' || clean[1] == 'o' ||
             clean[1] == 'O' || clean[1] == 'b' || clean[1] == 'B')) {
            is_float = false;
        } else {
            for (char c : clean) {
                if (c == '.' || c == 'e' || c == 'E') {
                    is_float = true;
                    break;
                }
            }
        }
        if (imag) {
            p.type = ConstantPayload::Type::Complex;
            p.float_value = std::strtod(clean.c_str(), nullptr);
            return p;
        }
        if (is_float) {
            p.type = ConstantPayload::Type::Float;
            p.float_value = std::strtod(clean.c_str(), nullptr);
            return p;
        }
        p.type = ConstantPayload::Type::Int;
        int base = 10;
        const char* digits = clean.c_str();
        if (clean.size() > 1 && clean[0] == '0') {
            char c = clean[1];
            if (c == 'x' || c == 'X') { base = 16; digits += 2; }
            else if (c == 'o' || c == 'O') { base = 8; digits += 2; }
            else if (c == 'b' || c == 'B') { base = 2; digits += 2; }
        }
        errno = 0;
        p.int_value = std::strtoll(digits, nullptr, base);
        p.int_fits = errno != ERANGE;
        return p;
    }
};

} // namespace

AstNode parse_python(std::string_view source) {
    Parser parser(lex(source));
    AstNode mod = parser.parse_module();
    link_parents(mod);
    return mod;
}

} // namespace mlsmell

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlsmell/span.hpp"

namespace mlsmell {

// Normalized node model. The kinds below carry typed payloads; every other
// Python construct is represented as Other and traversed generically through
// its children.
enum class NodeKind : std::uint8_t {
    Module, FunctionDef, ClassDef, Assign, AugAssign, ExprStmt, Call,
    Attribute, Name, Subscript, Compare, BinOp, For, While, If, With,
    Import, ImportFrom, Constant, Keyword, Return, Other,
};
inline constexpr int kNodeKindCount = 22;

using KindSet = std::uint32_t;
constexpr KindSet kind_bit(NodeKind k) { return KindSet{1} << static_cast<int>(k); }
constexpr KindSet kinds() { return 0; }
template <typename... Rest>
constexpr KindSet kinds(NodeKind first, Rest... rest) {
    return kind_bit(first) | kinds(rest...);
}
inline constexpr KindSet kAllKinds = (KindSet{1} << kNodeKindCount) - 1;

std::string_view node_kind_name(NodeKind k);

enum class CmpOp : std::uint8_t { Eq, NotEq, Lt, LtE, Gt, GtE, Is, IsNot, In, NotIn };
enum class BinOpKind : std::uint8_t {
    Add, Sub, Mult, MatMult, Div, Mod, Pow, LShift, RShift, BitOr, BitXor,
    BitAnd, FloorDiv,
};

struct NamePayload {
    std::string id;
};

struct AttributePayload {
    std::string attr; // children: [value]
};

struct ConstantPayload {
    enum class Type : std::uint8_t {
        None, Bool, Int, Float, Complex, Str, Bytes, Ellipsis, FString,
    };
    Type type = Type::None;
    bool bool_value = false;
    long long int_value = 0;
    bool int_fits = true; // false when the literal exceeds long long
    double float_value = 0.0;
    std::string str_value;

    bool is_int_zero() const { return type == Type::Int && int_fits && int_value == 0; }
    bool is_float_zero() const { return type == Type::Float && float_value == 0.0; }
    bool is_empty_str() const { return type == Type::Str && str_value.empty(); }
    bool is_true() const { return type == Type::Bool && bool_value; }
};

struct CallPayload {
    // children: [func, then arguments in source order]; positional arguments
    // are any non-Keyword children, keyword arguments are Keyword nodes.
    std::uint32_t n_args = 0; // number of positional arguments
};

struct KeywordPayload {
    std::optional<std::string> name; // nullopt for a **kwargs star argument
};

struct ComparePayload {
    std::vector<CmpOp> ops; // children: [left, comparators...]
};

struct BinOpPayload {
    BinOpKind op; // children: [left, right]
};

struct AssignPayload {
    std::uint32_t n_targets = 1; // children: [targets..., value]
};

struct AugAssignPayload {
    BinOpKind op; // children: [target, value]
};

struct ReturnPayload {
    bool has_value = false; // children: [value?]
};

struct FunctionDefPayload {
    std::string name;
    bool is_async = false;
    std::uint32_t n_decorators = 0;
    std::uint32_t n_params = 0;
    bool has_returns = false;
    // children: [decorators..., typeparams?, params(Other "param")...,
    //            returns?, body...]
    std::uint32_t body_start = 0;
};

struct ClassDefPayload {
    std::string name;
    std::uint32_t n_decorators = 0;
    // children: [decorators..., typeparams?, bases/keywords..., body...]
    std::uint32_t body_start = 0;
};

struct ForPayload {
    bool is_async = false;
    std::uint32_t n_body = 0; // children: [target, iter, body..., orelse...]
};

struct WhilePayload {
    std::uint32_t n_body = 0; // children: [test, body..., orelse...]
};

struct IfPayload {
    std::uint32_t n_body = 0; // children: [test, body..., orelse...]
};

struct WithPayload {
    bool is_async = false;
    std::uint32_t n_items = 0; // children: [items(Other "with_item")..., body...]
};

struct ImportAlias {
    std::string name;                   // dotted path as written
    std::optional<std::string> asname;
};

struct ImportPayload {
    std::vector<ImportAlias> names;
};

struct ImportFromPayload {
    std::string module; // empty for "from . import x"
    int level = 0;      // number of leading dots
    std::vector<ImportAlias> names;
    bool star = false;
};

// Catch-all for constructs outside the normalized kind list. `tag` names the
// construct ("tuple", "list", "lambda", "param", "slice", ...); children hold
// the constituent expressions/statements in source order.
struct OtherPayload {
    std::string tag;
    std::string text;    // e.g. the parameter name for tag == "param"
    bool flag_a = false; // tag-specific (param: has annotation)
    bool flag_b = false; // tag-specific (param: has default)
};

using Payload = std::variant<
    std::monostate, NamePayload, AttributePayload, ConstantPayload, CallPayload,
    KeywordPayload, ComparePayload, BinOpPayload, AssignPayload, AugAssignPayload,
    ReturnPayload, FunctionDefPayload, ClassDefPayload, ForPayload, WhilePayload,
    IfPayload, WithPayload, ImportPayload, ImportFromPayload, OtherPayload>;

struct AstNode {
    NodeKind kind = NodeKind::Other;
    Span span;
    std::vector<AstNode> children;
    Payload payload;
    const AstNode* parent = nullptr; // linked once after parsing

    AstNode() = default;
    AstNode(const AstNode&) = delete;
    AstNode& operator=(const AstNode&) = delete;
    // Moves re-seat the direct children's parent pointers so that linked
    // trees stay valid wherever the root finally lands.
    AstNode(AstNode&& other) noexcept
        : kind(other.kind),
          span(other.span),
          children(std::move(other.children)),
          payload(std::move(other.payload)),
          parent(other.parent) {
        for (auto& c : children) {
            if (c.parent == &other) c.parent = this;
        }
    }
    AstNode& operator=(AstNode&& other) noexcept {
        if (this != &other) {
            kind = other.kind;
            span = other.span;
            children = std::move(other.children);
            payload = std::move(other.payload);
            parent = other.parent;
            for (auto& c : children) {
                if (c.parent == &other) c.parent = this;
            }
        }
        return *this;
    }

    template <typename T>
    const T& as() const { return std::get<T>(payload); }
    template <typename T>
    const T* get_if() const { return std::get_if<T>(&payload); }

    const NamePayload* name() const { return get_if<NamePayload>(); }
    const AttributePayload* attribute() const { return get_if<AttributePayload>(); }
    const ConstantPayload* constant() const { return get_if<ConstantPayload>(); }
    const CallPayload* call() const { return get_if<CallPayload>(); }
    const OtherPayload* other() const { return get_if<OtherPayload>(); }

    bool is_other(std::string_view tag) const {
        const auto* o = other();
        return o != nullptr && o->tag == tag;
    }

    // Convenience accessors for conventional child layouts.
    const AstNode& call_func() const { return children.front(); }
    std::vector<const AstNode*> call_args() const {
        std::vector<const AstNode*> out;
        for (std::size_t i = 1; i < children.size(); ++i) {
            if (children[i].kind != NodeKind::Keyword) out.push_back(&children[i]);
        }
        return out;
    }
    std::vector<const AstNode*> call_keywords() const {
        std::vector<const AstNode*> out;
        for (std::size_t i = 1; i < children.size(); ++i) {
            if (children[i].kind == NodeKind::Keyword) out.push_back(&children[i]);
        }
        return out;
    }
    // Keyword argument node with the given name, or nullptr.
    const AstNode* find_keyword(std::string_view kw) const;
    bool has_star_kwargs() const;
    const AstNode& attr_value() const { return children.front(); }
    const AstNode& sub_value() const { return children.front(); }
    const AstNode& sub_slice() const { return children[1]; }
    std::span<const AstNode> assign_targets() const {
        return {children.data(), as<AssignPayload>().n_targets};
    }
    const AstNode& assign_value() const { return children.back(); }
    std::size_t tree_size() const;
};

// Sets `parent` links throughout the tree. Must run once after construction;
// afterwards the tree is immutable.
void link_parents(AstNode& root);

// Depth-first pre-order visitor dispatch. Visitors subscribe to a set of
// node kinds and are called exactly once per matching node, with the chain
// of ancestors (root first, parent last).
class NodeVisitor {
public:
    virtual ~NodeVisitor() = default;
    virtual KindSet subscriptions() const = 0;
    virtual void enter(const AstNode& node,
                       std::span<const AstNode* const> ancestry) = 0;
};

void walk(const AstNode& root, std::span<NodeVisitor* const> visitors);
void walk(const AstNode& root, NodeVisitor& visitor);

// Innermost ancestor whose kind is in `want`, or nullptr. Requires parent
// links (see link_parents).
const AstNode* enclosing(const AstNode& node, KindSet want);

// Wraps a callable as a visitor.
template <typename F>
class FnVisitor final : public NodeVisitor {
public:
    FnVisitor(KindSet subs, F fn) : subs_(subs), fn_(std::move(fn)) {}
    KindSet subscriptions() const override { return subs_; }
    void enter(const AstNode& node,
               std::span<const AstNode* const> ancestry) override {
        fn_(node, ancestry);
    }

private:
    KindSet subs_;
    F fn_;
};
template <typename F>
FnVisitor<F> make_visitor(KindSet subs, F fn) {
    return FnVisitor<F>(subs, std::move(fn));
}

} // namespace mlsmell

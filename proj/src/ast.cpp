#include "mlsmell/ast.hpp"

namespace mlsmell {

std::string_view node_kind_name(NodeKind k) {
    static constexpr std::string_view names[] = {
        "Module", "FunctionDef", "ClassDef", "Assign", "AugAssign", "ExprStmt",
        "Call", "Attribute", "Name", "Subscript", "Compare", "BinOp", "For",
        "While", "If", "With", "Import", "ImportFrom", "Constant", "Keyword",
        "Return", "Other",
    };
    return names[static_cast<int>(k)];
}

std::size_t AstNode::tree_size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.tree_size();
    return n;
}

const AstNode* AstNode::find_keyword(std::string_view kw) const {
    for (std::size_t i = 1; i < children.size(); ++i) {
        const AstNode& c = children[i];
        if (c.kind != NodeKind::Keyword) continue;
        const auto& p = c.as<KeywordPayload>();
        if (p.name && *p.name == kw) return &c;
    }
    return nullptr;
}

bool AstNode::has_star_kwargs() const {
    for (std::size_t i = 1; i < children.size(); ++i) {
        const AstNode& c = children[i];
        if (c.kind == NodeKind::Keyword && !c.as<KeywordPayload>().name) return true;
    }
    return false;
}

void link_parents(AstNode& root) {
    for (auto& child : root.children) {
        child.parent = &root;
        link_parents(child);
    }
}

namespace {

void walk_impl(const AstNode& node, std::span<NodeVisitor* const> visitors,
               KindSet any, std::vector<const AstNode*>& stack) {
    if (any & kind_bit(node.kind)) {
        for (NodeVisitor* v : visitors) {
            if (v->subscriptions() & kind_bit(node.kind)) {
                v->enter(node, stack);
            }
        }
    }
    stack.push_back(&node);
    for (const auto& child : node.children) {
        walk_impl(child, visitors, any, stack);
    }
    stack.pop_back();
}

} // namespace

void walk(const AstNode& root, std::span<NodeVisitor* const> visitors) {
    KindSet any = 0;
    for (NodeVisitor* v : visitors) any |= v->subscriptions();
    if (any == 0) return;
    std::vector<const AstNode*> stack;
    stack.reserve(64);
    walk_impl(root, visitors, any, stack);
}

void walk(const AstNode& root, NodeVisitor& visitor) {
    NodeVisitor* one[] = {&visitor};
    walk(root, std::span<NodeVisitor* const>(one));
}

const AstNode* enclosing(const AstNode& node, KindSet want) {
    for (const AstNode* p = node.parent; p != nullptr; p = p->parent) {
        if (want & kind_bit(p->kind)) return p;
    }
    return nullptr;
}

} // namespace mlsmell

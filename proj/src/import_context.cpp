#include "mlsmell/import_context.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace mlsmell {

namespace {

std::string root_of(std::string_view dotted) {
    auto dot = dotted.find('.');
    return std::string(dot == std::string_view::npos ? dotted
                                                     : dotted.substr(0, dot));
}

} // namespace

ImportTable build_import_table(const AstNode& module) {
    ImportTable table;
    auto add_wildcard = [&](const std::string& mod) {
        if (std::find(table.wildcard_modules.begin(), table.wildcard_modules.end(),
                      mod) == table.wildcard_modules.end()) {
            table.wildcard_modules.push_back(mod);
        }
    };
    auto vis = make_visitor(
        kinds(NodeKind::Import, NodeKind::ImportFrom),
        [&](const AstNode& node, std::span<const AstNode* const>) {
            if (node.kind == NodeKind::Import) {
                for (const auto& alias : node.as<ImportPayload>().names) {
                    table.imported_roots.insert(root_of(alias.name));
                    if (alias.asname) {
                        table.aliases[*alias.asname] = alias.name;
                    } else {
                        // "import a.b" binds the name "a"
                        std::string root = root_of(alias.name);
                        table.aliases[root] = root;
                    }
                }
                return;
            }
            const auto& p = node.as<ImportFromPayload>();
            if (p.level > 0) return; // relative import: never a library symbol
            if (p.module.empty()) return;
            table.imported_roots.insert(root_of(p.module));
            if (p.star) {
                add_wildcard(p.module);
                return;
            }
            for (const auto& alias : p.names) {
                const std::string& local = alias.asname ? *alias.asname : alias.name;
                table.aliases[local] = p.module + "." + alias.name;
            }
        });
    walk(module, vis);
    return table;
}

bool symbol_pattern_match(std::string_view path, std::string_view pattern) {
    if (pattern.size() >= 2 && pattern.substr(pattern.size() - 2) == ".*") {
        std::string_view prefix = pattern.substr(0, pattern.size() - 1); // keep '.'
        return path.size() > prefix.size() && path.substr(0, prefix.size()) == prefix;
    }
    if (pattern.find('*') == std::string_view::npos) return path == pattern;
    // component-wise, '*' within a component only
    std::size_t pi = 0, si = 0;
    for (;;) {
        std::size_t pd = pattern.find('.', pi);
        std::size_t sd = path.find('.', si);
        std::string_view pc = pd == std::string_view::npos
                                  ? pattern.substr(pi)
                                  : pattern.substr(pi, pd - pi);
        std::string_view sc =
            sd == std::string_view::npos ? path.substr(si) : path.substr(si, sd - si);
        // glob within the component
        std::function<bool(std::size_t, std::size_t)> m = [&](std::size_t a,
                                                              std::size_t b) {
            while (a < pc.size()) {
                if (pc[a] == '*') {
                    for (std::size_t t = b; t <= sc.size(); ++t) {
                        if (m(a + 1, t)) return true;
                    }
                    return false;
                }
                if (b >= sc.size() || (pc[a] != '?' && pc[a] != sc[b])) return false;
                ++a;
                ++b;
            }
            return b == sc.size();
        };
        if (!m(0, 0)) return false;
        if (pd == std::string_view::npos || sd == std::string_view::npos) {
            return pd == std::string_view::npos && sd == std::string_view::npos;
        }
        pi = pd + 1;
        si = sd + 1;
    }
}

bool Resolution::matches(std::string_view symbol) const {
    if (confidence == Confidence::Exact) return path == symbol;
    if (confidence == Confidence::Wildcard) {
        for (const auto& c : candidates) {
            if (c == symbol) return true;
        }
    }
    return false;
}

bool Resolution::matches_pattern(std::string_view pattern) const {
    if (confidence == Confidence::Exact) return symbol_pattern_match(path, pattern);
    if (confidence == Confidence::Wildcard) {
        for (const auto& c : candidates) {
            if (symbol_pattern_match(c, pattern)) return true;
        }
    }
    return false;
}

namespace {

// Follows Name / Attribute chains only; anything else ends the chain.
Resolution resolve_chain(const AstNode& expr, const ImportTable& table) {
    if (expr.kind == NodeKind::Name) {
        const std::string& id = expr.as<NamePayload>().id;
        auto it = table.aliases.find(id);
        if (it != table.aliases.end()) {
            Resolution r;
            r.confidence = Confidence::Exact;
            r.path = it->second;
            return r;
        }
        if (!table.wildcard_modules.empty()) {
            Resolution r;
            r.confidence = Confidence::Wildcard;
            for (const auto& m : table.wildcard_modules) {
                r.candidates.push_back(m + "." + id);
            }
            return r;
        }
        return {};
    }
    if (expr.kind == NodeKind::Attribute) {
        Resolution base = resolve_chain(expr.attr_value(), table);
        if (!base.known()) return {};
        const std::string& attr = expr.as<AttributePayload>().attr;
        if (base.confidence == Confidence::Exact) {
            base.path += "." + attr;
        } else {
            for (auto& c : base.candidates) c += "." + attr;
        }
        return base;
    }
    return {};
}

} // namespace

Resolution resolve(const AstNode& expr, const ImportTable& table) {
    if (expr.kind == NodeKind::Call) return resolve_chain(expr.call_func(), table);
    return resolve_chain(expr, table);
}

bool DataFrameLikeness::is_dataframe_like(std::string_view name, int line) const {
    auto it = events.find(std::string(name));
    if (it == events.end()) return false;
    bool state = false;
    bool seen = false;
    for (const Event& e : it->second) {
        if (e.line <= line) {
            state = e.becomes;
            seen = true;
        }
    }
    return seen && state;
}

std::set<std::string> DataFrameLikeness::names_at_end() const {
    std::set<std::string> out;
    for (const auto& [name, evs] : events) {
        if (!evs.empty() && evs.back().becomes) out.insert(name);
    }
    return out;
}

const ConstructionIndex::Event* ConstructionIndex::constructed_from(
    std::string_view name, int line) const {
    auto it = events.find(std::string(name));
    if (it == events.end()) return nullptr;
    const Event* found = nullptr;
    for (const Event& e : it->second) {
        if (e.line <= line) found = &e;
    }
    if (found == nullptr || found->ctor.empty()) return nullptr;
    return found;
}

namespace {

bool is_scope_node(const AstNode& n) {
    return n.kind == NodeKind::FunctionDef || n.kind == NodeKind::ClassDef;
}

// Pre-order over the nodes belonging to one scope; nested function/class
// bodies and lambdas are not entered (the nodes themselves are still seen,
// so their names register as bindings).
template <typename Fn>
void walk_scope_node(const AstNode& node, Fn& fn) {
    fn(node);
    if (is_scope_node(node) || node.is_other("lambda")) return;
    for (const auto& c : node.children) walk_scope_node(c, fn);
}

template <typename Fn>
void for_each_scope_node(const AstNode& scope, Fn fn) {
    std::size_t begin = 0;
    if (scope.kind == NodeKind::FunctionDef) {
        begin = scope.as<FunctionDefPayload>().body_start;
    } else if (scope.kind == NodeKind::ClassDef) {
        begin = scope.as<ClassDefPayload>().body_start;
    }
    for (std::size_t i = begin; i < scope.children.size(); ++i) {
        walk_scope_node(scope.children[i], fn);
    }
}

void bound_names(const AstNode& target, std::vector<const AstNode*>& out) {
    if (target.kind == NodeKind::Name) {
        out.push_back(&target);
        return;
    }
    if (target.is_other("tuple") || target.is_other("list") ||
        target.is_other("starred")) {
        for (const auto& c : target.children) bound_names(c, out);
    }
}

struct DfBuilder {
    const ImportTable& table;
    const PandasCatalog& catalog;
    DataFrameLikeness out;
    // final dataframe-like sets of enclosing scopes, innermost first
    std::vector<const std::set<std::string>*> outer;

    bool lookup(const std::string& id, int line) const {
        if (out.tracks(id)) return out.is_dataframe_like(id, line);
        for (const auto* names : outer) {
            if (names->count(id)) return true;
        }
        return false;
    }

    bool expr_is_df(const AstNode& expr) const {
        switch (expr.kind) {
        case NodeKind::Name:
            return lookup(expr.as<NamePayload>().id, expr.span.line);
        case NodeKind::Call: {
            Resolution r = resolve(expr, table);
            if (r.confidence == Confidence::Exact &&
                catalog.constructors.count(r.path)) {
                return true;
            }
            const AstNode& func = expr.call_func();
            if (func.kind == NodeKind::Attribute &&
                catalog.propagating_methods.count(
                    func.as<AttributePayload>().attr)) {
                return expr_is_df(func.attr_value());
            }
            return false;
        }
        default:
            return false;
        }
    }

    void bind(const AstNode& target, bool becomes, const AstNode* producer) {
        std::vector<const AstNode*> names;
        bound_names(target, names);
        bool direct = target.kind == NodeKind::Name;
        for (const AstNode* n : names) {
            const std::string& id = n->as<NamePayload>().id;
            bool value = becomes && direct; // tuple unpacking stays conservative
            out.events[id].push_back({n->span.line, value});
            if (value && producer != nullptr) out.origin[id] = producer->span;
        }
    }

    void operator()(const AstNode& node) {
        switch (node.kind) {
        case NodeKind::Assign: {
            const AstNode& value = node.assign_value();
            bool df = expr_is_df(value);
            for (const AstNode& t : node.assign_targets()) {
                bind(t, df, df ? &value : nullptr);
            }
            return;
        }
        case NodeKind::For:
            bind(node.children[0], false, nullptr);
            return;
        case NodeKind::With: {
            auto n_items = node.as<WithPayload>().n_items;
            for (std::uint32_t i = 0; i < n_items; ++i) {
                const AstNode& item = node.children[i];
                if (item.is_other("with_item") && item.children.size() > 1) {
                    bind(item.children[1], false, nullptr);
                }
            }
            return;
        }
        case NodeKind::FunctionDef:
            out.events[node.as<FunctionDefPayload>().name].push_back(
                {node.span.line, false});
            return;
        case NodeKind::ClassDef:
            out.events[node.as<ClassDefPayload>().name].push_back(
                {node.span.line, false});
            return;
        case NodeKind::Import:
            for (const auto& a : node.as<ImportPayload>().names) {
                std::string local = a.asname ? *a.asname : root_of(a.name);
                out.events[local].push_back({node.span.line, false});
            }
            return;
        case NodeKind::ImportFrom:
            for (const auto& a : node.as<ImportFromPayload>().names) {
                out.events[a.asname ? *a.asname : a.name].push_back(
                    {node.span.line, false});
            }
            return;
        case NodeKind::Other: {
            const auto& o = node.as<OtherPayload>();
            if (o.tag == "annassign") {
                if (o.flag_a) { // has a value
                    const AstNode& value = node.children.back();
                    bool df = expr_is_df(value);
                    bind(node.children[0], df, df ? &value : nullptr);
                }
                return;
            }
            if (o.tag == "del") {
                for (const auto& c : node.children) bind(c, false, nullptr);
                return;
            }
            return;
        }
        default:
            return;
        }
    }

    void add_params(const AstNode& fn_scope) {
        auto body_start = fn_scope.as<FunctionDefPayload>().body_start;
        for (std::uint32_t i = 0; i < body_start; ++i) {
            const AstNode& c = fn_scope.children[i];
            const auto* o = c.other();
            if (o == nullptr) continue;
            if (o->tag != "param" && o->tag != "param_star" &&
                o->tag != "param_dstar") {
                continue;
            }
            bool df = false;
            if (o->tag == "param" && o->flag_a) { // annotated
                Resolution r = resolve(c.children.front(), table);
                df = r.confidence == Confidence::Exact &&
                     r.path == "pandas.DataFrame";
            }
            out.events[o->text].push_back({c.span.line, df});
        }
    }
};

} // namespace

DataFrameLikeness dataframe_names(const AstNode& scope, const ImportTable& table,
                                  const PandasCatalog& catalog) {
    DfBuilder builder{table, catalog, {}, {}};
    if (scope.kind == NodeKind::FunctionDef) builder.add_params(scope);
    for_each_scope_node(scope, std::ref(builder));
    return std::move(builder.out);
}

namespace {

struct CtorBuilder {
    const ImportTable& table;
    ConstructionIndex out;

    void bind_clear(const AstNode& target, int line) {
        std::vector<const AstNode*> names;
        bound_names(target, names);
        for (const AstNode* n : names) {
            out.events[n->as<NamePayload>().id].push_back(
                {line, "", Confidence::Unknown});
        }
    }

    void handle_assign(const AstNode& target, const AstNode& value, int line) {
        if (target.kind != NodeKind::Name) {
            bind_clear(target, line);
            return;
        }
        const std::string& id = target.as<NamePayload>().id;
        if (value.kind == NodeKind::Call) {
            Resolution r = resolve(value, table);
            if (r.known()) {
                out.events[id].push_back({line, r.primary(), r.confidence});
                return;
            }
        }
        out.events[id].push_back({line, "", Confidence::Unknown});
    }

    void operator()(const AstNode& node) {
        switch (node.kind) {
        case NodeKind::Assign: {
            for (const AstNode& t : node.assign_targets()) {
                handle_assign(t, node.assign_value(), node.span.line);
            }
            return;
        }
        case NodeKind::For:
            bind_clear(node.children[0], node.span.line);
            return;
        case NodeKind::Other: {
            const auto& o = node.as<OtherPayload>();
            if (o.tag == "annassign" && o.flag_a) {
                handle_assign(node.children[0], node.children.back(),
                              node.span.line);
            } else if (o.tag == "del") {
                for (const auto& c : node.children) bind_clear(c, node.span.line);
            }
            return;
        }
        default:
            return;
        }
    }
};

} // namespace

ConstructionIndex build_construction_index(const AstNode& scope,
                                           const ImportTable& table) {
    CtorBuilder builder{table, {}};
    for_each_scope_node(scope, std::ref(builder));
    return std::move(builder.out);
}

ScopeContext::ScopeContext(const AstNode& module, const ImportTable& table,
                           const PandasCatalog& catalog) {
    // Collect scope nodes outer-first so parents are built before children.
    struct Item {
        const AstNode* node;
        const Scope* parent;
    };
    std::vector<Item> queue{{&module, nullptr}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const AstNode* node = queue[qi].node;
        auto scope = std::make_unique<Scope>();
        scope->node = node;
        scope->parent = queue[qi].parent;
        scope->is_class = node->kind == NodeKind::ClassDef;

        DfBuilder df_builder{table, catalog, {}, {}};
        // Final sets of enclosing non-class scopes, innermost first. Class
        // scopes are invisible to code nested below them.
        std::vector<std::set<std::string>> finals;
        for (const Scope* p = scope->parent; p != nullptr; p = p->parent) {
            if (p->is_class) continue;
            finals.push_back(p->df.names_at_end());
        }
        for (const auto& f : finals) df_builder.outer.push_back(&f);
        if (node->kind == NodeKind::FunctionDef) df_builder.add_params(*node);
        for_each_scope_node(*node, std::ref(df_builder));
        scope->df = std::move(df_builder.out);
        scope->ctors = build_construction_index(*node, table);

        const Scope* raw = scope.get();
        by_node_[node] = raw;
        scopes_.push_back(std::move(scope));

        std::function<void(const AstNode&)> find_nested = [&](const AstNode& n) {
            for (const auto& c : n.children) {
                if (is_scope_node(c)) {
                    queue.push_back({&c, raw});
                } else {
                    find_nested(c);
                }
            }
        };
        // Nested scopes directly inside this one.
        std::size_t begin = 0;
        if (node->kind == NodeKind::FunctionDef) {
            begin = node->as<FunctionDefPayload>().body_start;
        } else if (node->kind == NodeKind::ClassDef) {
            begin = node->as<ClassDefPayload>().body_start;
        }
        for (std::size_t i = begin; i < node->children.size(); ++i) {
            const AstNode& c = node->children[i];
            if (is_scope_node(c)) {
                queue.push_back({&c, raw});
            } else {
                find_nested(c);
            }
        }
    }
}

const ScopeContext::Scope* ScopeContext::scope_of(const AstNode& node) const {
    for (const AstNode* p = node.parent; p != nullptr; p = p->parent) {
        auto it = by_node_.find(p);
        if (it != by_node_.end()) return it->second;
    }
    // The module itself is always registered.
    auto it = by_node_.find(&node);
    return it != by_node_.end() ? it->second : nullptr;
}

bool ScopeContext::dataframe_like(const AstNode& name_node) const {
    if (name_node.kind != NodeKind::Name) return false;
    const std::string& id = name_node.as<NamePayload>().id;
    const Scope* s = scope_of(name_node);
    bool own = true;
    for (const Scope* sc = s; sc != nullptr; sc = sc->parent) {
        if (!own && sc->is_class) continue; // class scope invisible to closures
        if (sc->df.tracks(id)) {
            int line = own ? name_node.span.line : INT_MAX;
            return sc->df.is_dataframe_like(id, line);
        }
        own = false;
    }
    return false;
}

const ConstructionIndex::Event* ScopeContext::construction_of(
    const AstNode& name_node) const {
    if (name_node.kind != NodeKind::Name) return nullptr;
    const std::string& id = name_node.as<NamePayload>().id;
    const Scope* s = scope_of(name_node);
    bool own = true;
    for (const Scope* sc = s; sc != nullptr; sc = sc->parent) {
        if (!own && sc->is_class) continue;
        if (sc->ctors.events.count(id)) {
            int line = own ? name_node.span.line : INT_MAX;
            return sc->ctors.constructed_from(id, line);
        }
        own = false;
    }
    return nullptr;
}

} // namespace mlsmell

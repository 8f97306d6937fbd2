#include "mlsmell/checkers.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace mlsmell {

void Checker::report(const ModuleContext& ctx, const Span& at,
                     const std::string& symbol) {
    Finding f;
    f.rule_id = rule_.id;
    f.classification = rule_.classification;
    f.path = ctx.path;
    f.span = at;
    f.symbol = symbol;
    f.message = rule_.render_message(symbol);
    pending_.push_back(std::move(f));
}

bool Checker::accepted(const Resolution& r) const {
    if (r.confidence == Confidence::Exact) return true;
    if (r.confidence == Confidence::Wildcard) {
        return rule_.classification == Classification::CSA;
    }
    return false;
}

bool Checker::resolves_to(const AstNode& expr, const ModuleContext& ctx,
                          const std::vector<std::string>& symbols,
                          std::string* matched) const {
    Resolution r = resolve(expr, *ctx.imports);
    if (!accepted(r)) return false;
    for (const auto& sym : symbols) {
        if (r.matches(sym)) {
            if (matched != nullptr) *matched = sym;
            return true;
        }
    }
    return false;
}

namespace {

bool is_method_call(const AstNode& call, std::string_view attr) {
    if (call.kind != NodeKind::Call) return false;
    const AstNode& func = call.call_func();
    return func.kind == NodeKind::Attribute &&
           func.as<AttributePayload>().attr == attr;
}

bool has_any_argument(const AstNode& call) { return call.children.size() > 1; }

bool name_in_subtree(const AstNode& node, const std::string& id) {
    if (node.kind == NodeKind::Name && node.as<NamePayload>().id == id) {
        return true;
    }
    for (const auto& c : node.children) {
        if (name_in_subtree(c, id)) return true;
    }
    return false;
}

constexpr KindSet kLoopKinds = kinds(NodeKind::For, NodeKind::While);

// ---- CS2 -------------------------------------------------------------------

class NanEquivalenceChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Compare); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        const auto& ops = node.as<ComparePayload>().ops;
        bool eq = std::any_of(ops.begin(), ops.end(), [](CmpOp op) {
            return op == CmpOp::Eq || op == CmpOp::NotEq;
        });
        if (!eq) return;
        const auto& nans = rule_.symbol_list("nan_constants");
        for (const auto& operand : node.children) {
            std::string sym;
            if (resolves_to(operand, ctx, nans, &sym)) {
                report(ctx, node.span, sym);
                return;
            }
        }
    }
};

// ---- CS3 -------------------------------------------------------------------

class ChainIndexingChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Subscript); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        if (node.sub_value().kind != NodeKind::Subscript) return;
        // report once per chain, at the outermost subscript
        const AstNode* p = node.parent;
        if (p != nullptr && p->kind == NodeKind::Subscript &&
            &p->children.front() == &node) {
            return;
        }
        const AstNode* base = &node.sub_value();
        while (base->kind == NodeKind::Subscript) base = &base->sub_value();
        if (base->kind != NodeKind::Name) return;
        if (!ctx.scopes->dataframe_like(*base)) return;
        report(ctx, node.span, "pandas.DataFrame");
    }
};

// ---- CS4 -------------------------------------------------------------------

class ReaderDtypeChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        std::string sym;
        if (!resolves_to(node, ctx, rule_.symbol_list("readers"), &sym)) return;
        if (node.find_keyword("dtype") != nullptr) return;
        if (node.has_star_kwargs()) return; // dtype may hide in **kwargs
        report(ctx, node.span, sym);
    }
};

// ---- CS5 -------------------------------------------------------------------

class EmptyColumnInitChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Assign); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        const auto* c = node.assign_value().constant();
        if (c == nullptr ||
            !(c->is_int_zero() || c->is_float_zero() || c->is_empty_str())) {
            return;
        }
        for (const AstNode& target : node.assign_targets()) {
            if (target.kind != NodeKind::Subscript) continue;
            const AstNode& base = target.sub_value();
            if (base.kind != NodeKind::Name) continue;
            if (!ctx.scopes->dataframe_like(base)) continue;
            report(ctx, target.span, "pandas.DataFrame");
        }
    }
};

// ---- CS6 -------------------------------------------------------------------

class MergeParamsChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        std::string sym;
        bool hit = false;
        const AstNode& func = node.call_func();
        if (func.kind == NodeKind::Attribute) {
            const std::string& attr = func.as<AttributePayload>().attr;
            const auto& methods = rule_.symbol_list("methods");
            if (std::find(methods.begin(), methods.end(), attr) != methods.end()) {
                const AstNode& recv = func.attr_value();
                if (recv.kind == NodeKind::Name &&
                    ctx.scopes->dataframe_like(recv)) {
                    hit = true;
                    sym = "pandas.DataFrame." + attr;
                }
            }
        }
        if (!hit && resolves_to(node, ctx, rule_.symbol_list("functions"), &sym)) {
            hit = true;
        }
        if (!hit) return;
        if (node.has_star_kwargs()) return;
        if (node.find_keyword("how") == nullptr ||
            node.find_keyword("on") == nullptr) {
            report(ctx, node.span, sym);
        }
    }
};

// ---- CS7 -------------------------------------------------------------------

class InplaceMisusedChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::ExprStmt); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        const AstNode& value = node.children.front();
        if (value.kind != NodeKind::Call) return;
        const AstNode& func = value.call_func();
        if (func.kind == NodeKind::Attribute) {
            const std::string& attr = func.as<AttributePayload>().attr;
            const auto& methods = rule_.symbol_list("methods");
            if (std::find(methods.begin(), methods.end(), attr) != methods.end()) {
                const AstNode& recv = func.attr_value();
                if (recv.kind == NodeKind::Name &&
                    ctx.scopes->dataframe_like(recv)) {
                    const AstNode* kw = value.find_keyword("inplace");
                    if (kw != nullptr) {
                        const auto* flag = kw->children.front().constant();
                        if (flag != nullptr && flag->is_true()) return;
                    }
                    report(ctx, value.span, "pandas.DataFrame." + attr);
                    return;
                }
            }
        }
        std::string sym;
        if (resolves_to(value, ctx, rule_.symbol_list("functions"), &sym)) {
            if (value.find_keyword("out") != nullptr) return; // in-place via out=
            report(ctx, value.span, sym);
        }
    }
};

// ---- CS8 -------------------------------------------------------------------

class ValuesConversionChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Attribute); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        if (node.as<AttributePayload>().attr != "values") return;
        const AstNode* p = node.parent;
        if (p != nullptr && p->kind == NodeKind::Call &&
            &p->children.front() == &node) {
            return; // d.values() is a call, not the conversion read
        }
        const AstNode& recv = node.attr_value();
        if (recv.kind != NodeKind::Name || !ctx.scopes->dataframe_like(recv)) {
            return;
        }
        report(ctx, node.span, "pandas.DataFrame.values");
    }
};

// ---- CS9 -------------------------------------------------------------------

class MatmulApiChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        std::string sym;
        if (!resolves_to(node, ctx, rule_.symbol_list("functions"), &sym)) return;
        if (node.as<CallPayload>().n_args != 2) return;
        report(ctx, node.span, sym);
    }
};

// ---- CS11 ------------------------------------------------------------------

class HyperparameterChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        Resolution r = resolve(node, *ctx.imports);
        if (!accepted(r)) return;
        for (const auto& est : catalog_.estimators()) {
            if (!r.matches(est.path)) continue;
            if (node.call_keywords().empty()) {
                report(ctx, node.span, est.path);
            }
            return;
        }
    }
};

// ---- CS13 ------------------------------------------------------------------

class DeterministicOptionChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        if (is_method_call(node, "backward") && !first_backward_) {
            first_backward_ = node.span;
        }
        std::string sym;
        if (resolves_to(node, ctx, rule_.symbol_list("deterministic_call"), &sym)) {
            if (argument_is_true(node)) deterministic_ = true;
        }
    }
    void finish(const ModuleContext& ctx) override {
        if (first_backward_ && !deterministic_) {
            report(ctx, *first_backward_, "torch.use_deterministic_algorithms");
        }
    }

private:
    static bool argument_is_true(const AstNode& call) {
        auto args = call.call_args();
        if (!args.empty()) {
            const auto* c = args.front()->constant();
            if (c != nullptr && c->is_true()) return true;
        }
        const AstNode* kw = call.find_keyword("mode");
        if (kw != nullptr) {
            const auto* c = kw->children.front().constant();
            if (c != nullptr && c->is_true()) return true;
        }
        return false;
    }

    std::optional<Span> first_backward_;
    bool deterministic_ = false;
};

// ---- CS14 ------------------------------------------------------------------

class RandomnessChecker final : public Checker {
public:
    RandomnessChecker(const SmellRule& rule, const RuleCatalog& catalog)
        : Checker(rule, catalog), states_(catalog.random_domains().size()) {
        for (const auto& path : catalog.random_state_callables()) {
            rs_callables_.push_back(path);
        }
        for (const auto& est : catalog.estimators()) {
            if (est.accepts_random_state) rs_callables_.push_back(est.path);
        }
    }
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        Resolution r = resolve(node, *ctx.imports);
        if (!accepted(r)) return;
        const auto& domains = catalog_.random_domains();
        for (std::size_t i = 0; i < domains.size(); ++i) {
            for (const auto& pat : domains[i].use_patterns) {
                if (r.matches_pattern(pat) && !states_[i].used) {
                    states_[i].used = true;
                    states_[i].first = node.span;
                    states_[i].symbol = r.primary();
                }
            }
            for (const auto& seed : domains[i].seeds) {
                if (r.matches(seed.path) &&
                    (!seed.requires_args || has_any_argument(node))) {
                    states_[i].seeded = true;
                }
            }
        }
        // splitters / estimators that accept random_state
        for (const auto& path : rs_callables_) {
            if (!r.matches(path)) continue;
            if (node.find_keyword("random_state") == nullptr &&
                !node.has_star_kwargs()) {
                report(ctx, node.span, path);
            }
            return;
        }
    }
    void finish(const ModuleContext& ctx) override {
        for (const auto& st : states_) {
            if (st.used && !st.seeded) report(ctx, st.first, st.symbol);
        }
    }

private:
    struct DomainState {
        bool used = false;
        bool seeded = false;
        Span first;
        std::string symbol;
    };
    std::vector<DomainState> states_;
    std::vector<std::string> rs_callables_;
};

// ---- CS15 ------------------------------------------------------------------

class LogMaskChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        std::string sym;
        if (!resolves_to(node, ctx, rule_.symbol_list("log_functions"), &sym)) {
            return;
        }
        auto args = node.call_args();
        if (args.empty()) return;
        const AstNode& first = *args.front();
        if (first.kind == NodeKind::Call &&
            resolves_to(first, ctx, rule_.symbol_list("mask_functions"))) {
            return;
        }
        report(ctx, node.span, sym);
    }
};

// ---- CS17 ------------------------------------------------------------------

class TensorArrayChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Assign); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        const AstNode& value = node.assign_value();
        if (value.kind != NodeKind::Call) return;
        if (resolves_to(value, ctx, rule_.symbol_list("initializers"))) {
            for (const AstNode& t : node.assign_targets()) {
                if (t.kind == NodeKind::Name) {
                    init_lines_[t.as<NamePayload>().id].push_back(node.span.line);
                }
            }
            return;
        }
        std::string sym;
        if (!resolves_to(value, ctx, rule_.symbol_list("concat_functions"), &sym)) {
            return;
        }
        const AstNode* loop = enclosing(node, kLoopKinds);
        if (loop == nullptr) return;
        for (const AstNode& t : node.assign_targets()) {
            if (t.kind != NodeKind::Name) continue;
            const std::string& id = t.as<NamePayload>().id;
            bool among_inputs = false;
            for (std::size_t i = 1; i < value.children.size(); ++i) {
                if (name_in_subtree(value.children[i], id)) {
                    among_inputs = true;
                    break;
                }
            }
            if (!among_inputs) continue;
            auto it = init_lines_.find(id);
            if (it == init_lines_.end()) continue;
            bool before_loop = std::any_of(
                it->second.begin(), it->second.end(),
                [&](int line) { return line < loop->span.line; });
            if (before_loop) {
                report(ctx, node.span, sym);
                return;
            }
        }
    }

private:
    std::map<std::string, std::vector<int>> init_lines_;
};

// ---- CS19 ------------------------------------------------------------------

class ForwardCallChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        if (!is_method_call(node, "forward")) return;
        const AstNode& recv = node.call_func().attr_value();
        if (recv.kind == NodeKind::Call &&
            recv.call_func().kind == NodeKind::Name &&
            recv.call_func().as<NamePayload>().id == "super") {
            return; // super().forward(x) is the sanctioned override idiom
        }
        report(ctx, node.span, "torch.nn.Module.forward");
    }
};

// ---- CSA1 ------------------------------------------------------------------

class UnnecessaryIterationChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::For); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        const AstNode& iter = node.children[1];
        if (iter.kind == NodeKind::Call) {
            const AstNode& func = iter.call_func();
            if (func.kind != NodeKind::Attribute) return;
            const std::string& attr = func.as<AttributePayload>().attr;
            const auto& methods = rule_.symbol_list("iteration_methods");
            if (std::find(methods.begin(), methods.end(), attr) == methods.end()) {
                return;
            }
            const AstNode& recv = func.attr_value();
            if (recv.kind == NodeKind::Name && ctx.scopes->dataframe_like(recv)) {
                report(ctx, iter.span, "pandas.DataFrame." + attr);
            }
            return;
        }
        if (iter.kind == NodeKind::Name && ctx.scopes->dataframe_like(iter)) {
            report(ctx, iter.span, "pandas.DataFrame");
            return;
        }
        if (iter.kind == NodeKind::Subscript &&
            iter.sub_value().kind == NodeKind::Name &&
            ctx.scopes->dataframe_like(iter.sub_value())) {
            report(ctx, iter.span, "pandas.DataFrame");
        }
    }
};

// ---- CSA12 -----------------------------------------------------------------

class MemoryNotFreedChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        Resolution r = resolve(node, *ctx.imports);
        if (!accepted(r)) return;
        bool match = false;
        for (const auto& pat : rule_.symbol_list("constructors")) {
            if (r.matches_pattern(pat)) {
                match = true;
                break;
            }
        }
        if (!match) return;
        const AstNode* loop = enclosing(node, kLoopKinds);
        if (loop == nullptr) return;
        if (subtree_has_release(*loop, ctx)) return;
        const std::string* target = assigned_name(node);
        if (target != nullptr && subtree_has_del(*loop, *target)) return;
        report(ctx, node.span, r.primary());
    }

private:
    bool subtree_has_release(const AstNode& node, const ModuleContext& ctx) const {
        if (node.kind == NodeKind::Call &&
            resolves_to(node, ctx, rule_.symbol_list("release_calls"))) {
            return true;
        }
        for (const auto& c : node.children) {
            if (subtree_has_release(c, ctx)) return true;
        }
        return false;
    }
    static const std::string* assigned_name(const AstNode& call) {
        const AstNode* p = call.parent;
        if (p == nullptr) return nullptr;
        if (p->kind == NodeKind::Assign && &p->assign_value() == &call) {
            const AstNode& t = p->children.front();
            if (t.kind == NodeKind::Name) return &t.as<NamePayload>().id;
        }
        return nullptr;
    }
    static bool subtree_has_del(const AstNode& node, const std::string& id) {
        if (node.is_other("del") && name_in_subtree(node, id)) return true;
        for (const auto& c : node.children) {
            if (subtree_has_del(c, id)) return true;
        }
        return false;
    }
};

// ---- CSA16 -----------------------------------------------------------------

class BroadcastingChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        std::string sym;
        if (resolves_to(node, ctx, rule_.symbol_list("tile_functions"), &sym)) {
            report(ctx, node.span, sym);
        }
    }
};

// ---- CSA18 -----------------------------------------------------------------

class ModeTogglingChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext&) override {
        if (is_method_call(node, "eval")) {
            eval_calls_.push_back(node.span);
        } else if (is_method_call(node, "train")) {
            train_lines_.push_back(node.span.line);
        } else if (is_method_call(node, "backward")) {
            has_backward_ = true;
        }
    }
    void finish(const ModuleContext& ctx) override {
        if (!has_backward_) return; // inference-only file
        for (const Span& eval : eval_calls_) {
            bool resumed = std::any_of(train_lines_.begin(), train_lines_.end(),
                                       [&](int l) { return l > eval.line; });
            if (!resumed) report(ctx, eval, "torch.nn.Module.eval");
        }
    }

private:
    std::vector<Span> eval_calls_;
    std::vector<int> train_lines_;
    bool has_backward_ = false;
};

// ---- CSA20 -----------------------------------------------------------------

class GradientsNotClearedChecker final : public Checker {
public:
    using Checker::Checker;
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        if (!is_method_call(node, "backward")) return;
        const AstNode* loop = enclosing(node, kLoopKinds);
        if (loop == nullptr) return;
        if (has_zero_grad_before(*loop, node.span.line)) return;
        report(ctx, node.span, "torch.Tensor.backward");
    }

private:
    static bool has_zero_grad_before(const AstNode& node, int line) {
        if (node.kind == NodeKind::Call && is_method_call(node, "zero_grad") &&
            node.span.line <= line) {
            return true;
        }
        for (const auto& c : node.children) {
            if (has_zero_grad_before(c, line)) return true;
        }
        return false;
    }
};

// ---- CSA21 -----------------------------------------------------------------

class DataLeakageChecker final : public Checker {
public:
    DataLeakageChecker(const SmellRule& rule, const RuleCatalog& catalog)
        : Checker(rule, catalog) {
        for (const auto& t : rule.symbol_list("transformers")) {
            fit_targets_.insert(t);
        }
        // estimators count as leakage-relevant receivers too, sklearn only
        for (const auto& est : catalog.estimators()) {
            if (est.path.rfind("sklearn.", 0) == 0) fit_targets_.insert(est.path);
        }
    }
    KindSet subscriptions() const override { return kinds(NodeKind::Call); }
    void on_node(const AstNode& node, const ModuleContext& ctx) override {
        if (resolves_to(node, ctx, rule_.symbol_list("pipeline_symbols"))) {
            pipeline_present_ = true;
            return;
        }
        const AstNode& func = node.call_func();
        if (func.kind != NodeKind::Attribute) return;
        const std::string& attr = func.as<AttributePayload>().attr;
        if (attr != "fit" && attr != "fit_transform") return;
        const AstNode& recv = func.attr_value();
        std::string ctor;
        if (recv.kind == NodeKind::Call) {
            Resolution r = resolve(recv, *ctx.imports);
            if (accepted(r)) {
                for (const auto& t : fit_targets_) {
                    if (r.matches(t)) {
                        ctor = t;
                        break;
                    }
                }
            }
        } else if (recv.kind == NodeKind::Name) {
            const auto* ev = ctx.scopes->construction_of(recv);
            if (ev != nullptr && fit_targets_.count(ev->ctor) > 0) {
                bool ok = ev->confidence == Confidence::Exact ||
                          (ev->confidence == Confidence::Wildcard &&
                           rule_.classification == Classification::CSA);
                if (ok) ctor = ev->ctor;
            }
        }
        if (!ctor.empty()) pending_fits_.push_back({node.span, ctor});
    }
    void finish(const ModuleContext& ctx) override {
        if (pipeline_present_) return;
        for (const auto& [span, ctor] : pending_fits_) {
            report(ctx, span, ctor);
        }
    }

private:
    std::set<std::string> fit_targets_;
    bool pipeline_present_ = false;
    std::vector<std::pair<Span, std::string>> pending_fits_;
};

} // namespace

std::unique_ptr<Checker> make_checker(const SmellRule& rule,
                                      const RuleCatalog& catalog) {
    const std::string& id = rule.id;
    if (id == "CS2") return std::make_unique<NanEquivalenceChecker>(rule, catalog);
    if (id == "CS3") return std::make_unique<ChainIndexingChecker>(rule, catalog);
    if (id == "CS4") return std::make_unique<ReaderDtypeChecker>(rule, catalog);
    if (id == "CS5") return std::make_unique<EmptyColumnInitChecker>(rule, catalog);
    if (id == "CS6") return std::make_unique<MergeParamsChecker>(rule, catalog);
    if (id == "CS7") return std::make_unique<InplaceMisusedChecker>(rule, catalog);
    if (id == "CS8") return std::make_unique<ValuesConversionChecker>(rule, catalog);
    if (id == "CS9") return std::make_unique<MatmulApiChecker>(rule, catalog);
    if (id == "CS11") return std::make_unique<HyperparameterChecker>(rule, catalog);
    if (id == "CS13") {
        return std::make_unique<DeterministicOptionChecker>(rule, catalog);
    }
    if (id == "CS14") return std::make_unique<RandomnessChecker>(rule, catalog);
    if (id == "CS15") return std::make_unique<LogMaskChecker>(rule, catalog);
    if (id == "CS17") return std::make_unique<TensorArrayChecker>(rule, catalog);
    if (id == "CS19") return std::make_unique<ForwardCallChecker>(rule, catalog);
    if (id == "CSA1") {
        return std::make_unique<UnnecessaryIterationChecker>(rule, catalog);
    }
    if (id == "CSA12") return std::make_unique<MemoryNotFreedChecker>(rule, catalog);
    if (id == "CSA16") return std::make_unique<BroadcastingChecker>(rule, catalog);
    if (id == "CSA18") return std::make_unique<ModeTogglingChecker>(rule, catalog);
    if (id == "CSA20") {
        return std::make_unique<GradientsNotClearedChecker>(rule, catalog);
    }
    if (id == "CSA21") return std::make_unique<DataLeakageChecker>(rule, catalog);
    throw CatalogError{"no checker implementation for rule id " + id};
}

namespace {

class CheckerAdapter final : public NodeVisitor {
public:
    CheckerAdapter(Checker& checker, const ModuleContext& ctx)
        : checker_(checker), ctx_(ctx) {}
    KindSet subscriptions() const override { return checker_.subscriptions(); }
    void enter(const AstNode& node, std::span<const AstNode* const>) override {
        checker_.on_node(node, ctx_);
    }

private:
    Checker& checker_;
    const ModuleContext& ctx_;
};

} // namespace

std::vector<Finding> check_module(const ModuleContext& ctx,
                                  const std::set<std::string>& enabled) {
    std::vector<std::unique_ptr<Checker>> active;
    for (const auto& rule : ctx.catalog->rules()) {
        if (enabled.count(rule.id) == 0) continue;
        if (!rule.libraries.empty()) {
            bool imported = std::any_of(
                rule.libraries.begin(), rule.libraries.end(),
                [&](const std::string& lib) {
                    return ctx.imports->root_imported(lib);
                });
            if (!imported) continue;
        }
        active.push_back(make_checker(rule, *ctx.catalog));
    }
    if (active.empty()) return {};
    std::vector<CheckerAdapter> adapters;
    adapters.reserve(active.size());
    std::vector<NodeVisitor*> visitors;
    for (auto& checker : active) {
        checker->begin(ctx);
        adapters.emplace_back(*checker, ctx);
    }
    for (auto& a : adapters) visitors.push_back(&a);
    walk(*ctx.module, visitors);
    std::vector<Finding> out;
    for (auto& checker : active) {
        checker->finish(ctx);
        auto found = checker->take_findings();
        out.insert(out.end(), std::make_move_iterator(found.begin()),
                   std::make_move_iterator(found.end()));
    }
    return out;
}

std::vector<Finding> check_parsed_unit(const std::string& display_path,
                                       const AstNode& module,
                                       const RuleCatalog& catalog,
                                       const std::set<std::string>& enabled) {
    ImportTable imports = build_import_table(module);
    ScopeContext scopes(module, imports, catalog.pandas());
    ModuleContext ctx;
    ctx.path = display_path;
    ctx.module = &module;
    ctx.imports = &imports;
    ctx.scopes = &scopes;
    ctx.catalog = &catalog;
    return check_module(ctx, enabled);
}

std::vector<Finding> run_all(const ProjectSnapshot& snapshot,
                             const RuleCatalog& catalog,
                             const std::set<std::string>& enabled) {
    std::vector<Finding> out;
    for (const auto& unit : snapshot.units) {
        if (unit.state != ParseState::ok || !unit.module) continue;
        auto found = check_parsed_unit(snapshot.display_path(unit),
                                       unit.module->root, catalog, enabled);
        out.insert(out.end(), std::make_move_iterator(found.begin()),
                   std::make_move_iterator(found.end()));
    }
    sort_findings(out);
    return out;
}

std::vector<Finding> analyze_snapshot(ProjectSnapshot& snapshot,
                                      const RuleCatalog& catalog,
                                      const std::set<std::string>& enabled,
                                      unsigned jobs) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < snapshot.units.size(); ++i) {
        if (snapshot.units[i].kind == FileKind::python) todo.push_back(i);
    }
    std::vector<std::vector<Finding>> per_unit(todo.size());
    auto process = [&](std::size_t k) {
        SourceUnit& unit = snapshot.units[todo[k]];
        parse_unit(unit);
        if (unit.state == ParseState::ok) {
            per_unit[k] = check_parsed_unit(snapshot.display_path(unit),
                                            unit.module->root, catalog, enabled);
            unit.module.reset(); // keep memory flat across large trees
        }
    };
    if (jobs <= 1 || todo.size() < 2) {
        for (std::size_t k = 0; k < todo.size(); ++k) process(k);
    } else {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            for (;;) {
                std::size_t k = cursor.fetch_add(1);
                if (k >= todo.size()) return;
                process(k);
            }
        };
        std::vector<std::thread> pool;
        unsigned n = static_cast<unsigned>(
            std::min<std::size_t>(jobs, todo.size()));
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<Finding> out;
    for (auto& findings : per_unit) {
        out.insert(out.end(), std::make_move_iterator(findings.begin()),
                   std::make_move_iterator(findings.end()));
    }
    sort_findings(out);
    return out;
}

} // namespace mlsmell

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mlsmell/ast.hpp"
#include "mlsmell/import_context.hpp"
#include "mlsmell/ingest.hpp"
#include "mlsmell/rules.hpp"

namespace mlsmell {

// Everything a checker may consult for one file. Immutable during a check.
struct ModuleContext {
    std::string path; // display path used in findings
    const AstNode* module = nullptr;
    const ImportTable* imports = nullptr;
    const ScopeContext* scopes = nullptr;
    const RuleCatalog* catalog = nullptr;
};

// Base class for the smell detectors. Each checker subscribes to the node
// kinds it cares about and applies its own logic; begin/finish bracket one
// module pass for file-scoped rules.
class Checker {
public:
    Checker(const SmellRule& rule, const RuleCatalog& catalog)
        : rule_(rule), catalog_(catalog) {}
    virtual ~Checker() = default;

    const SmellRule& rule() const { return rule_; }
    virtual KindSet subscriptions() const = 0;
    virtual void begin(const ModuleContext&) {}
    virtual void on_node(const AstNode& node, const ModuleContext& ctx) = 0;
    virtual void finish(const ModuleContext&) {}

    std::vector<Finding> take_findings() { return std::move(pending_); }

protected:
    void report(const ModuleContext& ctx, const Span& at,
                const std::string& symbol);
    // CS rules demand exact alias resolution; advisory rules also accept
    // wildcard-import resolutions.
    bool accepted(const Resolution& r) const;
    bool resolves_to(const AstNode& expr, const ModuleContext& ctx,
                     const std::vector<std::string>& symbols,
                     std::string* matched = nullptr) const;

    const SmellRule& rule_;
    const RuleCatalog& catalog_;
    std::vector<Finding> pending_;
};

std::unique_ptr<Checker> make_checker(const SmellRule& rule,
                                      const RuleCatalog& catalog);

// Runs the enabled checkers over one parsed module.
std::vector<Finding> check_module(const ModuleContext& ctx,
                                  const std::set<std::string>& enabled);

// Convenience: parse-free entry covering ImportTable/ScopeContext setup.
std::vector<Finding> check_parsed_unit(const std::string& display_path,
                                       const AstNode& module,
                                       const RuleCatalog& catalog,
                                       const std::set<std::string>& enabled);

// Union of all enabled detectors over all parsed units of a snapshot,
// sorted canonically. Requires the snapshot to be parsed already.
std::vector<Finding> run_all(const ProjectSnapshot& snapshot,
                             const RuleCatalog& catalog,
                             const std::set<std::string>& enabled);

// Streaming variant: parses python units (jobs-way parallel), checks each and
// drops the AST immediately; unit parse metadata is filled in. Produces the
// same findings as parse_all + run_all.
std::vector<Finding> analyze_snapshot(ProjectSnapshot& snapshot,
                                      const RuleCatalog& catalog,
                                      const std::set<std::string>& enabled,
                                      unsigned jobs);

} // namespace mlsmell

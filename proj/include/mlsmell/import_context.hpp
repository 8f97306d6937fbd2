#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlsmell/ast.hpp"

namespace mlsmell {

// Per-file map from local names to qualified library symbols. Built from
// import statements only; resolution never guesses across files.
struct ImportTable {
    std::map<std::string, std::string> aliases; // local name -> dotted path
    std::vector<std::string> wildcard_modules;  // "from m import *" modules
    std::set<std::string> imported_roots;       // top-level package names

    bool root_imported(std::string_view root) const {
        return imported_roots.count(std::string(root)) > 0;
    }
};

ImportTable build_import_table(const AstNode& module);

enum class Confidence : std::uint8_t { Exact, Wildcard, Unknown };

struct Resolution {
    Confidence confidence = Confidence::Unknown;
    std::string path;                    // set when confidence == Exact
    std::vector<std::string> candidates; // set when confidence == Wildcard

    bool known() const { return confidence != Confidence::Unknown; }
    std::string primary() const {
        if (confidence == Confidence::Exact) return path;
        if (!candidates.empty()) return candidates.front();
        return {};
    }
    bool matches(std::string_view symbol) const;
    // Dotted glob: "a.b.*" = any path under a.b; '*' inside a component
    // matches within that component ("torch.rand*").
    bool matches_pattern(std::string_view pattern) const;
};

bool symbol_pattern_match(std::string_view path, std::string_view pattern);

// Resolves a Name, an Attribute chain or a Call target to a qualified path.
Resolution resolve(const AstNode& expr, const ImportTable& table);

// Symbols import_context needs from the rule catalog.
struct PandasCatalog {
    std::set<std::string> constructors;        // e.g. pandas.read_csv
    std::set<std::string> propagating_methods; // e.g. dropna
};

// Names judged dataframe-like within one scope, with enough history to
// answer point queries under last-write-wins rebinding.
struct DataFrameLikeness {
    struct Event {
        int line;
        bool becomes;
    };
    std::map<std::string, std::vector<Event>> events; // source-ordered per name
    std::map<std::string, Span> origin; // name -> producing call location

    bool tracks(std::string_view name) const {
        return events.count(std::string(name)) > 0;
    }
    bool is_dataframe_like(std::string_view name, int line) const;
    std::set<std::string> names_at_end() const;
};

DataFrameLikeness dataframe_names(const AstNode& scope, const ImportTable& table,
                                  const PandasCatalog& catalog);

// Tracks which qualified constructor produced each local name ("scaler =
// StandardScaler()"), last write wins.
struct ConstructionIndex {
    struct Event {
        int line;
        std::string ctor; // empty when rebound to something unresolvable
        Confidence confidence = Confidence::Unknown;
    };
    std::map<std::string, std::vector<Event>> events;

    // Constructor path in effect for `name` at `line`, or nullptr.
    const Event* constructed_from(std::string_view name, int line) const;
};

ConstructionIndex build_construction_index(const AstNode& scope,
                                           const ImportTable& table);

// Composes per-scope dataframe likeness and construction tracking for one
// module, with lexical lookup through enclosing scopes.
class ScopeContext {
public:
    ScopeContext(const AstNode& module, const ImportTable& table,
                 const PandasCatalog& catalog);

    // `name_node` must be a Name reachable from the module.
    bool dataframe_like(const AstNode& name_node) const;
    const ConstructionIndex::Event* construction_of(const AstNode& name_node) const;

private:
    struct Scope {
        const AstNode* node;
        const Scope* parent;
        bool is_class;
        DataFrameLikeness df;
        ConstructionIndex ctors;
    };
    std::vector<std::unique_ptr<Scope>> scopes_;
    std::map<const AstNode*, const Scope*> by_node_;

    const Scope* scope_of(const AstNode& node) const;
};

} // namespace mlsmell

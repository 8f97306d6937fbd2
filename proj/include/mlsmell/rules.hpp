#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mlsmell/import_context.hpp"
#include "mlsmell/span.hpp"

namespace mlsmell {

enum class Classification : std::uint8_t { CS, CSA };

inline const char* classification_name(Classification c) {
    return c == Classification::CS ? "CS" : "CSA";
}

struct MessageTemplate {
    std::string context;
    std::string problem;
    std::string solution;
};

struct SmellRule {
    std::string id;   // CS2..CS19 / CSA1..CSA21, catalog numbering with gaps
    std::string name;
    Classification classification = Classification::CS;
    std::array<bool, 5> criteria{}; // CSC1..CSC5
    std::vector<std::string> libraries; // qualified package roots targeted
    MessageTemplate message;
    std::map<std::string, std::vector<std::string>> symbols; // named lists

    const std::vector<std::string>& symbol_list(const std::string& key) const;
    std::string render_message(const std::string& symbol) const;
};

struct SeedCall {
    std::string path;
    bool requires_args = false;
};

struct RandomDomain {
    std::string name;
    std::vector<std::string> use_patterns;
    std::vector<SeedCall> seeds;
};

struct EstimatorEntry {
    std::string path;
    bool accepts_random_state = false;
};

struct CatalogError {
    std::string message;
};

// The validated rule registry plus the shared symbol catalogs checkers use.
class RuleCatalog {
public:
    static RuleCatalog from_json(const std::string& json_text); // throws CatalogError
    static RuleCatalog load_file(const std::string& path);      // throws CatalogError
    static const RuleCatalog& builtin(); // embedded copy of data/rules.json

    const std::vector<SmellRule>& rules() const { return rules_; }
    const SmellRule* find(const std::string& id) const;
    const SmellRule& at(const std::string& id) const; // throws CatalogError

    const PandasCatalog& pandas() const { return pandas_; }
    const std::vector<EstimatorEntry>& estimators() const { return estimators_; }
    const std::vector<RandomDomain>& random_domains() const { return domains_; }
    const std::vector<std::string>& random_state_callables() const {
        return random_state_callables_;
    }

    std::set<std::string> all_ids() const;

private:
    std::vector<SmellRule> rules_;
    PandasCatalog pandas_;
    std::vector<EstimatorEntry> estimators_;
    std::vector<RandomDomain> domains_;
    std::vector<std::string> random_state_callables_;

    void validate() const;
};

// One detection instance.
struct Finding {
    std::string rule_id;
    Classification classification = Classification::CS;
    std::string path;
    Span span;
    std::string symbol; // resolved qualified path, or "" for unknown
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

// Canonical report order: (path, line, col, rule_id), lexicographic.
void sort_findings(std::vector<Finding>& findings);

} // namespace mlsmell

#include "mlsmell/rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlsmell/rules_default.hpp"

namespace mlsmell {

using nlohmann::json;

const std::vector<std::string>& SmellRule::symbol_list(
    const std::string& key) const {
    static const std::vector<std::string> empty;
    auto it = symbols.find(key);
    return it == symbols.end() ? empty : it->second;
}

std::string SmellRule::render_message(const std::string& symbol) const {
    std::string text = message.problem + " " + message.solution;
    const std::string placeholder = "{symbol}";
    std::string subst = symbol.empty() ? std::string("this call") : symbol;
    for (std::size_t at = text.find(placeholder); at != std::string::npos;
         at = text.find(placeholder, at + subst.size())) {
        text.replace(at, placeholder.size(), subst);
    }
    return text;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw CatalogError{what}; }

std::string require_string(const json& obj, const char* key,
                           const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string()) {
        bad("rule catalog: missing string field '" + std::string(key) + "' in " +
            where);
    }
    return obj[key].get<std::string>();
}

std::vector<std::string> string_list(const json& arr, const std::string& where) {
    if (!arr.is_array()) bad("rule catalog: expected array in " + where);
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (!v.is_string()) bad("rule catalog: expected string in " + where);
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

RuleCatalog RuleCatalog::from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        bad(std::string("rule catalog: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("version") ||
        !doc["version"].is_number_integer()) {
        bad("rule catalog: top-level object with integer 'version' required");
    }
    if (doc["version"].get<int>() != 1) {
        bad("rule catalog: unsupported version");
    }
    RuleCatalog cat;

    const json& shared = doc.contains("shared") ? doc["shared"] : json::object();
    if (!shared.is_object()) bad("rule catalog: 'shared' must be an object");
    if (shared.contains("dataframe_constructors")) {
        for (auto& s :
             string_list(shared["dataframe_constructors"], "shared")) {
            cat.pandas_.constructors.insert(std::move(s));
        }
    }
    if (shared.contains("dataframe_methods")) {
        for (auto& s : string_list(shared["dataframe_methods"], "shared")) {
            cat.pandas_.propagating_methods.insert(std::move(s));
        }
    }
    if (shared.contains("estimators")) {
        if (!shared["estimators"].is_array()) {
            bad("rule catalog: shared.estimators must be an array");
        }
        for (const auto& e : shared["estimators"]) {
            EstimatorEntry entry;
            entry.path = require_string(e, "path", "shared.estimators");
            if (e.contains("accepts_random_state")) {
                if (!e["accepts_random_state"].is_boolean()) {
                    bad("rule catalog: accepts_random_state must be boolean");
                }
                entry.accepts_random_state = e["accepts_random_state"].get<bool>();
            }
            cat.estimators_.push_back(std::move(entry));
        }
    }

    if (!doc.contains("rules") || !doc["rules"].is_array()) {
        bad("rule catalog: 'rules' array required");
    }
    for (const auto& r : doc["rules"]) {
        SmellRule rule;
        rule.id = require_string(r, "id", "rule");
        const std::string where = "rule " + rule.id;
        rule.name = require_string(r, "name", where);
        std::string cls = require_string(r, "classification", where);
        if (cls == "CS") rule.classification = Classification::CS;
        else if (cls == "CSA") rule.classification = Classification::CSA;
        else bad("rule catalog: classification must be CS or CSA in " + where);
        if (!r.contains("criteria") || !r["criteria"].is_array() ||
            r["criteria"].size() != 5) {
            bad("rule catalog: 'criteria' must be an array of 5 booleans in " +
                where);
        }
        for (std::size_t i = 0; i < 5; ++i) {
            if (!r["criteria"][i].is_boolean()) {
                bad("rule catalog: criteria entries must be boolean in " + where);
            }
            rule.criteria[i] = r["criteria"][i].get<bool>();
        }
        if (r.contains("libraries")) {
            rule.libraries = string_list(r["libraries"], where);
        }
        if (!r.contains("message") || !r["message"].is_object()) {
            bad("rule catalog: 'message' object required in " + where);
        }
        rule.message.context = require_string(r["message"], "context", where);
        rule.message.problem = require_string(r["message"], "problem", where);
        rule.message.solution = require_string(r["message"], "solution", where);

        const json& symbols =
            r.contains("symbols") ? r["symbols"] : json::object();
        if (!symbols.is_object()) {
            bad("rule catalog: 'symbols' must be an object in " + where);
        }
        for (auto it = symbols.begin(); it != symbols.end(); ++it) {
            if (rule.id == "CS14" && it.key() == "domains") {
                if (!it.value().is_array()) {
                    bad("rule catalog: CS14 domains must be an array");
                }
                for (const auto& d : it.value()) {
                    RandomDomain dom;
                    dom.name = require_string(d, "name", "CS14 domain");
                    dom.use_patterns = string_list(d["uses"], "CS14 domain uses");
                    if (!d.contains("seeds") || !d["seeds"].is_array()) {
                        bad("rule catalog: CS14 domain seeds must be an array");
                    }
                    for (const auto& sc : d["seeds"]) {
                        SeedCall seed;
                        seed.path = require_string(sc, "path", "CS14 seed");
                        if (sc.contains("requires_args")) {
                            seed.requires_args = sc["requires_args"].get<bool>();
                        }
                        dom.seeds.push_back(std::move(seed));
                    }
                    cat.domains_.push_back(std::move(dom));
                }
                continue;
            }
            if (rule.id == "CS14" && it.key() == "random_state_callables") {
                cat.random_state_callables_ =
                    string_list(it.value(), "CS14 random_state_callables");
                continue;
            }
            rule.symbols[it.key()] = string_list(it.value(), where);
        }
        cat.rules_.push_back(std::move(rule));
    }
    cat.validate();
    return cat;
}

void RuleCatalog::validate() const {
    std::size_t n_cs = 0, n_csa = 0;
    std::set<std::string> seen;
    for (const auto& rule : rules_) {
        if (rule.id.rfind("CSA", 0) == 0) {
            if (rule.classification != Classification::CSA) {
                bad("rule catalog: id " + rule.id + " must be classified CSA");
            }
        } else if (rule.id.rfind("CS", 0) == 0) {
            if (rule.classification != Classification::CS) {
                bad("rule catalog: id " + rule.id + " must be classified CS");
            }
        } else {
            bad("rule catalog: id must start with CS or CSA: " + rule.id);
        }
        if (!seen.insert(rule.id).second) {
            bad("rule catalog: duplicate rule id " + rule.id);
        }
        // CSC5 ("pattern precision") decides the classification; CSC1-CSC4
        // must hold for every registered rule.
        for (int i = 0; i < 4; ++i) {
            if (!rule.criteria[i]) {
                bad("rule catalog: CSC" + std::to_string(i + 1) +
                    " must hold for " + rule.id);
            }
        }
        bool is_cs = rule.classification == Classification::CS;
        if (rule.criteria[4] != is_cs) {
            bad("rule catalog: CSC5 must match classification for " + rule.id);
        }
        n_cs += is_cs;
        n_csa += !is_cs;
        if (rule.name.empty()) bad("rule catalog: empty name for " + rule.id);
    }
    if (n_cs != 14 || n_csa != 6) {
        bad("rule catalog: registry must contain exactly 14 CS and 6 CSA rules; "
            "got " + std::to_string(n_cs) + " CS and " + std::to_string(n_csa) +
            " CSA");
    }
    if (seen.count("CS10") || seen.count("CSA10") || seen.count("CS22") ||
        seen.count("CSA22")) {
        bad("rule catalog: ids 10 and 22 are not registrable");
    }
    // Rule-specific required symbol lists.
    const std::pair<const char*, const char*> required[] = {
        {"CS2", "nan_constants"},   {"CS4", "readers"},
        {"CS6", "methods"},         {"CS7", "methods"},
        {"CS9", "functions"},       {"CS15", "log_functions"},
        {"CS17", "concat_functions"}, {"CSA1", "iteration_methods"},
        {"CSA12", "constructors"},  {"CSA16", "tile_functions"},
        {"CSA21", "transformers"},
    };
    for (const auto& [id, key] : required) {
        const SmellRule* rule = find(id);
        if (rule == nullptr) bad(std::string("rule catalog: missing rule ") + id);
        if (rule->symbol_list(key).empty()) {
            bad(std::string("rule catalog: rule ") + id +
                " requires non-empty symbol list '" + key + "'");
        }
    }
    if (find("CS14") != nullptr && domains_.empty()) {
        bad("rule catalog: CS14 requires at least one randomness domain");
    }
    if (find("CS11") != nullptr && estimators_.empty()) {
        bad("rule catalog: CS11 requires the shared estimator catalog");
    }
}

RuleCatalog RuleCatalog::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("rule catalog: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

const RuleCatalog& RuleCatalog::builtin() {
    static const RuleCatalog cat = from_json(kDefaultRulesJson);
    return cat;
}

const SmellRule* RuleCatalog::find(const std::string& id) const {
    for (const auto& r : rules_) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

const SmellRule& RuleCatalog::at(const std::string& id) const {
    const SmellRule* r = find(id);
    if (r == nullptr) bad("unknown rule id: " + id);
    return *r;
}

std::set<std::string> RuleCatalog::all_ids() const {
    std::set<std::string> out;
    for (const auto& r : rules_) out.insert(r.id);
    return out;
}

void sort_findings(std::vector<Finding>& findings) {
    std::sort(findings.begin(), findings.end(),
              [](const Finding& a, const Finding& b) {
                  if (a.path != b.path) return a.path < b.path;
                  if (a.span.line != b.span.line) return a.span.line < b.span.line;
                  if (a.span.col != b.span.col) return a.span.col < b.span.col;
                  return a.rule_id < b.rule_id;
              });
}

} // namespace mlsmell

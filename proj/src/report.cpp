#include "mlsmell/report.hpp"

#include "mlsmell/sampling.hpp"

#include <algorithm>
#include <vector>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace mlsmell {

using nlohmann::json;

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed(double v, int decimals) {
    // round half away from zero so midpoints match hand-rounded figures
    double scale = std::pow(10.0, decimals);
    double rounded = std::round(v * scale) / scale;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
    return buf;
}

} // namespace

std::string format_ratio_pct(const std::optional<double>& v) {
    if (!v) return "n/a";
    return fixed(*v * 100.0, 1) + "%";
}
std::string format_density(const std::optional<double>& v) {
    return v ? fixed(*v, 4) : "n/a";
}
std::string format_average(const std::optional<double>& v) {
    return v ? fixed(*v, 2) : "n/a";
}

AnalysisSummary compute_summary(const SummaryInputs& in) {
    AnalysisSummary s;
    s.projects = in.projects;
    s.runtime_ms = in.runtime_ms;
    s.size_bytes = in.size_bytes;
    s.total_loc = in.total_loc;
    s.findings_total = in.findings_total;
    s.cs_count = in.cs_count;
    s.csa_count = in.csa_count;
    s.folders = in.folders;
    s.files_total = in.files_total;
    s.py_files = in.py_files;
    s.files_with_findings = in.files_with_findings;
    s.py_syntax_errors = in.py_syntax_errors;
    s.per_rule_counts = in.per_rule_counts;

    s.syntax_error_rate = ratio(in.py_syntax_errors, in.py_files);
    s.code_coverage = ratio(in.py_files - in.py_syntax_errors, in.files_total);
    s.avg_smells_per_project = ratio(in.findings_total, in.projects);
    const bool split_known =
        in.cs_count + in.csa_count == in.findings_total && in.findings_total > 0;
    if (split_known) {
        s.avg_cs_per_project = ratio(in.cs_count, in.projects);
        s.avg_csa_per_project = ratio(in.csa_count, in.projects);
        s.cs_share = ratio(in.cs_count, in.findings_total);
        s.csa_share = ratio(in.csa_count, in.findings_total);
    }
    if (in.total_loc > 0) {
        double kloc = static_cast<double>(in.total_loc) / 1000.0;
        s.density_total = static_cast<double>(in.findings_total) / kloc;
        if (split_known) {
            s.density_cs = static_cast<double>(in.cs_count) / kloc;
            s.density_csa = static_cast<double>(in.csa_count) / kloc;
        }
    }
    return s;
}

AnalysisSummary summarize(std::span<const ProjectSnapshot> snapshots,
                          std::span<const Finding> findings,
                          std::optional<std::int64_t> runtime_ms,
                          const RuleCatalog& catalog) {
    SummaryInputs in;
    in.projects = snapshots.size();
    in.runtime_ms = runtime_ms;
    for (const auto& snap : snapshots) {
        in.size_bytes += snap.size_bytes;
        in.total_loc += snap.total_loc();
        in.folders += snap.folders;
        in.files_total += snap.files_total();
        in.py_files += snap.py_files();
        in.py_syntax_errors += snap.py_syntax_errors();
    }
    for (const auto& rule : catalog.rules()) in.per_rule_counts[rule.id] = 0;
    std::set<std::string> paths;
    for (const auto& f : findings) {
        ++in.per_rule_counts[f.rule_id];
        ++in.findings_total;
        if (f.classification == Classification::CS) ++in.cs_count;
        else ++in.csa_count;
        paths.insert(f.path);
    }
    in.files_with_findings = paths.size();
    return compute_summary(in);
}

namespace {

void append_summary_block(std::string& out, const AnalysisSummary& s) {
    auto line = [&](const char* label, const std::string& value) {
        out += "  ";
        out += label;
        out += ": ";
        out += value;
        out += "\n";
    };
    out += "Summary:\n";
    line("Run-time of analysis (ms)",
         s.runtime_ms ? std::to_string(*s.runtime_ms) : std::string("n/a"));
    line("Number of projects analyzed", std::to_string(s.projects));
    line("Size of all projects (bytes)", std::to_string(s.size_bytes));
    line("Lines of Python code", std::to_string(s.total_loc));
    line("Number of code smells identified", std::to_string(s.findings_total));
    line("Number of folders identified", std::to_string(s.folders));
    line("Number of files identified", std::to_string(s.files_total));
    line("Number of .py files analyzed", std::to_string(s.py_files));
    line("Number of .py files with detected code smells",
         std::to_string(s.files_with_findings));
    line("Number of .py files unable to parse due to syntax error",
         std::to_string(s.py_syntax_errors));
    line("Rate of syntax errors", format_ratio_pct(s.syntax_error_rate));
    line("Code coverage", format_ratio_pct(s.code_coverage));
    line("Average code smells per project",
         "CS " + format_average(s.avg_cs_per_project) + " / CSA " +
             format_average(s.avg_csa_per_project) + " / total " +
             format_average(s.avg_smells_per_project));
    line("Code smell distribution", "CS " + format_ratio_pct(s.cs_share) +
                                        " / CSA " + format_ratio_pct(s.csa_share));
    line("Density of code smells (per KLOC)",
         "CS " + format_density(s.density_cs) + " / CSA " +
             format_density(s.density_csa) + " / total " +
             format_density(s.density_total));
    if (s.precision_cs || s.precision_csa) {
        line("Precision", "CS " + format_ratio_pct(s.precision_cs) + " / CSA " +
                              format_ratio_pct(s.precision_csa));
    }
    out += "  Per-rule counts:\n";
    std::vector<std::string> ids;
    ids.reserve(s.per_rule_counts.size());
    for (const auto& [id, count] : s.per_rule_counts) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), rule_id_less);
    for (const auto& id : ids) {
        out += "    " + id + ": " + std::to_string(s.per_rule_counts.at(id)) +
               "\n";
    }
}

// Canonical order already groups findings by file.
void append_findings_block(std::string& out, std::span<const Finding> findings) {
    if (findings.empty()) return;
    out += "Findings:\n";
    for (const auto& f : findings) {
        out += f.path + ":" + std::to_string(f.span.line) + ":" +
               std::to_string(f.span.col) + " " + f.rule_id + " [" +
               classification_name(f.classification) + "] " + f.message + "\n";
    }
    out += "\n";
}

} // namespace

std::string render_text(const AnalysisSummary& summary,
                        std::span<const Finding> findings,
                        std::span<const ProjectSection> per_project) {
    std::string out;
    if (per_project.size() > 1) {
        for (const auto& section : per_project) {
            out += "== project " + section.label + " ==\n";
            std::vector<Finding> own;
            for (const auto& f : findings) {
                if (f.path.rfind(section.label + "/", 0) == 0) own.push_back(f);
            }
            append_findings_block(out, own);
            append_summary_block(out, section.summary);
            out += "\n";
        }
        out += "== total ==\n";
        append_summary_block(out, summary);
        return out;
    }
    append_findings_block(out, findings);
    append_summary_block(out, summary);
    return out;
}

namespace {

json opt_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

json summary_to_json(const AnalysisSummary& s) {
    json j;
    j["projects"] = s.projects;
    j["runtime_ms"] = s.runtime_ms ? json(*s.runtime_ms) : json(nullptr);
    j["size_bytes"] = s.size_bytes;
    j["total_loc"] = s.total_loc;
    j["findings_total"] = s.findings_total;
    j["cs_count"] = s.cs_count;
    j["csa_count"] = s.csa_count;
    j["folders"] = s.folders;
    j["files_total"] = s.files_total;
    j["py_files"] = s.py_files;
    j["files_with_findings"] = s.files_with_findings;
    j["py_syntax_errors"] = s.py_syntax_errors;
    j["per_rule_counts"] = s.per_rule_counts;
    j["syntax_error_rate"] = opt_number(s.syntax_error_rate);
    j["code_coverage"] = opt_number(s.code_coverage);
    j["avg_smells_per_project"] = opt_number(s.avg_smells_per_project);
    j["avg_cs_per_project"] = opt_number(s.avg_cs_per_project);
    j["avg_csa_per_project"] = opt_number(s.avg_csa_per_project);
    j["cs_share"] = opt_number(s.cs_share);
    j["csa_share"] = opt_number(s.csa_share);
    j["density_cs"] = opt_number(s.density_cs);
    j["density_csa"] = opt_number(s.density_csa);
    j["density_total"] = opt_number(s.density_total);
    j["precision_cs"] = opt_number(s.precision_cs);
    j["precision_csa"] = opt_number(s.precision_csa);
    j["precision_overall_micro"] = opt_number(s.precision_overall_micro);
    j["precision_overall_weighted"] = opt_number(s.precision_overall_weighted);
    return j;
}

} // namespace

std::string render_json(const AnalysisSummary& summary,
                        std::span<const Finding> findings,
                        std::span<const ProjectSection> per_project) {
    json doc;
    doc["version"] = 1;
    doc["summary"] = summary_to_json(summary);
    json arr = json::array();
    for (const auto& f : findings) {
        json e;
        e["rule_id"] = f.rule_id;
        e["classification"] = classification_name(f.classification);
        e["path"] = f.path;
        e["line"] = f.span.line;
        e["col"] = f.span.col;
        e["symbol"] = f.symbol;
        e["message"] = f.message;
        arr.push_back(std::move(e));
    }
    doc["findings"] = std::move(arr);
    json projects = json::array();
    for (const auto& section : per_project) {
        json p;
        p["root"] = section.label;
        p["summary"] = summary_to_json(section.summary);
        projects.push_back(std::move(p));
    }
    doc["per_project"] = std::move(projects);
    return doc.dump(2) + "\n";
}

std::string render_sarif(std::span<const Finding> findings,
                         const RuleCatalog& catalog) {
    json rules = json::array();
    std::map<std::string, std::size_t> rule_index;
    for (const auto& rule : catalog.rules()) {
        json r;
        r["id"] = rule.id;
        r["name"] = rule.name;
        r["shortDescription"] = {{"text", rule.name}};
        r["fullDescription"] = {{"text", rule.message.context}};
        r["help"] = {{"text", rule.message.solution}};
        r["defaultConfiguration"] = {
            {"level",
             rule.classification == Classification::CS ? "warning" : "note"}};
        rule_index[rule.id] = rules.size();
        rules.push_back(std::move(r));
    }
    json results = json::array();
    for (const auto& f : findings) {
        json r;
        r["ruleId"] = f.rule_id;
        auto it = rule_index.find(f.rule_id);
        if (it != rule_index.end()) r["ruleIndex"] = it->second;
        r["level"] = f.classification == Classification::CS ? "warning" : "note";
        r["message"] = {{"text", f.message}};
        r["locations"] = json::array({json{
            {"physicalLocation",
             {{"artifactLocation", {{"uri", f.path}}},
              {"region",
               {{"startLine", f.span.line},
                {"startColumn", f.span.col + 1},
                {"endLine", f.span.end_line},
                {"endColumn", f.span.end_col + 1}}}}}}});
        results.push_back(std::move(r));
    }
    json doc;
    doc["$schema"] =
        "https://raw.githubusercontent.com/oasis-tcs/sarif-spec/master/Schemata/"
        "sarif-schema-2.1.0.json";
    doc["version"] = "2.1.0";
    doc["runs"] = json::array({json{
        {"tool",
         {{"driver",
           {{"name", "mlsmell"},
            {"version", "1.0.0"},
            {"informationUri", "https://example.invalid/mlsmell"},
            {"rules", std::move(rules)}}}}},
        {"results", std::move(results)}}});
    return doc.dump(2) + "\n";
}

} // namespace mlsmell

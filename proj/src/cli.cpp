#include "mlsmell/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlsmell/checkers.hpp"
#include "mlsmell/ingest.hpp"
#include "mlsmell/report.hpp"
#include "mlsmell/sampling.hpp"

namespace mlsmell {

namespace {

using nlohmann::json;

struct AnalyzeOptions {
    std::vector<std::string> roots;
    std::string manifest;
    std::vector<std::string> exclude;
    std::vector<std::string> enable;
    std::vector<std::string> disable;
    bool cs_only = false;
    std::string format = "text";
    std::string output;
    std::string rules_file;
    unsigned jobs = 0;
    std::string fail_on = "never";
    bool include_vcs = false;
    bool timing = false;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_trailing_slashes(std::string s) {
    while (s.size() > 1 && s.back() == '/') s.pop_back();
    return s;
}

std::vector<std::string> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError{"cannot open manifest: " + path};
    std::vector<std::string> roots;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        roots.push_back(t);
    }
    return roots;
}

const RuleCatalog& catalog_for(const std::string& rules_file,
                               std::unique_ptr<RuleCatalog>& owned) {
    if (rules_file.empty()) return RuleCatalog::builtin();
    owned = std::make_unique<RuleCatalog>(RuleCatalog::load_file(rules_file));
    return *owned;
}

std::set<std::string> effective_rules(const RuleCatalog& catalog,
                                      const AnalyzeOptions& opt) {
    std::set<std::string> all = catalog.all_ids();
    auto check_known = [&](const std::vector<std::string>& ids) {
        for (const auto& id : ids) {
            if (all.count(id) == 0) throw UsageError{"unknown rule id: " + id};
        }
    };
    check_known(opt.enable);
    check_known(opt.disable);
    for (const auto& id : opt.enable) {
        if (std::find(opt.disable.begin(), opt.disable.end(), id) !=
            opt.disable.end()) {
            throw UsageError{"rule both enabled and disabled: " + id};
        }
    }
    std::set<std::string> enabled =
        opt.enable.empty() ? all
                           : std::set<std::string>(opt.enable.begin(),
                                                   opt.enable.end());
    for (const auto& id : opt.disable) enabled.erase(id);
    if (opt.cs_only) {
        for (auto it = enabled.begin(); it != enabled.end();) {
            if (catalog.at(*it).classification != Classification::CS) {
                it = enabled.erase(it);
            } else {
                ++it;
            }
        }
    }
    return enabled;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError{"cannot write output file: " + path};
    out << content;
}

int cmd_analyze(const AnalyzeOptions& opt) {
    std::unique_ptr<RuleCatalog> owned;
    const RuleCatalog& catalog = catalog_for(opt.rules_file, owned);
    std::set<std::string> enabled = effective_rules(catalog, opt);

    std::vector<std::string> root_specs = opt.roots;
    if (!opt.manifest.empty()) {
        auto from_manifest = read_manifest(opt.manifest);
        root_specs.insert(root_specs.end(), from_manifest.begin(),
                          from_manifest.end());
    }
    if (root_specs.empty()) {
        throw UsageError{"no project roots given (pass paths or --manifest)"};
    }
    bool labelled = root_specs.size() > 1 || !opt.manifest.empty();

    unsigned jobs = opt.jobs;
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

    DiscoverOptions disc;
    disc.exclude_globs = opt.exclude;
    disc.include_vcs = opt.include_vcs;

    auto t0 = std::chrono::steady_clock::now();
    std::vector<ProjectSnapshot> snapshots;
    std::vector<Finding> findings;
    std::vector<ProjectSection> sections;
    for (const auto& spec : root_specs) {
        ProjectSnapshot snap = discover(spec, disc);
        snap.label = labelled ? strip_trailing_slashes(spec) : "";
        auto own = analyze_snapshot(snap, catalog, enabled, jobs);
        for (const auto& w : snap.warnings) std::cerr << "warning: " << w << "\n";
        ProjectSection section;
        section.label = labelled ? snap.label : spec;
        section.summary = summarize({&snap, 1}, own, std::nullopt, catalog);
        sections.push_back(std::move(section));
        findings.insert(findings.end(), std::make_move_iterator(own.begin()),
                        std::make_move_iterator(own.end()));
        snapshots.push_back(std::move(snap));
    }
    sort_findings(findings);
    std::optional<std::int64_t> runtime;
    if (opt.timing) {
        runtime = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    }
    AnalysisSummary grand = summarize(snapshots, findings, runtime, catalog);

    std::string content;
    if (opt.format == "text") {
        content = render_text(grand, findings, sections);
    } else if (opt.format == "json") {
        content = render_json(grand, findings, sections);
    } else if (opt.format == "sarif") {
        content = render_sarif(findings, catalog);
    } else {
        throw UsageError{"unknown format: " + opt.format};
    }
    write_output(opt.output, content);

    if (opt.fail_on == "any") {
        return findings.empty() ? 0 : 1;
    }
    if (opt.fail_on == "cs") {
        for (const auto& f : findings) {
            if (f.classification == Classification::CS) return 1;
        }
        return 0;
    }
    return 0;
}

struct SampleOptions {
    std::string report;
    std::string output;
    std::uint64_t seed = 0;
    double margin = 0.05;
};

Classification parse_classification(const std::string& s) {
    if (s == "CS") return Classification::CS;
    if (s == "CSA") return Classification::CSA;
    throw UsageError{"bad classification in report: " + s};
}

int cmd_sample(const SampleOptions& opt) {
    std::ifstream in(opt.report, std::ios::binary);
    if (!in) throw UsageError{"cannot open findings report: " + opt.report};
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw UsageError{std::string("malformed findings report: ") + e.what()};
    }
    if (!doc.is_object() || !doc.contains("findings") ||
        !doc["findings"].is_array()) {
        throw UsageError{"malformed findings report: missing findings array"};
    }
    std::vector<Finding> findings;
    for (const auto& e : doc["findings"]) {
        try {
            Finding f;
            f.rule_id = e.at("rule_id").get<std::string>();
            f.classification =
                parse_classification(e.at("classification").get<std::string>());
            f.path = e.at("path").get<std::string>();
            f.span.line = e.at("line").get<int>();
            f.span.col = e.at("col").get<int>();
            f.span.end_line = f.span.line;
            f.span.end_col = f.span.col;
            findings.push_back(std::move(f));
        } catch (const json::exception& ex) {
            throw UsageError{std::string("malformed findings entry: ") +
                             ex.what()};
        }
    }
    // Proportional stratified sampling, carried out per category.
    std::vector<ValidationRecord> records;
    for (Classification cls : {Classification::CS, Classification::CSA}) {
        std::map<std::string, std::size_t> pops;
        std::vector<Finding> members;
        for (const auto& f : findings) {
            if (f.classification != cls) continue;
            ++pops[f.rule_id];
            members.push_back(f);
        }
        if (members.empty()) continue;
        std::vector<std::pair<std::string, std::size_t>> strata(pops.begin(),
                                                                pops.end());
        std::sort(strata.begin(), strata.end(),
                  [](const auto& a, const auto& b) {
                      return rule_id_less(a.first, b.first);
                  });
        std::size_t n = total_sample_size(members.size(), opt.margin);
        auto plan = allocate(strata, n);
        auto sample = draw_sample(members, plan, opt.seed);
        std::map<std::string, std::size_t> pop_of(pops.begin(), pops.end());
        for (const Finding* f : sample) {
            ValidationRecord r;
            r.key = f->path + ":" + std::to_string(f->span.line) + ":" +
                    std::to_string(f->span.col) + ":" + f->rule_id;
            r.rule_id = f->rule_id;
            r.classification = cls;
            r.stratum_population = pop_of[f->rule_id];
            r.verdict = Verdict::Pending;
            records.push_back(std::move(r));
        }
    }
    std::ostringstream out;
    write_worksheet(out, records);
    write_output(opt.output, out.str());
    return 0;
}

struct PrecisionOptions {
    std::string verdicts;
    std::string output;
};

std::string precision_table(const PrecisionReport& report) {
    std::string out;
    char buf[160];
    out += "Stratified sampling and validation results\n";
    std::snprintf(buf, sizeof(buf), "%-10s %8s %8s %8s %6s %6s %10s\n", "ID",
                  "Size", "Perc(%)", "Sample", "TP", "FP", "Precision");
    out += buf;
    auto row_line = [&](const PrecisionRow& row) {
        std::snprintf(buf, sizeof(buf), "%-10s %8zu %8.1f %8zu %6zu %6zu %10s\n",
                      row.id.c_str(), row.population, row.proportion * 100.0,
                      row.sample, row.tp, row.fp,
                      format_ratio_pct(row.precision).c_str());
        out += buf;
    };
    bool any_cs = false, any_csa = false;
    for (const auto& row : report.per_rule) {
        if (row.id.rfind("CSA", 0) == 0) any_csa = true;
        else any_cs = true;
    }
    for (const auto& row : report.per_rule) {
        if (row.id.rfind("CSA", 0) != 0) row_line(row);
    }
    if (any_cs) {
        PrecisionRow t = report.cs_total;
        t.id = "CS total";
        row_line(t);
    }
    for (const auto& row : report.per_rule) {
        if (row.id.rfind("CSA", 0) == 0) row_line(row);
    }
    if (any_csa) {
        PrecisionRow t = report.csa_total;
        t.id = "CSA total";
        row_line(t);
    }
    out += "\n";
    out += "Precision (CS): " + format_ratio_pct(report.cs_total.precision) + "\n";
    out +=
        "Precision (CSA): " + format_ratio_pct(report.csa_total.precision) + "\n";
    out += "Overall precision (micro, pooled TP/(TP+FP)): " +
           format_ratio_pct(report.overall_micro) + "\n";
    out += "Overall precision (instance-weighted by category population): " +
           format_ratio_pct(report.overall_weighted) + "\n";
    return out;
}

int cmd_precision(const PrecisionOptions& opt) {
    std::ifstream in(opt.verdicts, std::ios::binary);
    if (!in) throw UsageError{"cannot open verdict file: " + opt.verdicts};
    std::vector<ValidationRecord> records = read_worksheet(in);
    std::vector<std::string> pending;
    for (const auto& r : records) {
        if (r.verdict == Verdict::Pending) pending.push_back(r.key);
    }
    if (!pending.empty()) {
        std::cerr << "error: " << pending.size()
                  << " record(s) still pending a verdict:\n";
        for (const auto& key : pending) std::cerr << "  " << key << "\n";
        return 2;
    }
    PrecisionReport report = compute_precision(records);
    write_output(opt.output, precision_table(report));
    return 0;
}

int cmd_rules(const std::string& rules_file) {
    std::unique_ptr<RuleCatalog> owned;
    const RuleCatalog& catalog = catalog_for(rules_file, owned);
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-7s %-5s %-4s %-4s %-4s %-4s %-4s %-30s %s\n", "ID", "CLASS",
                  "CSC1", "CSC2", "CSC3", "CSC4", "CSC5", "LIBRARIES", "NAME");
    out += buf;
    for (const auto& rule : catalog.rules()) {
        std::string libs;
        for (const auto& lib : rule.libraries) {
            if (!libs.empty()) libs += ",";
            libs += lib;
        }
        std::snprintf(buf, sizeof(buf),
                      "%-7s %-5s %-4s %-4s %-4s %-4s %-4s %-30s %s\n",
                      rule.id.c_str(), classification_name(rule.classification),
                      rule.criteria[0] ? "yes" : "no",
                      rule.criteria[1] ? "yes" : "no",
                      rule.criteria[2] ? "yes" : "no",
                      rule.criteria[3] ? "yes" : "no",
                      rule.criteria[4] ? "yes" : "no", libs.c_str(),
                      rule.name.c_str());
        out += buf;
    }
    std::cout << out;
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"mlsmell - static analysis of ML-specific code smells in "
                 "Python source trees"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    AnalyzeOptions aopt;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Analyze one or more project roots");
    analyze->add_option("roots", aopt.roots, "Project root directories");
    analyze->add_option("--manifest", aopt.manifest,
                        "File with one project root path per line");
    analyze->add_option("--exclude", aopt.exclude,
                        "Glob patterns of paths to skip (repeatable)");
    analyze->add_option("--enable", aopt.enable,
                        "Run only these rule ids (repeatable)");
    analyze->add_option("--disable", aopt.disable,
                        "Skip these rule ids (repeatable)");
    analyze->add_flag("--cs-only", aopt.cs_only,
                      "Run only precise CS rules (skip advisory CSA rules)");
    analyze->add_option("--format", aopt.format, "text, json or sarif")
        ->check(CLI::IsMember({"text", "json", "sarif"}));
    analyze->add_option("--output", aopt.output, "Write the report to this path")
        ->envname("MLSMELL_OUTPUT");
    analyze->add_option("--rules", aopt.rules_file,
                        "Rule catalog JSON (defaults to the built-in catalog)");
    analyze->add_option("--jobs", aopt.jobs, "Analysis worker threads")
        ->envname("MLSMELL_JOBS");
    analyze
        ->add_option("--fail-on", aopt.fail_on,
                     "Exit 1 policy: never, any or cs")
        ->check(CLI::IsMember({"never", "any", "cs"}));
    analyze->add_flag("--include-vcs", aopt.include_vcs,
                      "Also walk .git directories (skipped by default)");
    analyze->add_flag("--timing", aopt.timing,
                      "Measure and report the wall-clock runtime (makes "
                      "reports non-reproducible byte for byte)");

    SampleOptions sopt;
    CLI::App* sample = app.add_subcommand(
        "sample", "Draw a stratified validation sample from a JSON report");
    sample->add_option("--report", sopt.report, "Findings JSON report")
        ->required();
    sample->add_option("--output", sopt.output, "Worksheet output path");
    sample->add_option("--seed", sopt.seed, "Sampling seed");
    sample->add_option("--margin", sopt.margin, "Sampling error margin e")
        ->check(CLI::Range(1e-9, 0.999999));

    PrecisionOptions popt;
    CLI::App* precision = app.add_subcommand(
        "precision", "Compute precision from an annotated worksheet");
    precision->add_option("--verdicts", popt.verdicts, "Annotated worksheet")
        ->required();
    precision->add_option("--output", popt.output, "Table output path");

    std::string rules_file;
    CLI::App* rules =
        app.add_subcommand("rules", "Print the rule registry and criteria");
    rules->add_option("--rules", rules_file, "Rule catalog JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(aopt);
        if (sample->parsed()) return cmd_sample(sopt);
        if (precision->parsed()) return cmd_precision(popt);
        if (rules->parsed()) return cmd_rules(rules_file);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    } catch (const SamplingError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    }
    return 2;
}

} // namespace mlsmell

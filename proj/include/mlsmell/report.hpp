#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlsmell/ingest.hpp"
#include "mlsmell/rules.hpp"

namespace mlsmell {

// Project-level aggregates and coverage/density metrics. Ratios with a zero
// denominator stay unset (reported as n/a / null), never as 0.
struct AnalysisSummary {
    std::size_t projects = 0;
    std::optional<std::int64_t> runtime_ms; // measured only when asked for
    std::uint64_t size_bytes = 0;
    std::size_t total_loc = 0;
    std::size_t findings_total = 0;
    std::size_t cs_count = 0;
    std::size_t csa_count = 0;
    std::size_t folders = 0;
    std::size_t files_total = 0;
    std::size_t py_files = 0;
    std::size_t files_with_findings = 0;
    std::size_t py_syntax_errors = 0;
    std::map<std::string, std::size_t> per_rule_counts;

    std::optional<double> syntax_error_rate;
    std::optional<double> code_coverage;
    std::optional<double> avg_smells_per_project;
    std::optional<double> avg_cs_per_project;
    std::optional<double> avg_csa_per_project;
    std::optional<double> cs_share;
    std::optional<double> csa_share;
    std::optional<double> density_cs;
    std::optional<double> density_csa;
    std::optional<double> density_total;

    // filled only after a validation pass
    std::optional<double> precision_cs;
    std::optional<double> precision_csa;
    std::optional<double> precision_overall_micro;
    std::optional<double> precision_overall_weighted;
};

// Raw inputs for the metric arithmetic; usable directly with externally
// gathered counts.
struct SummaryInputs {
    std::size_t projects = 1;
    std::optional<std::int64_t> runtime_ms;
    std::uint64_t size_bytes = 0;
    std::size_t total_loc = 0;
    std::size_t folders = 0;
    std::size_t files_total = 0;
    std::size_t py_files = 0;
    std::size_t py_syntax_errors = 0;
    std::size_t files_with_findings = 0;
    std::size_t findings_total = 0;
    std::size_t cs_count = 0;
    std::size_t csa_count = 0;
    std::map<std::string, std::size_t> per_rule_counts;
};

AnalysisSummary compute_summary(const SummaryInputs& in);

// Aggregates snapshots and findings into SummaryInputs and computes.
AnalysisSummary summarize(std::span<const ProjectSnapshot> snapshots,
                          std::span<const Finding> findings,
                          std::optional<std::int64_t> runtime_ms,
                          const RuleCatalog& catalog);

struct ProjectSection {
    std::string label; // as written in the manifest / on the command line
    AnalysisSummary summary;
};

// Human-readable report: findings grouped by file, then the summary block.
// Byte-identical across runs on identical input.
std::string render_text(const AnalysisSummary& summary,
                        std::span<const Finding> findings,
                        std::span<const ProjectSection> per_project = {});

// Machine report; keys sorted, findings in canonical order.
std::string render_json(const AnalysisSummary& summary,
                        std::span<const Finding> findings,
                        std::span<const ProjectSection> per_project = {});

// SARIF 2.1.0 for CI annotation.
std::string render_sarif(std::span<const Finding> findings,
                         const RuleCatalog& catalog);

// Formatting helpers shared with the CLI (stable layouts).
std::string format_ratio_pct(const std::optional<double>& v);  // "12.3%" / "n/a"
std::string format_density(const std::optional<double>& v);    // 4 decimals
std::string format_average(const std::optional<double>& v);    // 2 decimals

} // namespace mlsmell

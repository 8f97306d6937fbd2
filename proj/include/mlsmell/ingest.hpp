#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mlsmell/ast.hpp"

namespace mlsmell {

enum class FileKind : std::uint8_t { python, other };
enum class ParseState : std::uint8_t { not_parsed, ok, syntax_error };

struct ParsedModule {
    std::string source;
    AstNode root;
};

// One discovered file with its parse outcome.
struct SourceUnit {
    std::string rel_path; // '/'-separated, relative to the project root
    std::filesystem::path abs_path;
    FileKind kind = FileKind::other;
    ParseState state = ParseState::not_parsed;
    std::size_t loc = 0; // physical lines; meaningful for python units only
    std::shared_ptr<const ParsedModule> module; // set when state == ok
    std::string error_message;
    int error_line = 0;
    int error_col = 0;
};

struct ProjectSnapshot {
    std::filesystem::path root;
    std::string label; // prefix for report paths; empty for single-root runs
    std::vector<SourceUnit> units; // sorted lexicographically by rel_path
    std::size_t folders = 0;
    std::uint64_t size_bytes = 0;
    std::vector<std::string> warnings;

    std::size_t files_total() const { return units.size(); }
    std::size_t py_files() const;
    std::size_t py_parsed() const;
    std::size_t py_syntax_errors() const;
    std::size_t total_loc() const; // sum of loc over parse=ok units

    std::string display_path(const SourceUnit& u) const {
        return label.empty() ? u.rel_path : label + "/" + u.rel_path;
    }
};

struct DiscoverOptions {
    std::vector<std::string> exclude_globs;
    bool include_vcs = false; // when false, ".git" directories are skipped
};

// Fatal usage problem (missing/unreadable root, unreadable manifest, ...).
struct UsageError {
    std::string message;
};

// Walks the tree, classifies files and fills counts; does not parse.
// Symbolic links are not followed.
ProjectSnapshot discover(const std::filesystem::path& root,
                         const DiscoverOptions& opts = {});

// Parses one python unit in place: state becomes ok (module set) or
// syntax_error (message + position); loc is set either way.
void parse_unit(SourceUnit& unit);

// Parses every python unit, optionally on several worker threads. Results
// land in deterministic unit order regardless of scheduling.
void parse_all(ProjectSnapshot& snapshot, unsigned jobs = 1);

// Physical line count: newline-delimited; a final line without a trailing
// newline still counts.
std::size_t count_lines(std::string_view text);

} // namespace mlsmell

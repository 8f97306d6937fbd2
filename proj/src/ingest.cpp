#include "mlsmell/ingest.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <unistd.h>

#include "mlsmell/parser.hpp"
#include "mlsmell/pathglob.hpp"
#include "mlsmell/token.hpp"

namespace mlsmell {

namespace fs = std::filesystem;

std::size_t ProjectSnapshot::py_files() const {
    std::size_t n = 0;
    for (const auto& u : units) n += u.kind == FileKind::python;
    return n;
}
std::size_t ProjectSnapshot::py_parsed() const {
    std::size_t n = 0;
    for (const auto& u : units) n += u.state == ParseState::ok;
    return n;
}
std::size_t ProjectSnapshot::py_syntax_errors() const {
    std::size_t n = 0;
    for (const auto& u : units) n += u.state == ParseState::syntax_error;
    return n;
}
std::size_t ProjectSnapshot::total_loc() const {
    std::size_t n = 0;
    for (const auto& u : units) {
        if (u.state == ParseState::ok) n += u.loc;
    }
    return n;
}

std::size_t count_lines(std::string_view text) {
    if (text.empty()) return 0;
    std::size_t n = static_cast<std::size_t>(
        std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') ++n;
    return n;
}

namespace {

struct Walker {
    const DiscoverOptions& opts;
    ProjectSnapshot& snap;

    bool dir_excluded(const std::string& rel, const std::string& name) const {
        if (!opts.include_vcs && name == ".git") return true;
        return path_excluded(rel, opts.exclude_globs);
    }

    void visit(const fs::path& dir, const std::string& rel_prefix) {
        std::error_code ec;
        fs::directory_iterator it(dir, fs::directory_options::skip_permission_denied,
                                  ec);
        if (ec) {
            snap.warnings.push_back("cannot read directory " + dir.string() + ": " +
                                    ec.message());
            return;
        }
        for (const auto& entry : it) {
            const std::string name = entry.path().filename().string();
            const std::string rel =
                rel_prefix.empty() ? name : rel_prefix + "/" + name;
            std::error_code sec;
            if (entry.is_symlink(sec)) continue; // never followed
            if (entry.is_directory(sec)) {
                if (dir_excluded(rel, name)) continue;
                ++snap.folders;
                visit(entry.path(), rel);
                continue;
            }
            if (!entry.is_regular_file(sec)) continue;
            if (path_excluded(rel, opts.exclude_globs)) continue;
            SourceUnit unit;
            unit.rel_path = rel;
            unit.abs_path = entry.path();
            std::error_code fec;
            auto size = entry.file_size(fec);
            if (!fec) snap.size_bytes += size;
            if (::access(entry.path().c_str(), R_OK) != 0) {
                snap.warnings.push_back("cannot read file " + rel +
                                        "; recorded without analysis");
                unit.kind = FileKind::other;
            } else if (entry.path().extension() == ".py") {
                unit.kind = FileKind::python;
            }
            snap.units.push_back(std::move(unit));
        }
    }
};

} // namespace

ProjectSnapshot discover(const fs::path& root, const DiscoverOptions& opts) {
    std::error_code ec;
    if (!fs::exists(root, ec) || ec) {
        throw UsageError{"project root does not exist: " + root.string()};
    }
    if (!fs::is_directory(root, ec) || ec) {
        throw UsageError{"project root is not a directory: " + root.string()};
    }
    ProjectSnapshot snap;
    snap.root = root;
    Walker{opts, snap}.visit(root, "");
    std::sort(snap.units.begin(), snap.units.end(),
              [](const SourceUnit& a, const SourceUnit& b) {
                  return a.rel_path < b.rel_path;
              });
    return snap;
}

void parse_unit(SourceUnit& unit) {
    std::ifstream in(unit.abs_path, std::ios::binary);
    if (!in) {
        unit.state = ParseState::syntax_error;
        unit.error_message = "cannot open file";
        unit.error_line = 1;
        return;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string source = std::move(buf).str();
    unit.loc = count_lines(source);
    try {
        auto mod = std::make_shared<ParsedModule>();
        mod->source = std::move(source);
        mod->root = parse_python(mod->source);
        unit.module = std::move(mod);
        unit.state = ParseState::ok;
    } catch (const SyntaxError& e) {
        unit.state = ParseState::syntax_error;
        unit.error_message = e.message;
        unit.error_line = e.line;
        unit.error_col = e.col;
    }
}

void parse_all(ProjectSnapshot& snapshot, unsigned jobs) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < snapshot.units.size(); ++i) {
        if (snapshot.units[i].kind == FileKind::python &&
            snapshot.units[i].state == ParseState::not_parsed) {
            todo.push_back(i);
        }
    }
    if (jobs <= 1 || todo.size() < 2) {
        for (std::size_t i : todo) parse_unit(snapshot.units[i]);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            std::size_t k = cursor.fetch_add(1);
            if (k >= todo.size()) return;
            parse_unit(snapshot.units[todo[k]]);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<std::size_t>(jobs, todo.size());
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace mlsmell

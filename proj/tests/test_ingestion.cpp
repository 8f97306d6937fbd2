#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "mlsmell/ingest.hpp"

using namespace mlsmell;
namespace fs = std::filesystem;

namespace {

struct TempTree {
    fs::path root;
    explicit TempTree(const std::string& name) {
        root = fs::temp_directory_path() / name;
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~TempTree() { fs::remove_all(root); }
    void file(const std::string& rel, const std::string& content = "") {
        fs::path p = root / rel;
        fs::create_directories(p.parent_path());
        std::ofstream(p, std::ios::binary) << content;
    }
};

} // namespace

TEST_CASE("count_lines: trailing newline conventions") {
    CHECK(count_lines("") == 0);
    CHECK(count_lines("a") == 1);
    CHECK(count_lines("a\n") == 1);
    CHECK(count_lines("a\nb") == 2);
    CHECK(count_lines("a\nb\n") == 2);
    CHECK(count_lines("\n\n") == 2);
}

TEST_CASE("count_lines agrees with an independent split oracle on 1000 lines") {
    std::string text;
    std::size_t oracle = 0;
    for (int i = 0; i < 1000; ++i) {
        text += "x" + std::to_string(i) + " = " + std::to_string(i) + "\n";
    }
    // oracle: split on newline, count non-terminal segments
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        ++oracle;
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    CHECK(oracle == 1000);
    CHECK(count_lines(text) == 1000);
}

TEST_CASE("discover: empty directory") {
    TempTree t("mlsmell_ing_empty");
    ProjectSnapshot snap = discover(t.root);
    CHECK(snap.files_total() == 0);
    CHECK(snap.py_files() == 0);
    CHECK(snap.folders == 0);
}

TEST_CASE("discover: mixed tree counts and classification") {
    TempTree t("mlsmell_ing_mixed");
    t.file("a.py", "x = 1\n");
    t.file("b.txt", "not python\n");
    t.file("sub/c.py", "y = 2\n");
    ProjectSnapshot snap = discover(t.root);
    CHECK(snap.files_total() == 3);
    CHECK(snap.py_files() == 2);
    CHECK(snap.folders == 1);
    // units sorted lexicographically by path
    REQUIRE(snap.units.size() == 3);
    CHECK(snap.units[0].rel_path == "a.py");
    CHECK(snap.units[1].rel_path == "b.txt");
    CHECK(snap.units[2].rel_path == "sub/c.py");
    CHECK(snap.units[0].kind == FileKind::python);
    CHECK(snap.units[1].kind == FileKind::other);
    CHECK(snap.size_bytes > 0);
}

TEST_CASE("discover: exclude globs") {
    TempTree t("mlsmell_ing_glob");
    t.file("a.py", "x = 1\n");
    t.file("b.txt");
    t.file("sub/c.py", "y = 2\n");
    DiscoverOptions opts;
    opts.exclude_globs = {"sub/*"};
    ProjectSnapshot snap = discover(t.root, opts);
    CHECK(snap.py_files() == 1);
    CHECK(snap.files_total() == 2);

    DiscoverOptions by_component;
    by_component.exclude_globs = {"*.txt"};
    CHECK(discover(t.root, by_component).files_total() == 2);

    DiscoverOptions dir_name;
    dir_name.exclude_globs = {"sub"};
    ProjectSnapshot pruned = discover(t.root, dir_name);
    CHECK(pruned.files_total() == 2);
    CHECK(pruned.folders == 0); // pruned directories are not counted
}

TEST_CASE("discover: .git skipped by default, included on request") {
    TempTree t("mlsmell_ing_git");
    t.file("a.py", "x = 1\n");
    t.file(".git/objects/pack.idx", "binary");
    t.file(".git/config", "[core]\n");
    ProjectSnapshot snap = discover(t.root);
    CHECK(snap.files_total() == 1);
    DiscoverOptions opts;
    opts.include_vcs = true;
    CHECK(discover(t.root, opts).files_total() == 3);
}

TEST_CASE("discover: symbolic links are not followed") {
    TempTree t("mlsmell_ing_sym");
    t.file("real/a.py", "x = 1\n");
    std::error_code ec;
    fs::create_directory_symlink(t.root / "real", t.root / "loop", ec);
    if (!ec) {
        ProjectSnapshot snap = discover(t.root);
        CHECK(snap.py_files() == 1);
        CHECK(snap.folders == 1);
    }
}

TEST_CASE("discover: missing root is a fatal usage error") {
    CHECK_THROWS_AS((void)discover("/nonexistent/definitely/missing"),
                    UsageError);
}

TEST_CASE("parse_unit: ok, syntax error, loc in both cases") {
    TempTree t("mlsmell_ing_parse");
    t.file("ok.py", "x = 1\n");
    t.file("bad.py", "def f(:\n    pass\n");
    t.file("latin.py", "s = '\xe9'\n"); // invalid UTF-8 byte
    ProjectSnapshot snap = discover(t.root);
    parse_all(snap);
    REQUIRE(snap.units.size() == 3);
    const SourceUnit* ok = nullptr;
    const SourceUnit* bad = nullptr;
    const SourceUnit* latin = nullptr;
    for (const auto& u : snap.units) {
        if (u.rel_path == "ok.py") ok = &u;
        if (u.rel_path == "bad.py") bad = &u;
        if (u.rel_path == "latin.py") latin = &u;
    }
    REQUIRE(ok != nullptr);
    CHECK(ok->state == ParseState::ok);
    CHECK(ok->loc == 1);
    REQUIRE(ok->module != nullptr);
    CHECK(ok->module->root.kind == NodeKind::Module);

    REQUIRE(bad != nullptr);
    CHECK(bad->state == ParseState::syntax_error);
    CHECK(bad->error_line == 1);
    CHECK(bad->loc == 2);

    REQUIRE(latin != nullptr);
    CHECK(latin->state == ParseState::syntax_error);
    CHECK(latin->error_message.find("decode") != std::string::npos);

    CHECK(snap.py_parsed() + snap.py_syntax_errors() == snap.py_files());
    CHECK(snap.total_loc() == 1); // only parse=ok units count
}

TEST_CASE("parse_unit: 1000-line file loc matches the independent count") {
    TempTree t("mlsmell_ing_1000");
    std::string code;
    for (int i = 0; i < 1000; ++i) {
        code += "line_" + std::to_string(i) + " = " + std::to_string(i) + "\n";
    }
    t.file("big.py", code);
    ProjectSnapshot snap = discover(t.root);
    parse_all(snap);
    REQUIRE(snap.units.size() == 1);
    CHECK(snap.units[0].state == ParseState::ok);
    CHECK(snap.units[0].loc == 1000);
}

TEST_CASE("loc conservation: total_loc equals the sum over parsed units") {
    TempTree t("mlsmell_ing_loc");
    std::mt19937 rng(11);
    std::size_t expected = 0;
    for (int i = 0; i < 12; ++i) {
        std::string code;
        std::size_t lines = 1 + rng() % 40;
        for (std::size_t l = 0; l < lines; ++l) {
            code += "v" + std::to_string(l) + " = " + std::to_string(l) + "\n";
        }
        expected += lines;
        t.file("f" + std::to_string(i) + ".py", code);
    }
    ProjectSnapshot snap = discover(t.root);
    parse_all(snap, 4);
    std::size_t summed = 0;
    for (const auto& u : snap.units) {
        if (u.state == ParseState::ok) summed += u.loc;
    }
    CHECK(summed == expected);
    CHECK(snap.total_loc() == expected);
}

TEST_CASE("determinism: repeated discovery is identical") {
    TempTree t("mlsmell_ing_det");
    t.file("b.py", "x = 1\n");
    t.file("a.py", "y = 2\n");
    t.file("n/c.py", "z = 3\n");
    t.file("n/d.txt");
    ProjectSnapshot s1 = discover(t.root);
    ProjectSnapshot s2 = discover(t.root);
    REQUIRE(s1.units.size() == s2.units.size());
    for (std::size_t i = 0; i < s1.units.size(); ++i) {
        CHECK(s1.units[i].rel_path == s2.units[i].rel_path);
        CHECK(s1.units[i].kind == s2.units[i].kind);
    }
    CHECK(s1.folders == s2.folders);
    CHECK(s1.size_bytes == s2.size_bytes);
}

TEST_CASE("robustness: a syntax error never suppresses other files") {
    TempTree t("mlsmell_ing_rob");
    t.file("broken0.py", "def f(:\n");
    for (int i = 1; i <= 6; ++i) {
        t.file("good" + std::to_string(i) + ".py", "x = " + std::to_string(i) + "\n");
    }
    ProjectSnapshot snap = discover(t.root);
    parse_all(snap, 3);
    CHECK(snap.py_files() == 7);
    CHECK(snap.py_syntax_errors() == 1);
    CHECK(snap.py_parsed() == 6);
}

TEST_CASE("parallel parse equals sequential parse") {
    TempTree t("mlsmell_ing_par");
    for (int i = 0; i < 20; ++i) {
        std::string code = i % 5 == 0 ? "def broken(:\n"
                                      : "import numpy as np\nv = np.dot(a, b)\n";
        t.file("m" + std::to_string(i) + ".py", code);
    }
    ProjectSnapshot seq = discover(t.root);
    parse_all(seq, 1);
    ProjectSnapshot par = discover(t.root);
    parse_all(par, 8);
    REQUIRE(seq.units.size() == par.units.size());
    for (std::size_t i = 0; i < seq.units.size(); ++i) {
        CHECK(seq.units[i].state == par.units[i].state);
        CHECK(seq.units[i].loc == par.units[i].loc);
        CHECK(seq.units[i].error_line == par.units[i].error_line);
    }
}

#include "mlsmell/pathglob.hpp"

namespace mlsmell {

namespace {

bool match_impl(const char* p, const char* pe, const char* s, const char* se) {
    while (p < pe) {
        char c = *p;
        if (c == '*') {
            bool cross = p + 1 < pe && p[1] == '*';
            const char* pn = p + (cross ? 2 : 1);
            while (pn < pe && *pn == '*') ++pn; // collapse runs of stars
            for (const char* t = s;; ++t) {
                if (match_impl(pn, pe, t, se)) return true;
                if (t >= se) return false;
                if (!cross && *t == '/') return false;
            }
        }
        if (s >= se) return false;
        if (c == '?') {
            if (*s == '/') return false;
            ++p;
            ++s;
            continue;
        }
        if (c == '[') {
            const char* q = p + 1;
            bool negate = false;
            if (q < pe && (*q == '!' || *q == '^')) {
                negate = true;
                ++q;
            }
            bool matched = false;
            bool first = true;
            const char* scan = q;
            while (scan < pe && (*scan != ']' || first)) {
                if (scan + 2 < pe && scan[1] == '-' && scan[2] != ']') {
                    if (*s >= scan[0] && *s <= scan[2]) matched = true;
                    scan += 3;
                } else {
                    if (*s == *scan) matched = true;
                    ++scan;
                }
                first = false;
            }
            if (scan >= pe) { // unterminated class: literal '['
                if (*s != '[') return false;
                ++p;
                ++s;
                continue;
            }
            if (matched == negate) return false;
            p = scan + 1;
            ++s;
            continue;
        }
        if (*s != c) return false;
        ++p;
        ++s;
    }
    return s == se;
}

bool full_match(std::string_view pattern, std::string_view text) {
    return match_impl(pattern.data(), pattern.data() + pattern.size(),
                      text.data(), text.data() + text.size());
}

} // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
    if (pattern.find('/') != std::string_view::npos) {
        return full_match(pattern, path);
    }
    // component-wise
    std::size_t start = 0;
    for (;;) {
        std::size_t slash = path.find('/', start);
        std::string_view comp = slash == std::string_view::npos
                                    ? path.substr(start)
                                    : path.substr(start, slash - start);
        if (full_match(pattern, comp)) return true;
        if (slash == std::string_view::npos) return false;
        start = slash + 1;
    }
}

bool path_excluded(std::string_view rel_path,
                   std::span<const std::string> patterns) {
    for (const auto& p : patterns) {
        if (glob_match(p, rel_path)) return true;
    }
    return false;
}

} // namespace mlsmell

#pragma once

namespace mlsmell {

// Source location range. Lines are 1-based, columns are 0-based byte offsets
// into the line (the convention most diagnostic consumers expect).
struct Span {
    int line = 1;
    int col = 0;
    int end_line = 1;
    int end_col = 0;

    bool contains(const Span& inner) const {
        const bool starts_ok =
            inner.line > line || (inner.line == line && inner.col >= col);
        const bool ends_ok = inner.end_line < end_line ||
                             (inner.end_line == end_line && inner.end_col <= end_col);
        return starts_ok && ends_ok;
    }

    friend bool operator==(const Span&, const Span&) = default;
};

} // namespace mlsmell

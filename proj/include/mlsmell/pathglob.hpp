#pragma once

#include <span>
#include <string>
#include <string_view>

namespace mlsmell {

// fnmatch-style glob against a '/'-separated relative path. '*' and '?' do
// not cross '/', '**' does, '[...]' is a character class. A pattern with no
// '/' matches when any single path component matches.
bool glob_match(std::string_view pattern, std::string_view path);
bool path_excluded(std::string_view rel_path,
                   std::span<const std::string> patterns);

} // namespace mlsmell

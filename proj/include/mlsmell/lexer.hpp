#pragma once

#include <string_view>
#include <vector>

#include "mlsmell/token.hpp"

namespace mlsmell {

// Tokenizes one Python source file. Handles indentation (INDENT/DEDENT),
// implicit line joining inside brackets, explicit backslash continuations,
// every 3.8-3.12 string form including nested f-string replacement fields,
// and byte-exact spans. Throws SyntaxError on the first problem; the input
// must be valid UTF-8 without NUL bytes (checked up front).
std::vector<Token> lex(std::string_view source);

bool is_python_keyword(std::string_view word);

} // namespace mlsmell

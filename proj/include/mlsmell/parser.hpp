#pragma once

#include <string>
#include <string_view>

#include "mlsmell/ast.hpp"
#include "mlsmell/token.hpp"

namespace mlsmell {

// Parses one Python source file (3.8-3.12 grammar) into the normalized node
// model. Throws SyntaxError at the first problem; on success the returned
// Module has parent links set and is immutable.
AstNode parse_python(std::string_view source);

} // namespace mlsmell

#pragma once

namespace mlsmell {

// Full command-line front end (analyze / sample / precision / rules).
// Returns the process exit code: 0 clean, 1 findings tripped the fail-on
// policy, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv);

} // namespace mlsmell

#pragma once

// Command-line front end: parses the `stabloc` subcommand grammar and
// dispatches to the library. Returns 0 on success, 1 on a domain error
// (reported on stderr), 2 on a usage error.

namespace stabloc {

int run_command(int argc, const char* const* argv);

}  // namespace stabloc

// Command-line front end: pearl homology|minimal|classify|products|trees|example|intersect.
#pragma once

#include <iosfwd>

namespace pearl {

// Exit codes: 0 ok, 1 unexpected failure, 2 parse error, 3 invariant
// violation or failed verification, 4 argument error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pearl

#pragma once

#include <ostream>

namespace qk {

// Runs the full verification suite: one pass/fail line per criterion with the
// elapsed time against its pinned budget. Returns true iff every criterion
// passed. Used by both the acceptance test binary and the CLI selftest.
bool run_acceptance(std::ostream& os);

}  // namespace qk

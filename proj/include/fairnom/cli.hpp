#pragma once

#include <iosfwd>

namespace fairnom::cli {

/// Parses argv, dispatches, writes JSON to `out` and diagnostics to `err`.
/// Returns 0 on success or a true verdict, 1 on a false verdict (witness,
/// infeasibility, failed check), 2 on errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fairnom::cli

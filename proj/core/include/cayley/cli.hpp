#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cayley {

/// Runs one toolkit verb. JSON goes to `out`, human-readable notes to `err`.
/// Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification
/// failure.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cayley

#pragma once

namespace dustclear::cli {

/// Exit codes: 0 success, 1 fatal I/O or configuration error, 2 batch
/// completed with row-level failures.
int run(int argc, const char* const* argv);

}  // namespace dustclear::cli

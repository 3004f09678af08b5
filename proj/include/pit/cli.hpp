#pragma once

#include <iosfwd>

namespace pit {

/// Entry point behind main(). Parses arguments, dispatches the run and
/// verify subcommands, and maps failures to the process exit code:
/// 0 success, 1 solver or runtime hard error, 2 usage/config error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pit

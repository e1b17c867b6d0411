#pragma once

namespace holant {

// Entry point behind the `holant` binary, separated out so tests can drive
// the full argv surface in-process. Returns the process exit code: 0 on
// success, 1 on usage or validation errors, 2 when a computational guard
// (budget or cap) trips.
int cli_main(int argc, const char* const* argv);

}  // namespace holant

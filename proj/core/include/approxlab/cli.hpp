// Command-line front-end.  Exit-code contract (part of the public API):
//   0  success; stated conclusions hold
//   1  conclusion violations, or a verdict that could not be certified
//   2  usage errors, malformed input files
//   3  the solver budget left an interval and --require-exact was set
#pragma once

namespace approxlab {

int cli_run(int argc, const char* const* argv);

}  // namespace approxlab

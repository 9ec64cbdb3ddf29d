#pragma once

#include <ostream>

namespace psp {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `psp` tool. Results go to `out` unless --output is
/// given; usage errors and the human-readable summary go to `err`.
/// Returns 0 on success, 2 on precondition/infeasibility/resource errors,
/// 1 on internal errors and 64 on malformed input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace psp

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entrolab::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (without the program name). Reports go to `out`,
/// usage and diagnostics to `err`. Exit codes: 0 computed (whatever the
/// verdict), 1 input error, 2 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of `text` as "fnv1a64:<16 hex digits>".
std::string digest(const std::string& text);

}  // namespace entrolab::cli

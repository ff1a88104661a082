#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace poincare::cli {

/// Parses `args` (without the program name), runs the command and writes
/// its report to `out` or to --out. Diagnostics go to `err`.
///
/// Returns 0 on success, 1 when a verification fails or a solver gives up,
/// 2 on usage and validation errors (including an unwritable --out).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "0.015625" or "1/64".
[[nodiscard]] double parse_cell_size(const std::string& text);

}  // namespace poincare::cli

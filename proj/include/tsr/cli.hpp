#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace tsr {

/// Runs the `tsr` command line on args (without the program name). Returns
/// 0 on success, 1 on a validation error, 2 on an internal invariant failure.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Fixture directory: TSR_FIXTURES if set, otherwise the directory compiled in.
std::filesystem::path default_fixtures_dir();

}  // namespace tsr

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

/// Runs one toricgen command. Arguments exclude the program name.
/// Returns 0 on success, 1 when a check fails, 2 on input or usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toric::cli

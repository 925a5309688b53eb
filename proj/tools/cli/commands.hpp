#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diracsea::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the diracsea tool; args[0] is the program name. CSV goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diracsea::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyforge {

inline constexpr const char* kToolName = "cyforge";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 pass, 1 fail, 2 input error, 3 inconclusive.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace cyforge

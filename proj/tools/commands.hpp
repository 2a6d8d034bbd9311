#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptgs::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kBudget = 3 };

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace ptgs::cli
